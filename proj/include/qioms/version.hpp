#pragma once

namespace qioms {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qioms
