#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qioms {

/// Row-major numeric table with named columns and a key/value metadata block.
/// CSV bodies (header + rows) are byte-reproducible for identical configs;
/// metadata carries the resolved config, tool version and wall time.
struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;  // insertion order

  void set_meta(const std::string& key, const std::string& value);
  const std::string* find_meta(const std::string& key) const;

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;

  static Dataset read_csv(std::istream& is);
  static Dataset read_json(std::istream& is);
};

/// Scientific notation with 17 significant digits; round-trips any double.
std::string format_number(double value);

}  // namespace qioms
