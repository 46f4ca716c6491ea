#include "qioms/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qioms {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", value);
  return buf;
}

void Dataset::set_meta(const std::string& key, const std::string& value) {
  for (auto& kv : metadata) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  metadata.emplace_back(key, value);
}

const std::string* Dataset::find_meta(const std::string& key) const {
  for (const auto& kv : metadata) {
    if (kv.first == key) return &kv.second;
  }
  return nullptr;
}

void Dataset::write_csv(std::ostream& os) const {
  for (const auto& [key, value] : metadata) {
    os << "# " << key << " = " << value << "\n";
  }
  for (std::size_t i = 0; i < columns.size(); ++i) {
    os << (i ? "," : "") << columns[i];
  }
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << format_number(row[i]);
    }
    os << "\n";
  }
}

void Dataset::write_json(std::ostream& os) const {
  nlohmann::ordered_json doc;
  auto& meta = doc["metadata"];
  for (const auto& [key, value] : metadata) meta[key] = value;
  doc["columns"] = columns;
  auto& out_rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    auto& r = out_rows.emplace_back(nlohmann::ordered_json::array());
    for (double v : row) {
      if (std::isfinite(v)) {
        r.push_back(v);
      } else {
        r.push_back(nullptr);  // JSON has no nan/inf
      }
    }
  }
  os << doc.dump(2) << "\n";
}

Dataset Dataset::read_csv(std::istream& is) {
  Dataset ds;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      const auto sep = body.find(" = ");
      if (sep != std::string::npos) {
        std::string key = body.substr(0, sep);
        if (!key.empty() && key.front() == ' ') key.erase(0, 1);
        ds.metadata.emplace_back(key, body.substr(sep + 3));
      }
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!header_seen) {
      ds.columns = fields;
      header_seen = true;
      continue;
    }
    if (fields.size() != ds.columns.size()) {
      throw std::runtime_error("Dataset::read_csv: row with " + std::to_string(fields.size()) +
                               " fields, expected " + std::to_string(ds.columns.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(std::stod(f));
    ds.rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::runtime_error("Dataset::read_csv: missing header row");
  return ds;
}

Dataset Dataset::read_json(std::istream& is) {
  nlohmann::json doc = nlohmann::json::parse(is);
  Dataset ds;
  if (doc.contains("metadata")) {
    for (const auto& [key, value] : doc["metadata"].items()) {
      ds.metadata.emplace_back(key, value.get<std::string>());
    }
  }
  ds.columns = doc.at("columns").get<std::vector<std::string>>();
  for (const auto& row : doc.at("rows")) {
    std::vector<double> r;
    r.reserve(row.size());
    for (const auto& v : row) {
      r.push_back(v.is_null() ? std::nan("") : v.get<double>());
    }
    if (r.size() != ds.columns.size()) {
      throw std::runtime_error("Dataset::read_json: row width mismatch");
    }
    ds.rows.push_back(std::move(r));
  }
  return ds;
}

}  // namespace qioms
