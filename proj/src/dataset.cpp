#include "dns/dataset.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dns {

Dataset::Dataset(std::vector<std::vector<double>> columns) : columns_(std::move(columns)) {
  for (const auto& c : columns_)
    if (c.size() != columns_.front().size())
      throw std::invalid_argument("Dataset: columns differ in length");
}

Dataset Dataset::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file " + path.string());

  std::vector<std::vector<double>> columns;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    std::vector<double> row;
    std::string token;
    while (fields >> token) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size())
        throw std::runtime_error(path.string() + ":" + std::to_string(line_number) +
                                 ": not a number: '" + token + "'");
      row.push_back(value);
    }
    if (columns.empty()) columns.resize(row.size());
    if (row.size() != columns.size())
      throw std::runtime_error(path.string() + ":" + std::to_string(line_number) + ": expected " +
                               std::to_string(columns.size()) + " columns");
    for (std::size_t i = 0; i < row.size(); ++i) columns[i].push_back(row[i]);
  }
  return Dataset(std::move(columns));
}

DataRegistry& DataRegistry::instance() {
  static DataRegistry registry;
  return registry;
}

std::shared_ptr<const Dataset> DataRegistry::get(const std::filesystem::path& path) {
  const auto key = std::filesystem::weakly_canonical(path);
  std::lock_guard lock(mutex_);
  auto it = cache_.find(key);
  if (it == cache_.end())
    it = cache_.emplace(key, std::make_shared<const Dataset>(Dataset::load(path))).first;
  return it->second;
}

std::filesystem::path resolve_data_path(const std::filesystem::path& path) {
  if (std::filesystem::exists(path)) return path;
  if (const char* root = std::getenv("DNS_PATH")) {
    const auto candidate = std::filesystem::path(root) / "data" / path.filename();
    if (std::filesystem::exists(candidate)) return candidate;
  }
#ifdef DNS_SOURCE_DIR
  const auto candidate = std::filesystem::path(DNS_SOURCE_DIR) / "data" / path.filename();
  if (std::filesystem::exists(candidate)) return candidate;
#endif
  return path;
}

}  // namespace dns
