#ifndef DNS_DATASET_HPP
#define DNS_DATASET_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace dns {

/// Whitespace-delimited numeric table, stored column-major. Lines starting
/// with '#' and blank lines are skipped.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<std::vector<double>> columns);

  std::size_t num_rows() const { return columns_.empty() ? 0 : columns_.front().size(); }
  std::size_t num_columns() const { return columns_.size(); }
  std::span<const double> column(std::size_t i) const { return columns_.at(i); }

  /// Throws std::runtime_error on unreadable files, non-numeric tokens or
  /// ragged rows.
  static Dataset load(const std::filesystem::path& path);

 private:
  std::vector<std::vector<double>> columns_;
};

/// Process-wide cache of immutable datasets keyed by path. Models keep a
/// shared_ptr, so data is loaded once and read concurrently without locks.
class DataRegistry {
 public:
  static DataRegistry& instance();

  std::shared_ptr<const Dataset> get(const std::filesystem::path& path);

 private:
  std::mutex mutex_;
  std::map<std::filesystem::path, std::shared_ptr<const Dataset>> cache_;
};

/// Locates a bundled dataset. Existing paths are returned as given; otherwise
/// the file name is looked up under $DNS_PATH/data and then the source tree's
/// data directory.
std::filesystem::path resolve_data_path(const std::filesystem::path& path);

}  // namespace dns

#endif  // DNS_DATASET_HPP
