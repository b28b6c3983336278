#ifndef DNS_OUTPUT_HPP
#define DNS_OUTPUT_HPP

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>

#include "dns/levels.hpp"

namespace dns {

inline constexpr std::string_view kSampleFile = "sample.txt";
inline constexpr std::string_view kSampleInfoFile = "sample_info.txt";
inline constexpr std::string_view kLevelsFile = "levels.txt";

inline constexpr std::string_view kSampleInfoHeader =
    "# level_assignment log_likelihood tiebreaker thread";
inline constexpr std::string_view kLevelsHeader =
    "# log_X log_likelihood tiebreaker accepts tries exceeds visits";

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Writes sample.txt, sample_info.txt and levels.txt into one directory.
/// Sample files are appended and flushed per save so they can be read while
/// a run is in progress; levels.txt is replaced atomically on every write.
class RunWriter {
 public:
  RunWriter(const std::filesystem::path& directory, std::string_view description);

  void append_sample(std::string_view params_row, int level_index,
                     const LikelihoodValue& value, int thread);

  void write_levels(std::span<const Level> levels);

  const std::filesystem::path& directory() const { return directory_; }

 private:
  std::filesystem::path directory_;
  std::ofstream sample_;
  std::ofstream sample_info_;
};

}  // namespace dns

#endif  // DNS_OUTPUT_HPP
