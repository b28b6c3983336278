#ifndef DNS_OPTIONS_HPP
#define DNS_OPTIONS_HPP

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dns {

/// Thrown for malformed OPTIONS files or inconsistent settings.
class OptionsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sampler settings. The first eight fields mirror the OPTIONS file, in
/// file order; the rest come from the command line.
struct Options {
  int num_particles = 5;          // per thread
  int new_level_interval = 10000;
  int save_interval = 10000;
  int thread_steps = 100;
  int max_num_levels = 0;         // 0: decide automatically
  double lambda = 10.0;
  double beta = 100.0;
  int max_num_saves = 10000;      // 0: run until killed

  double compression = std::numbers::e;
  std::optional<std::uint64_t> seed;
  int num_threads = 1;
  std::optional<std::filesystem::path> data_path;

  bool automatic_levels() const { return max_num_levels == 0; }

  /// Throws OptionsError if the settings are inconsistent.
  void validate() const;
};

/// Parse OPTIONS text: eight numeric values, one per line, with '#' comments
/// allowed on their own lines or after a value.
Options parse_options(std::string_view text);

/// Read and parse an OPTIONS file.
Options load_options(const std::filesystem::path& path);

}  // namespace dns

#endif  // DNS_OPTIONS_HPP
