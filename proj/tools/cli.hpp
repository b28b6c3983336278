#ifndef DNS_TOOLS_CLI_HPP
#define DNS_TOOLS_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dns/options.hpp"

namespace dns::cli {

/// Command-line values that override the OPTIONS file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> compression;
  std::optional<int> num_threads;
  std::optional<std::filesystem::path> data_path;
};

/// OPTIONS file (or defaults when `options_path` is absent and the default
/// file does not exist), then the command-line overrides, then validation.
Options resolve_options(const std::optional<std::filesystem::path>& options_path,
                        const Overrides& overrides);

/// Entry point shared by the executable and the tests. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dns::cli

#endif  // DNS_TOOLS_CLI_HPP
