#include "dns/options.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace dns {

namespace {

constexpr int kNumValues = 8;

constexpr const char* kFieldNames[kNumValues] = {
    "number of particles", "new level interval", "save interval",
    "thread steps",        "maximum number of levels", "lambda",
    "beta",                "maximum number of saves"};

struct RawValue {
  std::string token;
  int line;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(const RawValue& v) {
  return "OPTIONS line " + std::to_string(v.line);
}

double parse_real(const RawValue& v) {
  double value = 0.0;
  const char* begin = v.token.data();
  const char* end = begin + v.token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    throw OptionsError(where(v) + ": expected a number, got '" + v.token + "'");
  return value;
}

int parse_int(const RawValue& v) {
  long long value = 0;
  const char* begin = v.token.data();
  const char* end = begin + v.token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || value < INT32_MIN || value > INT32_MAX)
    throw OptionsError(where(v) + ": expected an integer, got '" + v.token + "'");
  return static_cast<int>(value);
}

void require(bool ok, const RawValue& v, int index, const char* what) {
  if (!ok) throw OptionsError(where(v) + ": " + kFieldNames[index] + " " + what);
}

}  // namespace

void Options::validate() const {
  if (num_particles < 1) throw OptionsError("number of particles must be >= 1");
  if (new_level_interval < 1) throw OptionsError("new level interval must be >= 1");
  if (save_interval < 1) throw OptionsError("save interval must be >= 1");
  if (thread_steps < 1) throw OptionsError("thread steps must be >= 1");
  if (thread_steps > new_level_interval || thread_steps > save_interval)
    throw OptionsError("thread steps must not exceed the new level interval or the save interval");
  if (max_num_levels < 0) throw OptionsError("maximum number of levels must be >= 0");
  if (!(lambda > 0.0)) throw OptionsError("lambda must be > 0");
  if (!(beta >= 0.0)) throw OptionsError("beta must be >= 0");
  if (max_num_saves < 0) throw OptionsError("maximum number of saves must be >= 0");
  if (!(compression > 1.0)) throw OptionsError("compression must be > 1");
  if (compression != std::numbers::e && max_num_levels == 0)
    throw OptionsError(
        "a non-default compression is incompatible with an automatic number of levels "
        "(set the maximum number of levels in OPTIONS)");
  if (num_threads < 1) throw OptionsError("number of threads must be >= 1");
}

Options parse_options(std::string_view text) {
  std::vector<RawValue> values;
  int line_number = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view content = line;
    if (const auto hash = content.find('#'); hash != std::string_view::npos)
      content = content.substr(0, hash);
    content = trim(content);
    if (content.empty()) continue;
    if (content.find_first_of(" \t") != std::string_view::npos)
      throw OptionsError("OPTIONS line " + std::to_string(line_number) +
                         ": expected a single value, got '" + std::string(content) + "'");
    values.push_back({std::string(content), line_number});
  }
  if (values.size() != kNumValues)
    throw OptionsError("expected " + std::to_string(kNumValues) + " option values, found " +
                       std::to_string(values.size()));

  Options o;
  o.num_particles = parse_int(values[0]);
  require(o.num_particles >= 1, values[0], 0, "must be >= 1");
  o.new_level_interval = parse_int(values[1]);
  require(o.new_level_interval >= 1, values[1], 1, "must be >= 1");
  o.save_interval = parse_int(values[2]);
  require(o.save_interval >= 1, values[2], 2, "must be >= 1");
  o.thread_steps = parse_int(values[3]);
  require(o.thread_steps >= 1, values[3], 3, "must be >= 1");
  require(o.thread_steps <= o.new_level_interval && o.thread_steps <= o.save_interval,
          values[3], 3, "must not exceed the new level interval or the save interval");
  o.max_num_levels = parse_int(values[4]);
  require(o.max_num_levels >= 0, values[4], 4, "must be >= 0");
  o.lambda = parse_real(values[5]);
  require(o.lambda > 0.0, values[5], 5, "must be > 0");
  o.beta = parse_real(values[6]);
  require(o.beta >= 0.0, values[6], 6, "must be >= 0");
  o.max_num_saves = parse_int(values[7]);
  require(o.max_num_saves >= 0, values[7], 7, "must be >= 0");
  return o;
}

Options load_options(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw OptionsError("cannot open options file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_options(buffer.str());
}

}  // namespace dns
