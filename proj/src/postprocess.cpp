#include "dns/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dns/output.hpp"

namespace dns {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Data lines of a text file. A last line without a trailing newline is
/// treated as still being written and dropped.
struct TextLines {
  std::vector<std::string> comments;
  std::vector<std::string> data;
};

TextLines read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  TextLines lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string::npos) break;
    std::string line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#')
      lines.comments.push_back(line.substr(first + 1));
    else
      lines.data.push_back(std::move(line));
  }
  return lines;
}

std::vector<double> parse_fields(const std::string& line) {
  std::vector<double> fields;
  std::istringstream in(line);
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    try {
      fields.push_back(std::stod(token, &used));
    } catch (const std::out_of_range&) {
      // Under/overflowing values are the infinities and zero they denote.
      fields.push_back(token.find('-') == 0 ? kNegInf : std::numeric_limits<double>::infinity());
      used = token.size();
    } catch (const std::exception&) {
      return {};
    }
    if (used != token.size()) return {};
  }
  return fields;
}

/// Parses rows of exactly `columns` fields. A malformed final row is taken
/// to be a partial write and skipped; anywhere else it is an error.
std::vector<std::vector<double>> parse_table(const std::filesystem::path& path,
                                             std::size_t columns) {
  const TextLines lines = read_lines(path);
  std::vector<std::vector<double>> rows;
  rows.reserve(lines.data.size());
  for (std::size_t i = 0; i < lines.data.size(); ++i) {
    auto fields = parse_fields(lines.data[i]);
    if (fields.size() != columns) {
      if (i + 1 == lines.data.size()) break;
      throw std::runtime_error(path.string() + ": expected " + std::to_string(columns) +
                               " columns in row " + std::to_string(i + 1));
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

double log_diff_exp(double log_a, double log_b) {
  if (log_b == kNegInf) return log_a;
  return log_a + std::log1p(-std::exp(log_b - log_a));
}

double log_add_exp(double log_a, double log_b) {
  if (log_a == kNegInf) return log_b;
  if (log_b == kNegInf) return log_a;
  const double hi = std::max(log_a, log_b);
  return hi + std::log1p(std::exp(std::min(log_a, log_b) - hi));
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void write_rows(const std::filesystem::path& path, const std::string& description,
                const std::vector<std::string>& rows) {
  std::ofstream out = open_output(path);
  out << "# " << description << '\n';
  for (const auto& row : rows) out << row << '\n';
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

std::vector<double> linear_weights(std::span<const WeightedSample> samples) {
  std::vector<double> p(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    p[i] = std::exp(samples[i].log_posterior_weight);
  return p;
}

}  // namespace

std::vector<Level> read_levels(const std::filesystem::path& path) {
  std::vector<Level> levels;
  for (const auto& row : parse_table(path, 7)) {
    Level level;
    level.log_x = row[0];
    level.threshold = {row[1], row[2]};
    level.counts.accepts = static_cast<std::uint64_t>(row[3]);
    level.counts.tries = static_cast<std::uint64_t>(row[4]);
    level.counts.exceeds = static_cast<std::uint64_t>(row[5]);
    level.counts.visits = static_cast<std::uint64_t>(row[6]);
    levels.push_back(level);
  }
  return levels;
}

std::vector<SampleInfo> read_sample_info(const std::filesystem::path& path) {
  std::vector<SampleInfo> info;
  for (const auto& row : parse_table(path, 4))
    info.push_back({static_cast<int>(row[0]), {row[1], row[2]}, static_cast<int>(row[3])});
  return info;
}

RunFiles RunFiles::read(const std::filesystem::path& directory) {
  RunFiles files;
  files.levels = read_levels(directory / kLevelsFile);
  files.info = read_sample_info(directory / kSampleInfoFile);

  TextLines sample = read_lines(directory / kSampleFile);
  if (!sample.comments.empty()) {
    files.description = sample.comments.front();
    files.description.erase(0, files.description.find_first_not_of(" \t"));
  }
  files.sample_rows = std::move(sample.data);
  if (!files.sample_rows.empty()) {
    // Drop a final row whose field count differs from the first (partial write).
    const auto width = parse_fields(files.sample_rows.front()).size();
    if (parse_fields(files.sample_rows.back()).size() != width) files.sample_rows.pop_back();
  }

  const std::size_t n = std::min(files.sample_rows.size(), files.info.size());
  files.sample_rows.resize(n);
  files.info.resize(n);
  return files;
}

std::vector<WeightedSample> assign_log_dx(std::span<const SampleInfo> samples,
                                          std::span<const Level> levels,
                                          std::vector<std::string>* warnings) {
  if (levels.empty()) throw std::invalid_argument("assign_log_dx: no levels");
  const int num_levels = static_cast<int>(levels.size());

  std::vector<WeightedSample> out(samples.size());
  std::vector<std::vector<std::size_t>> brackets(levels.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const SampleInfo& s = samples[i];
    if (s.level < 0 || s.level >= num_levels)
      throw std::invalid_argument("sample " + std::to_string(i) + " refers to level " +
                                  std::to_string(s.level) + " but there are only " +
                                  std::to_string(num_levels));
    const auto above = std::lower_bound(
        levels.begin(), levels.end(), s.value,
        [](const Level& level, const LikelihoodValue& v) { return level.threshold < v; });
    const int bracket = std::max(0, static_cast<int>(above - levels.begin()) - 1);
    out[i] = {static_cast<int>(i), s.level, s.value, 0.0, 0.0, 0.0};
    brackets[static_cast<std::size_t>(bracket)].push_back(i);
  }

  std::vector<int> occupied;
  for (int k = 0; k < num_levels; ++k) {
    if (!brackets[static_cast<std::size_t>(k)].empty()) {
      occupied.push_back(k);
    } else if (warnings) {
      warnings->push_back("no samples between level " + std::to_string(k) + " and the next; " +
                          "its prior mass was merged into a neighbouring level");
    }
  }
  if (occupied.empty()) return out;

  for (std::size_t o = 0; o < occupied.size(); ++o) {
    // Interval [lo, hi] in X covered by this bracket after merging.
    const double log_hi = (o == 0) ? levels[0].log_x : levels[static_cast<std::size_t>(occupied[o])].log_x;
    const double log_lo = (o + 1 < occupied.size())
                              ? levels[static_cast<std::size_t>(occupied[o + 1])].log_x
                              : kNegInf;
    const double log_width = log_diff_exp(log_hi, log_lo);

    auto& members = brackets[static_cast<std::size_t>(occupied[o])];
    std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return out[a].value < out[b].value;
    });
    const auto n = static_cast<double>(members.size());
    const double log_dx = log_width - std::log(n);
    for (std::size_t r = 0; r < members.size(); ++r) {
      // Ascending likelihood means descending X; slice centre for rank r.
      const double fraction = (n - static_cast<double>(r) - 0.5) / n;
      WeightedSample& w = out[members[r]];
      w.log_dx = log_dx;
      w.log_x = log_add_exp(log_lo, log_width + std::log(fraction));
    }
  }
  return out;
}

double compute_log_z(std::span<const WeightedSample> samples) {
  double peak = kNegInf;
  for (const auto& s : samples) peak = std::max(peak, s.log_dx + s.value.log_l);
  if (peak == kNegInf) return kNegInf;
  double total = 0.0;
  for (const auto& s : samples) total += std::exp(s.log_dx + s.value.log_l - peak);
  return peak + std::log(total);
}

void assign_posterior_weights(std::span<WeightedSample> samples, double log_z) {
  for (auto& s : samples)
    s.log_posterior_weight = (log_z == kNegInf) ? kNegInf : s.log_dx + s.value.log_l - log_z;
}

double compute_information(std::span<const WeightedSample> samples, double log_z) {
  if (!std::isfinite(log_z)) return std::numeric_limits<double>::quiet_NaN();
  double h = 0.0;
  for (const auto& s : samples) {
    const double log_p = s.log_dx + s.value.log_l - log_z;
    const double p = std::exp(log_p);
    if (p > 0.0) h += p * (s.value.log_l - log_z);
  }
  return h;
}

double compute_ess(std::span<const double> probabilities) {
  double entropy = 0.0;
  for (double p : probabilities)
    if (p > 0.0) entropy -= p * std::log(p);
  return std::exp(entropy);
}

std::vector<std::size_t> resample_indices(std::span<const double> probabilities,
                                          std::size_t count, Rng& rng) {
  std::vector<double> cumulative(probabilities.size());
  std::partial_sum(probabilities.begin(), probabilities.end(), cumulative.begin());
  if (cumulative.empty() || !(cumulative.back() > 0.0))
    throw std::invalid_argument("resample_indices: weights sum to zero");
  const double total = cumulative.back();

  std::vector<std::size_t> indices;
  indices.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double u = rng.rand() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    // Skip zero-weight entries that share a cumulative value.
    while (probabilities[static_cast<std::size_t>(it - cumulative.begin())] == 0.0 &&
           it + 1 != cumulative.end())
      ++it;
    indices.push_back(static_cast<std::size_t>(it - cumulative.begin()));
  }
  return indices;
}

PosteriorSummary postprocess(const std::filesystem::path& directory, Rng& rng,
                             std::vector<std::string>* warnings) {
  const RunFiles files = RunFiles::read(directory);
  auto samples = assign_log_dx(files.info, files.levels, warnings);

  PosteriorSummary summary;
  summary.num_samples = samples.size();
  summary.log_z = compute_log_z(samples);
  if (!std::isfinite(summary.log_z))
    throw std::runtime_error("log(Z) is not finite; no sample has positive likelihood");
  assign_posterior_weights(samples, summary.log_z);
  summary.information = compute_information(samples, summary.log_z);
  const auto p = linear_weights(samples);
  summary.ess = compute_ess(p);

  const auto count = static_cast<std::size_t>(std::max(1.0, std::round(summary.ess)));
  std::vector<std::string> rows;
  rows.reserve(count);
  for (std::size_t i : resample_indices(p, count, rng)) rows.push_back(files.sample_rows[i]);
  write_rows(directory / kPosteriorSampleFile, files.description, rows);
  summary.num_posterior_samples = rows.size();
  return summary;
}

void print_summary(std::ostream& out, const PosteriorSummary& summary) {
  const auto old = out.precision(12);
  out << "log(Z) = " << summary.log_z << '\n'
      << "Information = " << summary.information << " nats.\n"
      << "Effective sample size = " << summary.ess << '\n';
  out.precision(old);
}

AbcSummary postprocess_abc(const std::filesystem::path& directory, double threshold_fraction,
                           Rng& rng) {
  if (!(threshold_fraction > 0.0 && threshold_fraction <= 1.0))
    throw std::invalid_argument("threshold fraction must be in (0, 1]");
  const RunFiles files = RunFiles::read(directory);
  if (files.levels.empty()) throw std::runtime_error("levels.txt has no levels");
  const auto samples = assign_log_dx(files.info, files.levels);

  AbcSummary summary;
  const int top = static_cast<int>(files.levels.size()) - 1;
  summary.threshold_level = static_cast<int>(std::floor(threshold_fraction * top));
  const Level& level = files.levels[static_cast<std::size_t>(summary.threshold_level)];
  summary.epsilon = -level.threshold.log_l;
  summary.log_x = level.log_x;

  std::vector<std::size_t> kept;
  double peak = kNegInf;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].value > level.threshold) {
      kept.push_back(i);
      peak = std::max(peak, samples[i].log_dx);
    }
  }
  if (kept.empty())
    throw std::runtime_error("no saved sample lies above level " +
                             std::to_string(summary.threshold_level));
  summary.num_kept = kept.size();

  std::vector<double> p(kept.size());
  double total = 0.0;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    p[k] = std::exp(samples[kept[k]].log_dx - peak);
    total += p[k];
  }
  for (double& v : p) v /= total;
  summary.ess = compute_ess(p);

  const auto count = static_cast<std::size_t>(std::max(1.0, std::round(summary.ess)));
  for (std::size_t k : resample_indices(p, count, rng))
    summary.rows.push_back(files.sample_rows[kept[k]]);
  write_rows(directory / kPosteriorSampleFile, files.description, summary.rows);
  return summary;
}

DiagnosticsCounts emit_diagnostics(const std::filesystem::path& run_dir,
                                   const std::filesystem::path& out_dir) {
  const RunFiles files = RunFiles::read(run_dir);
  std::filesystem::create_directories(out_dir);
  DiagnosticsCounts counts;

  {
    std::ofstream out = open_output(out_dir / kTraceCsv);
    out << "save_index,level\n";
    for (std::size_t i = 0; i < files.info.size(); ++i)
      out << i + 1 << ',' << files.info[i].level << '\n';
    counts.trace_rows = files.info.size();
  }
  {
    std::ofstream out = open_output(out_dir / kLevelsDiagCsv);
    out << "level,delta_log_x,acceptance_fraction\n";
    for (std::size_t j = 1; j < files.levels.size(); ++j) {
      const Level& level = files.levels[j];
      const double acceptance =
          level.counts.tries == 0 ? 0.0
                                  : static_cast<double>(level.counts.accepts) /
                                        static_cast<double>(level.counts.tries);
      out << j << ',' << format_double(level.log_x - files.levels[j - 1].log_x) << ','
          << format_double(acceptance) << '\n';
      ++counts.level_rows;
    }
  }
  {
    auto samples = assign_log_dx(files.info, files.levels);
    const double log_z = compute_log_z(samples);
    assign_posterior_weights(samples, log_z);
    std::ranges::stable_sort(samples, {}, &WeightedSample::log_x);
    std::ofstream out = open_output(out_dir / kWeightsCsv);
    out << "log_x,log_likelihood,posterior_weight\n";
    for (const auto& s : samples) {
      out << format_double(s.log_x) << ',' << format_double(s.value.log_l) << ','
          << format_double(std::exp(s.log_posterior_weight)) << '\n';
    }
    counts.weight_rows = samples.size();
  }
  return counts;
}

}  // namespace dns
