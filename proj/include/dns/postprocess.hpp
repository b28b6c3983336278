#ifndef DNS_POSTPROCESS_HPP
#define DNS_POSTPROCESS_HPP

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dns/levels.hpp"
#include "dns/rng.hpp"

namespace dns {

inline constexpr std::string_view kPosteriorSampleFile = "posterior_sample.txt";
inline constexpr std::string_view kTraceCsv = "trace.csv";
inline constexpr std::string_view kLevelsDiagCsv = "levels_diag.csv";
inline constexpr std::string_view kWeightsCsv = "weights.csv";

/// One row of sample_info.txt.
struct SampleInfo {
  int level = 0;
  LikelihoodValue value;
  int thread = 0;
};

/// The three sampler output files. Readers accept files that are still being
/// written: a final row that is incomplete is ignored, and the sample lists
/// are cut to the shorter of sample.txt and sample_info.txt.
struct RunFiles {
  std::string description;               // sample.txt header without the '#'
  std::vector<std::string> sample_rows;  // raw parameter rows
  std::vector<SampleInfo> info;
  std::vector<Level> levels;

  static RunFiles read(const std::filesystem::path& directory);
};

std::vector<Level> read_levels(const std::filesystem::path& path);
std::vector<SampleInfo> read_sample_info(const std::filesystem::path& path);

struct WeightedSample {
  int row_index = 0;
  int level_index = 0;              // level recorded by the sampler
  LikelihoodValue value;
  double log_dx = 0.0;              // log prior mass assigned to the sample
  double log_x = 0.0;               // log X at the centre of that slice
  double log_posterior_weight = 0.0;
};

/// Splits the prior mass between saved samples. Each sample belongs to the
/// likelihood bracket between the highest level it exceeds and the next one
/// (the top bracket closes at X = 0). Within a bracket, samples are ranked by
/// likelihood and share its mass equally. The mass of a bracket with no
/// samples goes to the nearest non-empty bracket below it (above, if there is
/// none below); each such merge appends a message to `warnings`.
/// Throws std::invalid_argument if a sample's level index is out of range.
std::vector<WeightedSample> assign_log_dx(std::span<const SampleInfo> samples,
                                          std::span<const Level> levels,
                                          std::vector<std::string>* warnings = nullptr);

/// ln Z = ln sum exp(log_dx + log_l); -infinity when every likelihood is zero.
double compute_log_z(std::span<const WeightedSample> samples);

/// Fills log_posterior_weight = log_dx + log_l - log_z.
void assign_posterior_weights(std::span<WeightedSample> samples, double log_z);

/// Information (KL divergence of posterior from prior) in nats.
double compute_information(std::span<const WeightedSample> samples, double log_z);

/// exp(entropy) of normalised weights; zero weights contribute nothing.
double compute_ess(std::span<const double> probabilities);

/// Multinomial resampling: `count` indices drawn with replacement in
/// proportion to `probabilities`.
std::vector<std::size_t> resample_indices(std::span<const double> probabilities,
                                          std::size_t count, Rng& rng);

struct PosteriorSummary {
  double log_z = 0.0;
  double information = 0.0;
  double ess = 0.0;
  std::size_t num_samples = 0;
  std::size_t num_posterior_samples = 0;
};

/// Weights the run's samples, writes posterior_sample.txt (round(ESS) rows)
/// into `directory`, and returns the summary.
PosteriorSummary postprocess(const std::filesystem::path& directory, Rng& rng,
                             std::vector<std::string>* warnings = nullptr);

/// Prints the three summary lines (log(Z), Information, Effective sample size).
void print_summary(std::ostream& out, const PosteriorSummary& summary);

struct AbcSummary {
  int threshold_level = 0;
  double epsilon = 0.0;     // minus the threshold's "log likelihood"
  double log_x = 0.0;       // ln P(discrepancy < epsilon) under the prior
  std::size_t num_kept = 0;
  double ess = 0.0;
  std::vector<std::string> rows;  // resampled parameter rows
};

/// ABC posterior at level floor(threshold_fraction * (J - 1)): every sample
/// above that level's threshold, weighted by prior mass only. Writes the
/// resampled rows to posterior_sample.txt. Throws std::invalid_argument
/// unless 0 < threshold_fraction <= 1, and std::runtime_error when no sample
/// clears the threshold.
AbcSummary postprocess_abc(const std::filesystem::path& directory, double threshold_fraction,
                           Rng& rng);

struct DiagnosticsCounts {
  std::size_t trace_rows = 0;
  std::size_t level_rows = 0;
  std::size_t weight_rows = 0;
};

/// Writes trace.csv (save_index,level), levels_diag.csv
/// (level,delta_log_x,acceptance_fraction; one row per level above the
/// prior) and weights.csv (log_x,log_likelihood,posterior_weight; sorted by
/// log_x) into `out_dir`.
DiagnosticsCounts emit_diagnostics(const std::filesystem::path& run_dir,
                                   const std::filesystem::path& out_dir);

}  // namespace dns

#endif  // DNS_POSTPROCESS_HPP
