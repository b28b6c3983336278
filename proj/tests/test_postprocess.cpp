#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dns/output.hpp"
#include "dns/postprocess.hpp"
#include "dns/sampler.hpp"
#include "support/oracles.hpp"
#include "support/temp_dir.hpp"
#include "support/test_models.hpp"

using namespace dns;
using namespace dns::testing;

namespace {

std::vector<Level> two_levels() {
  std::vector<Level> levels = initial_levels();
  levels.push_back({{1.0, 0.5}, -1.0, {}});
  return levels;
}

double total_mass(const std::vector<WeightedSample>& samples) {
  double s = 0.0;
  for (const auto& w : samples) s += std::exp(w.log_dx);
  return s;
}

std::vector<WeightedSample> weighted(const std::vector<double>& dx, const std::vector<double>& log_l) {
  std::vector<WeightedSample> out;
  for (std::size_t i = 0; i < dx.size(); ++i) {
    WeightedSample w;
    w.row_index = static_cast<int>(i);
    w.value = {log_l[i], 0.5};
    w.log_dx = std::log(dx[i]);
    out.push_back(w);
  }
  return out;
}

/// Writes a tiny run directory by hand.
void write_run(const std::filesystem::path& dir, const std::vector<Level>& levels,
               const std::vector<SampleInfo>& info) {
  RunWriter writer(dir, "x");
  for (std::size_t i = 0; i < info.size(); ++i)
    writer.append_sample(std::to_string(i), info[i].level, info[i].value, info[i].thread);
  writer.write_levels(levels);
}

}  // namespace

TEST_CASE("single level: every sample gets 1/n of the prior") {
  const auto levels = initial_levels();
  std::vector<SampleInfo> info;
  for (int i = 0; i < 7; ++i) info.push_back({0, {0.1 * i, 0.5}, 0});
  const auto w = assign_log_dx(info, levels);
  for (const auto& s : w) CHECK(s.log_dx == doctest::Approx(-std::log(7.0)));
  CHECK(total_mass(w) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two levels split the prior by their X values") {
  const auto levels = two_levels();
  std::vector<SampleInfo> info;
  for (int i = 0; i < 4; ++i) info.push_back({0, {0.1 * i, 0.5}, 0});
  for (int i = 0; i < 4; ++i) info.push_back({1, {2.0 + i, 0.5}, 0});
  const auto w = assign_log_dx(info, levels);
  for (int i = 0; i < 4; ++i)
    CHECK(std::exp(w[i].log_dx) == doctest::Approx((1.0 - std::exp(-1.0)) / 4.0));
  for (int i = 4; i < 8; ++i) CHECK(std::exp(w[i].log_dx) == doctest::Approx(std::exp(-1.0) / 4.0));
  CHECK(std::abs(total_mass(w) - 1.0) < 1e-10);

  // Higher likelihood means smaller X within a bracket.
  for (int i = 1; i < 4; ++i) CHECK(w[i].log_x < w[i - 1].log_x);
  CHECK(w[4].log_x < w[3].log_x);
}

TEST_CASE("empty brackets are merged and reported") {
  std::vector<Level> levels = initial_levels();
  levels.push_back({{1.0, 0.5}, -1.0, {}});
  levels.push_back({{2.0, 0.5}, -2.0, {}});
  std::vector<SampleInfo> info = {{0, {0.5, 0.5}, 0}, {0, {0.7, 0.5}, 0}, {2, {3.0, 0.5}, 0}};
  std::vector<std::string> warnings;
  const auto w = assign_log_dx(info, levels, &warnings);
  CHECK(warnings.size() == 1);
  CHECK(std::abs(total_mass(w) - 1.0) < 1e-10);
  CHECK(std::exp(w[0].log_dx) == doctest::Approx((1.0 - std::exp(-2.0)) / 2.0));
  CHECK(std::exp(w[2].log_dx) == doctest::Approx(std::exp(-2.0)));

  // Nothing below: the lowest occupied bracket takes the mass above it.
  std::vector<SampleInfo> top_only = {{2, {3.0, 0.5}, 0}};
  const auto t = assign_log_dx(top_only, levels, &warnings);
  CHECK(t[0].log_dx == doctest::Approx(0.0));
}

TEST_CASE("missing level is an error") {
  const auto levels = two_levels();
  std::vector<SampleInfo> info = {{2, {3.0, 0.5}, 0}};
  CHECK_THROWS_AS(assign_log_dx(info, levels), std::invalid_argument);
}

TEST_CASE("evidence, information and ESS arithmetic") {
  auto w = weighted({0.5, 0.5}, {0.0, std::log(3.0)});
  const double log_z = compute_log_z(w);
  CHECK(log_z == doctest::Approx(std::log(2.0)));
  const double h = compute_information(w, log_z);
  CHECK(h == doctest::Approx(0.25 * (0.0 - std::log(2.0)) + 0.75 * (std::log(3.0) - std::log(2.0))));
  CHECK(h == doctest::Approx(0.1308).epsilon(1e-3));

  assign_posterior_weights(w, log_z);
  CHECK(std::exp(w[0].log_posterior_weight) == doctest::Approx(0.25));
  CHECK(std::exp(w[1].log_posterior_weight) == doctest::Approx(0.75));

  const std::vector<double> p = {0.5, 0.25, 0.25};
  CHECK(compute_ess(p) == doctest::Approx(std::pow(2.0, 1.5)));
  const std::vector<double> one = {0.0, 1.0, 0.0};
  CHECK(compute_ess(one) == 1.0);
  const std::vector<double> flat(37, 1.0 / 37);
  CHECK(compute_ess(flat) == doctest::Approx(37.0).epsilon(1e-12));

  auto constant = weighted({0.25, 0.25, 0.5}, {-3.0, -3.0, -3.0});
  const double cz = compute_log_z(constant);
  CHECK(cz == doctest::Approx(-3.0).epsilon(1e-14));
  CHECK(std::abs(compute_information(constant, cz)) < 1e-12);

  auto zero = weighted({0.5, 0.5}, {-std::numeric_limits<double>::infinity(),
                                   -std::numeric_limits<double>::infinity()});
  CHECK(compute_log_z(zero) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("zero-weight samples change nothing; order does not matter") {
  auto w = weighted({0.2, 0.3, 0.5}, {1.0, -2.0, 0.5});
  const double log_z = compute_log_z(w);
  const double h = compute_information(w, log_z);

  auto extra = w;
  WeightedSample dead;
  dead.value = {-std::numeric_limits<double>::infinity(), 0.5};
  dead.log_dx = std::log(0.1);
  extra.push_back(dead);
  CHECK(compute_log_z(extra) == doctest::Approx(log_z).epsilon(1e-14));
  CHECK(compute_information(extra, log_z) == doctest::Approx(h).epsilon(1e-14));

  std::reverse(w.begin(), w.end());
  CHECK(compute_log_z(w) == doctest::Approx(log_z).epsilon(1e-14));
}

TEST_CASE("multinomial resampling") {
  Rng rng(9);
  const std::vector<double> dominant = {0.0, 1.0, 0.0};
  for (std::size_t i : resample_indices(dominant, 50, rng)) CHECK(i == 1);

  const std::vector<double> p = {0.1, 0.2, 0.3, 0.4};
  const std::vector<double> theta = {1.0, 2.0, 3.0, 4.0};
  const auto idx = resample_indices(p, 40000, rng);
  std::vector<double> draws;
  for (std::size_t i : idx) draws.push_back(theta[i]);
  const double weighted_mean = 0.1 * 1 + 0.2 * 2 + 0.3 * 3 + 0.4 * 4;
  const double se = std::sqrt(variance(draws) / static_cast<double>(draws.size()));
  CHECK(std::abs(mean(draws) - weighted_mean) < 3.0 * se);
}

TEST_CASE("files being written are read up to the last complete row") {
  TempDir dir("partial");
  const auto levels = two_levels();
  write_run(dir.path(), levels, {{0, {0.5, 0.5}, 0}, {1, {2.0, 0.5}, 0}});
  {
    std::ofstream info(dir / "sample_info.txt", std::ios::app);
    info << "1 3.5 0.2";  // no newline yet
    std::ofstream sample(dir / "sample.txt", std::ios::app);
    sample << "2\n";
  }
  const RunFiles files = RunFiles::read(dir.path());
  CHECK(files.description == "x");
  CHECK(files.info.size() == 2);
  CHECK(files.sample_rows.size() == 2);
  CHECK(files.levels.size() == 2);
}

TEST_CASE("postprocess on a constant-likelihood run") {
  const ConstantLikelihood model{-1.25};
  TempDir dir("constant");
  Options o;
  o.num_particles = 3;
  o.new_level_interval = 500;
  o.save_interval = 100;
  o.thread_steps = 50;
  o.max_num_levels = 5;
  o.max_num_saves = 400;
  o.seed = 5;
  Sampler<ConstantLikelihood>(model, o, dir.path(), Execution::serial, nullptr).run();

  Rng rng(1);
  const auto summary = postprocess(dir.path(), rng);
  CHECK(summary.log_z == doctest::Approx(-1.25).epsilon(1e-12));
  CHECK(std::abs(summary.information) < 1e-6);
  CHECK(summary.num_samples == 400);
  CHECK(summary.ess >= 1.0);
  CHECK(summary.ess <= 400.0);

  std::ostringstream out;
  print_summary(out, summary);
  CHECK(out.str().find("log(Z) = ") == 0);
  CHECK(out.str().find("Information = ") != std::string::npos);
  CHECK(out.str().find(" nats.\n") != std::string::npos);
  CHECK(out.str().find("Effective sample size = ") != std::string::npos);

  const std::string posterior = slurp(dir / "posterior_sample.txt");
  CHECK(posterior.rfind("# theta\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(posterior.begin(), posterior.end(), '\n')) ==
        summary.num_posterior_samples + 1);
}

TEST_CASE("diagnostics CSV bundle") {
  const UniformLine model;
  TempDir dir("diag");
  Options o;
  o.num_particles = 3;
  o.new_level_interval = 500;
  o.save_interval = 100;
  o.thread_steps = 50;
  o.max_num_levels = 6;
  o.max_num_saves = 300;
  o.seed = 2;
  Sampler<UniformLine>(model, o, dir.path(), Execution::serial, nullptr).run();

  TempDir out("diag_out");
  const auto counts = emit_diagnostics(dir.path(), out.path());
  CHECK(counts.trace_rows == 300);
  CHECK(counts.level_rows == 5);
  CHECK(counts.weight_rows == 300);

  auto rows = [](const std::filesystem::path& path) {
    std::ifstream in(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
  };
  const auto trace = rows(out / "trace.csv");
  const auto level_rows = rows(out / "levels_diag.csv");
  const auto weights = rows(out / "weights.csv");
  CHECK(trace.front() == "save_index,level");
  CHECK(level_rows.front() == "level,delta_log_x,acceptance_fraction");
  CHECK(weights.front() == "log_x,log_likelihood,posterior_weight");
  CHECK(trace.size() == 301);
  CHECK(level_rows.size() == 6);
  CHECK(weights.size() == 301);

  for (std::size_t i = 1; i < level_rows.size(); ++i) {
    const auto first = level_rows[i].find(',');
    const auto second = level_rows[i].find(',', first + 1);
    const double delta = std::stod(level_rows[i].substr(first + 1, second - first - 1));
    const double acceptance = std::stod(level_rows[i].substr(second + 1));
    CHECK(delta < 0.0);
    CHECK(acceptance >= 0.0);
    CHECK(acceptance <= 1.0);
  }
  double previous = -std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (std::size_t i = 1; i < weights.size(); ++i) {
    const double log_x = std::stod(weights[i].substr(0, weights[i].find(',')));
    CHECK(log_x >= previous);
    previous = log_x;
    total += std::stod(weights[i].substr(weights[i].rfind(',') + 1));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("postprocess_abc threshold arithmetic") {
  TempDir dir("abc");
  std::vector<Level> levels = initial_levels();
  for (int j = 1; j < 31; ++j) levels.push_back({{-100.0 + 3.0 * j, 0.5}, -1.0 * j, {}});
  std::vector<SampleInfo> info;
  for (int j = 0; j < 31; ++j)
    for (int k = 0; k < 3; ++k) info.push_back({j, {-100.0 + 3.0 * j + 1.0 + 0.5 * k, 0.5}, 0});
  write_run(dir.path(), levels, info);

  Rng rng(3);
  const auto summary = postprocess_abc(dir.path(), 0.8, rng);
  CHECK(summary.threshold_level == 24);
  CHECK(summary.epsilon == doctest::Approx(100.0 - 72.0));
  CHECK(summary.log_x == doctest::Approx(-24.0));
  CHECK(summary.num_kept == 7 * 3);
  CHECK(!summary.rows.empty());

  CHECK_THROWS_AS(postprocess_abc(dir.path(), 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(postprocess_abc(dir.path(), 1.5, rng), std::invalid_argument);

  TempDir single("abc_single");
  write_run(single.path(), initial_levels(), {{0, {-3, 0.5}, 0}, {0, {-2, 0.5}, 0}});
  const auto all = postprocess_abc(single.path(), 0.8, rng);
  CHECK(all.threshold_level == 0);
  CHECK(all.num_kept == 2);
  CHECK(all.ess == doctest::Approx(2.0));

  TempDir empty("abc_empty");
  write_run(empty.path(), two_levels(), {{0, {0.5, 0.5}, 0}});
  CHECK_THROWS_AS(postprocess_abc(empty.path(), 1.0, rng), std::runtime_error);
}
