#include "cli.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dns/dataset.hpp"
#include "dns/models/abc_normal.hpp"
#include "dns/models/analytic_gaussian.hpp"
#include "dns/models/gaussian_mixture.hpp"
#include "dns/models/straight_line.hpp"
#include "dns/postprocess.hpp"
#include "dns/sampler.hpp"

namespace dns::cli {

namespace {

const std::filesystem::path kDefaultOptionsFile = "OPTIONS";

const std::map<std::string, std::string> kDefaultData = {
    {"straightline", "straightline.txt"},
    {"mixture", "galaxies.txt"},
    {"abc", "abc_normal.txt"},
};

std::shared_ptr<const Dataset> load_data(const std::string& model, const Options& options) {
  std::filesystem::path path;
  if (options.data_path) {
    path = *options.data_path;
  } else {
    const auto it = kDefaultData.find(model);
    if (it == kDefaultData.end()) return nullptr;
    path = it->second;
  }
  return DataRegistry::instance().get(resolve_data_path(path));
}

template <Model M>
RunSummary sample(const M& model, const Options& options, const std::filesystem::path& dir,
                  std::ostream& out) {
  Sampler<M> sampler(model, options, dir, Execution::openmp, &out);
  out << "# Seed = " << sampler.seed() << ".\n";
  return sampler.run();
}

RunSummary run_model(const std::string& name, const Options& options,
                     const std::filesystem::path& dir, std::ostream& out) {
  if (name == "gaussian") return sample(models::AnalyticGaussian{}, options, dir, out);
  const auto data = load_data(name, options);
  if (name == "straightline") return sample(models::StraightLine(data), options, dir, out);
  if (name == "mixture") return sample(models::GaussianMixture(data), options, dir, out);
  return sample(models::AbcNormal(data), options, dir, out);
}

void write_dataset(std::ostream& out, const Dataset& data) {
  out.precision(12);
  for (std::size_t i = 0; i < data.num_rows(); ++i) {
    for (std::size_t c = 0; c < data.num_columns(); ++c)
      out << (c ? " " : "") << data.column(c)[i];
    out << '\n';
  }
}

std::uint64_t seed_or_time(const std::optional<std::uint64_t>& seed) {
  Options o;
  o.seed = seed;
  return resolve_seed(o);
}

}  // namespace

Options resolve_options(const std::optional<std::filesystem::path>& options_path,
                        const Overrides& overrides) {
  Options options;
  if (options_path)
    options = load_options(*options_path);
  else if (std::filesystem::exists(kDefaultOptionsFile))
    options = load_options(kDefaultOptionsFile);

  if (overrides.seed) options.seed = overrides.seed;
  if (overrides.compression) options.compression = *overrides.compression;
  if (overrides.num_threads) options.num_threads = *overrides.num_threads;
  if (overrides.data_path) options.data_path = overrides.data_path;
  options.validate();
  return options;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diffusive Nested Sampling", "dns"};
  app.require_subcommand(1);

  std::string model;
  std::optional<std::filesystem::path> options_path;
  Overrides overrides;
  std::filesystem::path output_dir = ".";
  auto* run_cmd = app.add_subcommand("run", "Sample from one of the bundled models");
  run_cmd->add_option("model", model, "straightline, gaussian, mixture or abc")
      ->required()
      ->check(CLI::IsMember({"straightline", "gaussian", "mixture", "abc"}));
  run_cmd->add_option("-o,--options", options_path, "OPTIONS file (default: ./OPTIONS if present)");
  run_cmd->add_option("-s,--seed", overrides.seed, "Random seed (default: system time)");
  run_cmd->add_option("-d,--data", overrides.data_path, "Data file");
  run_cmd->add_option("-c,--compression", overrides.compression,
                      "Compression per level (needs a fixed number of levels)");
  run_cmd->add_option("-t,--threads", overrides.num_threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--output-dir", output_dir, "Where to write the output files");

  std::filesystem::path run_dir = ".";
  std::optional<std::uint64_t> pp_seed;
  auto* pp_cmd = app.add_subcommand("postprocess", "log(Z), information, ESS, posterior samples");
  pp_cmd->add_option("--dir", run_dir, "Run directory");
  pp_cmd->add_option("-s,--seed", pp_seed, "Seed for resampling");

  double threshold_fraction = 0.8;
  auto* abc_cmd = app.add_subcommand("postprocess-abc", "ABC posterior from an abc run");
  abc_cmd->add_option("--dir", run_dir, "Run directory");
  abc_cmd->add_option("--threshold-fraction", threshold_fraction, "Level fraction in (0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  abc_cmd->add_option("-s,--seed", pp_seed, "Seed for resampling");

  std::filesystem::path csv_dir = ".";
  auto* diag_cmd = app.add_subcommand("diagnostics", "Write the diagnostic CSV files");
  diag_cmd->add_option("--dir", run_dir, "Run directory");
  diag_cmd->add_option("--out", csv_dir, "Directory for the CSV files");

  std::string sim_model;
  int sim_rows = 0;
  std::optional<std::filesystem::path> sim_out;
  auto* sim_cmd = app.add_subcommand("simulate", "Write a synthetic dataset");
  sim_cmd->add_option("model", sim_model, "straightline or abc")
      ->required()
      ->check(CLI::IsMember({"straightline", "abc"}));
  sim_cmd->add_option("-n,--rows", sim_rows, "Number of data points")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("-s,--seed", pp_seed, "Random seed");
  sim_cmd->add_option("--out", sim_out, "Output file (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "dns: " << e.what() << "\n\n";
    auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return e.get_exit_code() ? e.get_exit_code() : 1;
  }

  try {
    if (run_cmd->parsed()) {
      const Options options = resolve_options(options_path, overrides);
      const RunSummary summary = run_model(model, options, output_dir, out);
      out << "# Finished: " << summary.num_saves << " saves, " << summary.num_levels
          << " levels, " << summary.mcmc_steps << " MCMC steps.\n";
    } else if (pp_cmd->parsed()) {
      Rng rng(seed_or_time(pp_seed));
      std::vector<std::string> warnings;
      const auto summary = postprocess(run_dir, rng, &warnings);
      for (const auto& w : warnings) err << "warning: " << w << '\n';
      print_summary(out, summary);
    } else if (abc_cmd->parsed()) {
      Rng rng(seed_or_time(pp_seed));
      const auto summary = postprocess_abc(run_dir, threshold_fraction, rng);
      out << "Threshold level = " << summary.threshold_level << '\n'
          << "Epsilon = " << format_double(summary.epsilon) << '\n'
          << "log(X) at threshold = " << format_double(summary.log_x) << '\n'
          << "Samples kept = " << summary.num_kept << '\n'
          << "Effective sample size = " << summary.ess << '\n';
    } else if (diag_cmd->parsed()) {
      const auto counts = emit_diagnostics(run_dir, csv_dir);
      out << "Wrote " << counts.trace_rows << " trace rows, " << counts.level_rows
          << " level rows, " << counts.weight_rows << " weight rows to " << csv_dir.string()
          << '\n';
    } else if (sim_cmd->parsed()) {
      Rng rng(seed_or_time(pp_seed));
      Dataset data;
      if (sim_model == "straightline") {
        data = models::StraightLine::simulate(sim_rows ? sim_rows : 50, {1.0, 0.0, 1.0}, rng);
      } else {
        std::vector<double> x(static_cast<std::size_t>(sim_rows ? sim_rows : 100));
        for (double& v : x) v = rng.randn();
        data = Dataset({std::move(x)});
      }
      if (sim_out) {
        std::ofstream file(*sim_out);
        if (!file) throw std::runtime_error("cannot open " + sim_out->string());
        write_dataset(file, data);
      } else {
        write_dataset(out, data);
      }
    }
  } catch (const std::exception& e) {
    err << "dns: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace dns::cli
