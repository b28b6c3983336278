#ifndef DNS_SAMPLER_HPP
#define DNS_SAMPLER_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dns/levels.hpp"
#include "dns/model.hpp"
#include "dns/options.hpp"
#include "dns/output.hpp"
#include "dns/rng.hpp"

namespace dns {

/// How the per-worker particle updates inside a pooling window are executed.
/// Both produce identical results; `serial` is the reference implementation.
enum class Execution { serial, openmp };

template <typename Params>
struct Particle {
  Params params;
  LikelihoodValue value;
  int level = 0;
};

/// Read-only view of the level list for one pooling window.
struct LevelView {
  std::span<const Level> levels;
  Stage stage = Stage::building;
  double lambda = 10.0;
  double beta = 100.0;

  int size() const { return static_cast<int>(levels.size()); }
};

/// Worker-private accumulators for one window; folded into the shared level
/// list at the barrier.
struct WindowTally {
  std::vector<LevelCounts> counts;
  LikelihoodStash stash;

  void reset(std::size_t num_levels) {
    counts.assign(num_levels, LevelCounts{});
    stash.clear();
  }
};

template <Model M>
double checked_log_likelihood(const M& model, const typename M::Params& params) {
  const double log_l = model.log_likelihood(params);
  if (std::isnan(log_l)) throw std::runtime_error("model returned a NaN log-likelihood");
  return log_l;
}

namespace kernels {

/// Metropolis move of the parameters (and tiebreaker) at fixed level.
/// `scratch` is reused storage for the proposal. Returns true on acceptance.
template <Model M>
bool step_particle(const M& model, Particle<typename M::Params>& particle,
                   typename M::Params& scratch, const LevelView& view, WindowTally& tally,
                   Rng& rng) {
  scratch = particle.params;
  const double log_h = model.perturb(scratch, rng);
  const double tiebreaker = wrap(particle.value.tiebreaker + rng.randh(), 0.0, 1.0);
  const double u = rng.rand();

  LevelCounts& counts = tally.counts[particle.level];
  ++counts.tries;

  bool accepted = false;
  if (!std::isnan(log_h) && (log_h >= 0.0 || u < std::exp(log_h))) {
    const LikelihoodValue proposed{checked_log_likelihood(model, scratch), tiebreaker};
    if (proposed > view.levels[particle.level].threshold) {
      std::swap(particle.params, scratch);
      particle.value = proposed;
      ++counts.accepts;
      accepted = true;
    }
  }

  if (view.stage == Stage::building && particle.value > view.levels.back().threshold)
    tally.stash.push_back(particle.value);
  return accepted;
}

/// Nonzero symmetric heavy-tailed integer step for level moves.
inline int propose_level_jump(Rng& rng) {
  const double magnitude = std::pow(10.0, 2.0 * rng.rand()) * rng.randn();
  const int step = std::max(1, static_cast<int>(std::floor(std::abs(magnitude))));
  return rng.rand() < 0.5 ? -step : step;
}

/// Log acceptance ratio (before the min with 0) for moving a particle from
/// level `from` to level `to` with its parameters held fixed.
inline double log_level_acceptance(int from, int to, const LevelView& view) {
  const int n = view.size();
  double log_a = level_weight(to, n, view.lambda, view.stage) -
                 level_weight(from, n, view.lambda, view.stage);
  log_a += view.levels[from].log_x - view.levels[to].log_x;
  if (view.stage == Stage::exploring) {
    const double tries_from = static_cast<double>(view.levels[from].counts.tries);
    const double tries_to = static_cast<double>(view.levels[to].counts.tries);
    log_a += view.beta * std::log((tries_from + 1.0) / (tries_to + 1.0));
  }
  return log_a;
}

/// Metropolis move of the level index with the parameters held fixed.
template <typename Params>
bool step_level_assignment(Particle<Params>& particle, const LevelView& view, Rng& rng,
                           int proposed_level) {
  const double u = rng.rand();
  if (proposed_level < 0 || proposed_level >= view.size()) return false;
  if (!(particle.value > view.levels[proposed_level].threshold)) return false;
  const double log_a = log_level_acceptance(particle.level, proposed_level, view);
  if (log_a >= 0.0 || u < std::exp(log_a)) {
    particle.level = proposed_level;
    return true;
  }
  return false;
}

template <typename Params>
bool step_level_assignment(Particle<Params>& particle, const LevelView& view, Rng& rng) {
  const int proposed = particle.level + propose_level_jump(rng);
  return step_level_assignment(particle, view, rng, proposed);
}

}  // namespace kernels

/// One worker: a private particle set and random stream. A worker evolves
/// independently for a whole pooling window, so the outcome does not depend on
/// how workers are scheduled onto threads.
template <Model M>
class Worker {
 public:
  using Params = typename M::Params;

  Worker(const M& model, int num_particles, std::uint64_t seed)
      : rng_(seed),
        particles_(initial_particles(model, num_particles, rng_)),
        scratch_(particles_.front().params) {}

  /// Runs `steps` MCMC steps. Each step picks a particle and applies a
  /// parameter move and a level move in random order.
  void evolve(const M& model, const LevelView& view, int steps) noexcept {
    try {
      tally_.reset(view.levels.size());
      const int n = static_cast<int>(particles_.size());
      for (int s = 0; s < steps; ++s) {
        Particle<Params>& p = particles_[static_cast<std::size_t>(rng_.rand_int(n))];
        if (rng_.rand() < 0.5) {
          kernels::step_particle(model, p, scratch_, view, tally_, rng_);
          kernels::step_level_assignment(p, view, rng_);
        } else {
          kernels::step_level_assignment(p, view, rng_);
          kernels::step_particle(model, p, scratch_, view, tally_, rng_);
        }
        record_visit(p.level, p.value, view.levels, tally_.counts);
      }
    } catch (...) {
      error_ = std::current_exception();
    }
  }

  void rethrow_if_failed() const {
    if (error_) std::rethrow_exception(error_);
  }

  const WindowTally& tally() const { return tally_; }
  const std::vector<Particle<Params>>& particles() const { return particles_; }

 private:
  static std::vector<Particle<Params>> initial_particles(const M& model, int count, Rng& rng) {
    std::vector<Particle<Params>> particles;
    particles.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      Particle<Params> p{model.from_prior(rng), {}, 0};
      p.value.log_l = checked_log_likelihood(model, p.params);
      p.value.tiebreaker = rng.rand();
      particles.push_back(std::move(p));
    }
    return particles;
  }

  Rng rng_;
  std::vector<Particle<Params>> particles_;
  Params scratch_;
  WindowTally tally_;
  std::exception_ptr error_;
};

/// Runs `steps` steps on every worker, one OpenMP thread per worker.
template <Model M>
void evolve_openmp(std::vector<Worker<M>>& workers, const M& model, const LevelView& view,
                   int steps) {
  const int n = static_cast<int>(workers.size());
#pragma omp parallel for schedule(static, 1) num_threads(n)
  for (int w = 0; w < n; ++w) workers[static_cast<std::size_t>(w)].evolve(model, view, steps);
}

/// Serial reference for evolve_openmp.
template <Model M>
void evolve_serial(std::vector<Worker<M>>& workers, const M& model, const LevelView& view,
                   int steps) {
  for (auto& worker : workers) worker.evolve(model, view, steps);
}

struct RunSummary {
  int num_levels = 0;
  int num_saves = 0;
  std::uint64_t mcmc_steps = 0;
  std::uint64_t seed = 0;
};

inline std::uint64_t resolve_seed(const Options& options) {
  if (options.seed) return *options.seed;
  return static_cast<std::uint64_t>(
      std::chrono::system_clock::now().time_since_epoch().count());
}

/// Diffusive Nested Sampling driver. Owns the workers and the level list,
/// pools worker tallies every `thread_steps` steps, builds levels and writes
/// the output files.
template <Model M>
class Sampler {
 public:
  using Params = typename M::Params;

  Sampler(const M& model, Options options, const std::filesystem::path& output_dir,
          Execution execution = Execution::openmp, std::ostream* log = &std::cout)
      : model_(model),
        options_(validated(std::move(options))),
        seed_(resolve_seed(options_)),
        execution_(execution),
        log_(log),
        coordinator_rng_(mix_seed(seed_, 0)),
        levels_(initial_levels()),
        writer_(output_dir, model.description()) {
    workers_.reserve(static_cast<std::size_t>(options_.num_threads));
    for (int w = 0; w < options_.num_threads; ++w)
      workers_.emplace_back(model_, options_.num_particles,
                            mix_seed(seed_, static_cast<std::uint64_t>(w) + 1));
    row_.precision(12);
  }

  /// Runs until max_num_saves particles have been saved (forever if 0).
  RunSummary run() {
    while (options_.max_num_saves == 0 || num_saves_ < options_.max_num_saves) advance_window();
    return summary();
  }

  /// One pooling window: evolve all workers, then merge their tallies,
  /// create a level if due, refresh log X estimates and save on schedule.
  void advance_window() {
    const Stage stage = current_stage();
    const LevelView view{levels_, stage, options_.lambda, options_.beta};
    if (execution_ == Execution::openmp)
      evolve_openmp(workers_, model_, view, options_.thread_steps);
    else
      evolve_serial(workers_, model_, view, options_.thread_steps);
    for (const auto& worker : workers_) worker.rethrow_if_failed();

    for (const auto& worker : workers_) {
      const WindowTally& tally = worker.tally();
      for (std::size_t j = 0; j < tally.counts.size(); ++j) levels_[j].counts += tally.counts[j];
      if (stage == Stage::building)
        stash_.insert(stash_.end(), tally.stash.begin(), tally.stash.end());
    }
    const auto window_steps = static_cast<std::uint64_t>(options_.thread_steps) * workers_.size();
    mcmc_steps_ += window_steps;
    steps_since_save_ += window_steps;

    if (stage == Stage::building) {
      if (maybe_create_level(stash_, levels_, options_)) {
        if (log_)
          *log_ << "# Creating level " << levels_.size() - 1 << " with log likelihood = "
                << format_double(levels_.back().threshold.log_l) << ".\n";
      }
      if (enough_levels(levels_, options_)) {
        stash_.clear();
        stash_.shrink_to_fit();
        if (log_) *log_ << "# Done creating levels.\n";
      }
    }
    recalculate_log_x(levels_, options_.compression);

    while (steps_since_save_ >= static_cast<std::uint64_t>(options_.save_interval) &&
           (options_.max_num_saves == 0 || num_saves_ < options_.max_num_saves)) {
      steps_since_save_ -= static_cast<std::uint64_t>(options_.save_interval);
      save_particle();
    }
  }

  Stage current_stage() const {
    return enough_levels(levels_, options_) ? Stage::exploring : Stage::building;
  }

  std::span<const Level> levels() const { return levels_; }
  const std::vector<Worker<M>>& workers() const { return workers_; }
  const Options& options() const { return options_; }
  std::uint64_t seed() const { return seed_; }

  RunSummary summary() const {
    return {static_cast<int>(levels_.size()), num_saves_, mcmc_steps_, seed_};
  }

 private:
  static Options validated(Options options) {
    options.validate();
    return options;
  }

  void save_particle() {
    const int per_worker = options_.num_particles;
    const int k = coordinator_rng_.rand_int(per_worker * static_cast<int>(workers_.size()));
    const int thread = k / per_worker;
    const auto& particle = workers_[static_cast<std::size_t>(thread)]
                               .particles()[static_cast<std::size_t>(k % per_worker)];

    row_.str({});
    model_.print(row_, particle.params);
    writer_.append_sample(row_.view(), particle.level, particle.value, thread);
    writer_.write_levels(levels_);
    ++num_saves_;
    if (log_) *log_ << "# Saving a particle to disk. N = " << num_saves_ << ".\n";
  }

  const M& model_;
  Options options_;
  std::uint64_t seed_;
  Execution execution_;
  std::ostream* log_;
  Rng coordinator_rng_;
  std::vector<Level> levels_;
  std::vector<Worker<M>> workers_;
  LikelihoodStash stash_;
  RunWriter writer_;
  std::ostringstream row_;
  int num_saves_ = 0;
  std::uint64_t mcmc_steps_ = 0;
  std::uint64_t steps_since_save_ = 0;
};

}  // namespace dns

#endif  // DNS_SAMPLER_HPP
