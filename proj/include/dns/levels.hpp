#ifndef DNS_LEVELS_HPP
#define DNS_LEVELS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dns/model.hpp"
#include "dns/options.hpp"

namespace dns {

/// Log-likelihood of the bottom level; effectively minus infinity.
inline constexpr double kBottomLogLikelihood = -1e308;

/// Pseudo-count that pulls the estimated compression of a level towards the
/// nominal value until enough visits have been recorded.
inline constexpr double kCompressionPseudoCount = 100.0;

/// Automatic termination: a window of threshold gaps below this mean (nats)
/// means the posterior bulk has been enclosed.
inline constexpr double kAutomaticGapThreshold = 0.8;
inline constexpr int kAutomaticMinLevels = 10;
inline constexpr int kAutomaticGapWindow = 20;

/// Per-level bookkeeping counters. Workers accumulate these as deltas and the
/// coordinator folds them into the shared level list.
struct LevelCounts {
  std::uint64_t accepts = 0;
  std::uint64_t tries = 0;
  std::uint64_t exceeds = 0;
  std::uint64_t visits = 0;

  LevelCounts& operator+=(const LevelCounts& other) {
    accepts += other.accepts;
    tries += other.tries;
    exceeds += other.exceeds;
    visits += other.visits;
    return *this;
  }
};

struct Level {
  LikelihoodValue threshold;
  double log_x = 0.0;
  LevelCounts counts;
};

/// A fresh level list holding only the prior (log X = 0, threshold -1e308).
std::vector<Level> initial_levels();

enum class Stage { building, exploring };

/// Log mixture weight of level j. While levels are being built the weights
/// grow as exp(j / lambda) with the top level at zero; afterwards they are
/// uniform.
double level_weight(int j, int num_levels, double lambda, Stage stage);

/// Likelihood values seen above the current top level since it was created.
using LikelihoodStash = std::vector<LikelihoodValue>;

/// Creates a new level from the stash once it holds at least
/// new_level_interval entries. The threshold is the (1 - 1/c) quantile of the
/// stash and entries at or below it are dropped. Returns true if a level was
/// added; log X values are re-estimated afterwards.
bool maybe_create_level(LikelihoodStash& stash, std::vector<Level>& levels,
                        const Options& options);

/// Re-estimates log X of every level from the exceeds/visits counts,
/// regularised towards the nominal compression.
void recalculate_log_x(std::span<Level> levels, double compression);

/// True once the level set is complete (fixed count reached, or the
/// automatic rule fires).
bool enough_levels(std::span<const Level> levels, const Options& options);

/// Counts a visit to level j (only once level j + 1 exists) and whether the
/// particle's likelihood also exceeds level j + 1.
void record_visit(int level_index, const LikelihoodValue& value,
                  std::span<const Level> levels, std::span<LevelCounts> counts);

}  // namespace dns

#endif  // DNS_LEVELS_HPP
