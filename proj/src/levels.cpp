#include "dns/levels.hpp"

#include <algorithm>
#include <cmath>

namespace dns {

std::vector<Level> initial_levels() {
  return {Level{LikelihoodValue{kBottomLogLikelihood, 0.0}, 0.0, {}}};
}

double level_weight(int j, int num_levels, double lambda, Stage stage) {
  if (stage == Stage::exploring) return 0.0;
  return static_cast<double>(j - (num_levels - 1)) / lambda;
}

bool maybe_create_level(LikelihoodStash& stash, std::vector<Level>& levels,
                        const Options& options) {
  if (stash.size() < static_cast<std::size_t>(options.new_level_interval)) return false;
  if (enough_levels(levels, options)) return false;

  std::sort(stash.begin(), stash.end(),
            [](const LikelihoodValue& a, const LikelihoodValue& b) { return a < b; });
  const auto index = static_cast<std::size_t>(
      std::floor((1.0 - 1.0 / options.compression) * static_cast<double>(stash.size())));
  const LikelihoodValue threshold = stash[std::min(index, stash.size() - 1)];

  Level level;
  level.threshold = threshold;
  level.log_x = levels.back().log_x - std::log(options.compression);
  levels.push_back(level);

  std::erase_if(stash, [&](const LikelihoodValue& v) { return !(v > threshold); });
  recalculate_log_x(levels, options.compression);
  return true;
}

void recalculate_log_x(std::span<Level> levels, double compression) {
  if (levels.empty()) return;
  levels[0].log_x = 0.0;
  const double prior_exceeds = kCompressionPseudoCount / compression;
  for (std::size_t j = 1; j < levels.size(); ++j) {
    const LevelCounts& below = levels[j - 1].counts;
    const double ratio = (static_cast<double>(below.exceeds) + prior_exceeds) /
                         (static_cast<double>(below.visits) + kCompressionPseudoCount);
    levels[j].log_x = levels[j - 1].log_x + std::log(ratio);
  }
}

bool enough_levels(std::span<const Level> levels, const Options& options) {
  const auto count = static_cast<int>(levels.size());
  if (options.max_num_levels > 0) return count >= options.max_num_levels;
  if (count < kAutomaticMinLevels) return false;

  // Gaps involving the -1e308 bottom level carry no information.
  const int pairs = std::min(kAutomaticGapWindow, count - 2);
  double total = 0.0;
  for (int k = count - pairs; k < count; ++k)
    total += levels[k].threshold.log_l - levels[k - 1].threshold.log_l;
  return total / pairs < kAutomaticGapThreshold;
}

void record_visit(int level_index, const LikelihoodValue& value,
                  std::span<const Level> levels, std::span<LevelCounts> counts) {
  const auto next = static_cast<std::size_t>(level_index) + 1;
  if (next >= levels.size()) return;
  LevelCounts& c = counts[level_index];
  ++c.visits;
  if (value > levels[next].threshold) ++c.exceeds;
}

}  // namespace dns
