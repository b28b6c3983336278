#include "dns/rjobject.hpp"

#include <string>

namespace dns {

namespace {

double harmonic_normalizer(int max_num_components) {
  double total = 0.0;
  for (int k = max_num_components; k >= 0; --k) total += 1.0 / (k + 1.0);
  return total;
}

}  // namespace

double n_prior_log_mass(int n, PriorType prior_type, int max_num_components) {
  if (n < 0 || n > max_num_components)
    throw std::out_of_range("number of components " + std::to_string(n) + " outside [0, " +
                            std::to_string(max_num_components) + "]");
  switch (prior_type) {
    case PriorType::uniform:
      return -std::log(max_num_components + 1.0);
    case PriorType::log_uniform:
      return -std::log(n + 1.0) - std::log(harmonic_normalizer(max_num_components));
  }
  return 0.0;
}

int draw_num_components(PriorType prior_type, int max_num_components, Rng& rng) {
  if (prior_type == PriorType::uniform) return rng.rand_int(max_num_components + 1);
  double target = rng.rand() * harmonic_normalizer(max_num_components);
  for (int n = 0; n < max_num_components; ++n) {
    target -= 1.0 / (n + 1.0);
    if (target < 0.0) return n;
  }
  return max_num_components;
}

}  // namespace dns
