#include "dns/models/abc_normal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dns::models {

double abc_discrepancy(const AbcNormalParams& params, double observed_min, double observed_max) {
  if (params.n.empty()) throw std::invalid_argument("abc_discrepancy: no simulated data");
  // Simulated data are monotone in n, so the extremes come from the extreme n.
  const auto [lo, hi] = std::ranges::minmax(params.n);
  const double sigma = std::exp(params.log_sigma);
  const double fake_min = params.mu + sigma * lo;
  const double fake_max = params.mu + sigma * hi;
  double log_l = 0.0;
  log_l -= std::pow(fake_min - observed_min, 2);
  log_l -= std::pow(fake_max - observed_max, 2);
  return log_l;
}

AbcNormal::AbcNormal(std::shared_ptr<const Dataset> data) : data_(std::move(data)) {
  if (!data_ || data_->num_columns() != 1 || data_->num_rows() == 0)
    throw std::invalid_argument("AbcNormal needs a non-empty one-column dataset");
  const auto x = data_->column(0);
  size_ = x.size();
  const auto [lo, hi] = std::ranges::minmax(x);
  observed_min_ = lo;
  observed_max_ = hi;
}

AbcNormal::Params AbcNormal::from_prior(Rng& rng) const {
  Params p;
  p.mu = -10.0 + 20.0 * rng.rand();
  p.log_sigma = -10.0 + 20.0 * rng.rand();
  p.n.resize(size_);
  for (double& v : p.n) v = rng.randn();
  return p;
}

double AbcNormal::perturb(Params& p, Rng& rng) const {
  const int which = rng.rand_int(3);
  if (which == 0) {
    p.mu = wrap(p.mu + 20.0 * rng.randh(), -10.0, 10.0);
  } else if (which == 1) {
    p.log_sigma = wrap(p.log_sigma + 20.0 * rng.randh(), -10.0, 10.0);
  } else {
    p.n[static_cast<std::size_t>(rng.rand_int(static_cast<int>(p.n.size())))] = rng.randn();
  }
  return 0.0;
}

double AbcNormal::log_likelihood(const Params& p) const {
  return abc_discrepancy(p, observed_min_, observed_max_);
}

void AbcNormal::print(std::ostream& out, const Params& p) const {
  out << p.mu << ' ' << p.log_sigma;
}

}  // namespace dns::models
