#ifndef DNS_MODELS_ABC_NORMAL_HPP
#define DNS_MODELS_ABC_NORMAL_HPP

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "dns/dataset.hpp"
#include "dns/rng.hpp"

namespace dns::models {

/// A point in joint (parameter, simulated data) space. Simulated datum i is
/// mu + exp(log_sigma) * n[i].
struct AbcNormalParams {
  double mu = 0.0;
  double log_sigma = 0.0;
  std::vector<double> n;
};

/// Minus the ABC discrepancy: -(min(fake) - observed_min)^2 - (max(fake) - observed_max)^2.
double abc_discrepancy(const AbcNormalParams& params, double observed_min, double observed_max);

/// ABC version of "infer the mean and width of a normal sample", using the
/// sample minimum and maximum as summary statistics. Priors:
/// mu ~ U(-10, 10), ln(sigma) ~ U(-10, 10), n_i ~ N(0, 1).
/// log_likelihood() returns minus the discrepancy. Data: one column.
class AbcNormal {
 public:
  using Params = AbcNormalParams;

  explicit AbcNormal(std::shared_ptr<const Dataset> data);

  Params from_prior(Rng& rng) const;
  double perturb(Params& params, Rng& rng) const;
  double log_likelihood(const Params& params) const;
  void print(std::ostream& out, const Params& params) const;
  std::string description() const { return "mu, log_sigma"; }

  double observed_min() const { return observed_min_; }
  double observed_max() const { return observed_max_; }

 private:
  std::shared_ptr<const Dataset> data_;
  std::size_t size_ = 0;
  double observed_min_ = 0.0;
  double observed_max_ = 0.0;
};

}  // namespace dns::models

#endif  // DNS_MODELS_ABC_NORMAL_HPP
