#ifndef DNS_MODELS_STRAIGHT_LINE_HPP
#define DNS_MODELS_STRAIGHT_LINE_HPP

#include <memory>
#include <ostream>
#include <string>

#include "dns/dataset.hpp"
#include "dns/rng.hpp"

namespace dns::models {

struct StraightLineParams {
  double m = 0.0;
  double b = 0.0;
  double sigma = 1.0;
};

/// Linear regression y ~ Normal(m x + b, sigma^2) with priors
/// m, b ~ Normal(0, 1000^2) and ln(sigma) ~ Uniform(-10, 10).
/// Data: two columns, x then y.
class StraightLine {
 public:
  using Params = StraightLineParams;

  explicit StraightLine(std::shared_ptr<const Dataset> data);

  Params from_prior(Rng& rng) const;
  double perturb(Params& params, Rng& rng) const;
  double log_likelihood(const Params& params) const;
  void print(std::ostream& out, const Params& params) const;
  std::string description() const { return "m, b, sigma"; }

  /// `n` points with x uniform on [0, 10) and Gaussian noise around m x + b.
  static Dataset simulate(int n, const Params& truth, Rng& rng);

 private:
  std::shared_ptr<const Dataset> data_;
};

}  // namespace dns::models

#endif  // DNS_MODELS_STRAIGHT_LINE_HPP
