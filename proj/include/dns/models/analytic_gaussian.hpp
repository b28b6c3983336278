#ifndef DNS_MODELS_ANALYTIC_GAUSSIAN_HPP
#define DNS_MODELS_ANALYTIC_GAUSSIAN_HPP

#include <ostream>
#include <string>
#include <vector>

#include "dns/rng.hpp"

namespace dns::models {

/// ln Z of AnalyticGaussian: -(D/2) ln(2 pi (1 + s^2)).
double analytic_gaussian_log_z(int dimensions, double width);

/// D-dimensional test problem with a known evidence: iid N(0, 1) priors and
/// likelihood prod_d N(theta_d | 0, s^2).
class AnalyticGaussian {
 public:
  using Params = std::vector<double>;

  AnalyticGaussian(int dimensions = 5, double width = 0.1);

  Params from_prior(Rng& rng) const;
  double perturb(Params& theta, Rng& rng) const;
  double log_likelihood(const Params& theta) const;
  void print(std::ostream& out, const Params& theta) const;
  std::string description() const;

  int dimensions() const { return dimensions_; }
  double width() const { return width_; }
  double exact_log_z() const { return analytic_gaussian_log_z(dimensions_, width_); }

 private:
  int dimensions_;
  double width_;
};

}  // namespace dns::models

#endif  // DNS_MODELS_ANALYTIC_GAUSSIAN_HPP
