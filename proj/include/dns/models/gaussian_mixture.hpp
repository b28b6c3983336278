#ifndef DNS_MODELS_GAUSSIAN_MIXTURE_HPP
#define DNS_MODELS_GAUSSIAN_MIXTURE_HPP

#include <memory>
#include <ostream>
#include <span>
#include <string>

#include "dns/dataset.hpp"
#include "dns/rjobject.hpp"
#include "dns/rng.hpp"

namespace dns::models {

/// Laplace conditional priors for mixture components (mu, ln sigma, ln W):
///   mu ~ Laplace(a_mu, b_mu), ln sigma ~ Laplace(a_lnsigma, b_lnsigma),
///   ln W ~ Laplace(0, b_lnW)
/// with hyperpriors a_mu ~ U(-1000, 1000), ln b_mu ~ U(-10, 10),
/// a_lnsigma ~ U(-10, 10), b_lnsigma ~ U(0, 5), b_lnW ~ U(0, 5).
class MixtureConditionalPrior {
 public:
  void from_prior(Rng& rng);
  double perturb_hyperparameters(Rng& rng);
  void from_uniform(std::span<double> x) const;
  void to_uniform(std::span<double> x) const;
  double log_pdf(std::span<const double> x) const;
  void print(std::ostream& out) const;
  int num_hyperparameters() const { return 5; }

  double location_mu = 0.0;
  double log_scale_mu = 0.0;
  double location_log_sigma = 0.0;
  double scale_log_sigma = 1.0;
  double scale_log_weight = 1.0;
};

using MixtureComponents = RJObject<MixtureConditionalPrior>;

/// Sum over data of ln sum_j w_j Normal(D_i | mu_j, sigma_j^2), with
/// w_j = W_j / sum W. Requires at least one component.
double mixture_log_likelihood(const MixtureComponents& components, std::span<const double> data);

/// 1-D Gaussian mixture with an unknown number of components,
/// p(N) proportional to 1/(N + 1) on {1, ..., max}. Data: one column.
class GaussianMixture {
 public:
  using Params = MixtureComponents;

  explicit GaussianMixture(std::shared_ptr<const Dataset> data, int max_num_components = 100);

  Params from_prior(Rng& rng) const;
  double perturb(Params& params, Rng& rng) const;
  double log_likelihood(const Params& params) const;
  void print(std::ostream& out, const Params& params) const { params.print(out); }
  std::string description() const;

  int max_num_components() const { return max_num_components_; }

 private:
  std::shared_ptr<const Dataset> data_;
  int max_num_components_;
};

}  // namespace dns::models

#endif  // DNS_MODELS_GAUSSIAN_MIXTURE_HPP
