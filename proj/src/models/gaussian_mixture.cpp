#include "dns/models/gaussian_mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dns/laplace.hpp"

namespace dns::models {

namespace {

double positive_uniform(Rng& rng, double width) {
  double v = width * rng.rand();
  while (v == 0.0) v = width * rng.rand();
  return v;
}

}  // namespace

void MixtureConditionalPrior::from_prior(Rng& rng) {
  location_mu = -1000.0 + 2000.0 * rng.rand();
  log_scale_mu = -10.0 + 20.0 * rng.rand();
  location_log_sigma = -10.0 + 20.0 * rng.rand();
  scale_log_sigma = positive_uniform(rng, 5.0);
  scale_log_weight = positive_uniform(rng, 5.0);
}

double MixtureConditionalPrior::perturb_hyperparameters(Rng& rng) {
  switch (rng.rand_int(5)) {
    case 0:
      location_mu = wrap(location_mu + 2000.0 * rng.randh(), -1000.0, 1000.0);
      break;
    case 1:
      log_scale_mu = wrap(log_scale_mu + 20.0 * rng.randh(), -10.0, 10.0);
      break;
    case 2:
      location_log_sigma = wrap(location_log_sigma + 20.0 * rng.randh(), -10.0, 10.0);
      break;
    case 3:
      scale_log_sigma = wrap(scale_log_sigma + 5.0 * rng.randh(), 0.0, 5.0);
      if (scale_log_sigma == 0.0) return -std::numeric_limits<double>::infinity();
      break;
    default:
      scale_log_weight = wrap(scale_log_weight + 5.0 * rng.randh(), 0.0, 5.0);
      if (scale_log_weight == 0.0) return -std::numeric_limits<double>::infinity();
      break;
  }
  return 0.0;
}

void MixtureConditionalPrior::from_uniform(std::span<double> x) const {
  x[0] = laplace_cdf_inverse(x[0], location_mu, std::exp(log_scale_mu));
  x[1] = laplace_cdf_inverse(x[1], location_log_sigma, scale_log_sigma);
  x[2] = laplace_cdf_inverse(x[2], 0.0, scale_log_weight);
}

void MixtureConditionalPrior::to_uniform(std::span<double> x) const {
  x[0] = laplace_cdf(x[0], location_mu, std::exp(log_scale_mu));
  x[1] = laplace_cdf(x[1], location_log_sigma, scale_log_sigma);
  x[2] = laplace_cdf(x[2], 0.0, scale_log_weight);
}

double MixtureConditionalPrior::log_pdf(std::span<const double> x) const {
  return laplace_log_pdf(x[0], location_mu, std::exp(log_scale_mu)) +
         laplace_log_pdf(x[1], location_log_sigma, scale_log_sigma) +
         laplace_log_pdf(x[2], 0.0, scale_log_weight);
}

void MixtureConditionalPrior::print(std::ostream& out) const {
  out << location_mu << ' ' << log_scale_mu << ' ' << location_log_sigma << ' '
      << scale_log_sigma << ' ' << scale_log_weight;
}

double mixture_log_likelihood(const MixtureComponents& components,
                              std::span<const double> data) {
  const int n = components.num_components();
  if (n == 0) throw std::invalid_argument("mixture_log_likelihood: no components");

  // Per-component constant and precision, with weights normalised in log space.
  std::vector<double> log_coef(static_cast<std::size_t>(n));
  std::vector<double> mean(static_cast<std::size_t>(n));
  std::vector<double> half_precision(static_cast<std::size_t>(n));
  double max_log_w = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) max_log_w = std::max(max_log_w, components.component(j)[2]);
  double weight_sum = 0.0;
  for (int j = 0; j < n; ++j) weight_sum += std::exp(components.component(j)[2] - max_log_w);
  const double log_weight_norm = max_log_w + std::log(weight_sum);

  for (int j = 0; j < n; ++j) {
    const auto c = components.component(j);
    const double log_sigma = c[1];
    mean[j] = c[0];
    half_precision[j] = 0.5 * std::exp(-2.0 * log_sigma);
    log_coef[j] = (c[2] - log_weight_norm) - log_sigma - 0.5 * std::log(2.0 * std::numbers::pi);
  }

  std::vector<double> terms(static_cast<std::size_t>(n));
  double total = 0.0;
  for (double d : data) {
    double peak = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      const double r = d - mean[j];
      terms[j] = log_coef[j] - half_precision[j] * r * r;
      peak = std::max(peak, terms[j]);
    }
    if (peak == -std::numeric_limits<double>::infinity()) return peak;
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += std::exp(terms[j] - peak);
    total += peak + std::log(sum);
  }
  return total;
}

GaussianMixture::GaussianMixture(std::shared_ptr<const Dataset> data, int max_num_components)
    : data_(std::move(data)), max_num_components_(max_num_components) {
  if (!data_ || data_->num_columns() != 1 || data_->num_rows() == 0)
    throw std::invalid_argument("GaussianMixture needs a non-empty one-column dataset");
}

GaussianMixture::Params GaussianMixture::from_prior(Rng& rng) const {
  Params components(3, max_num_components_, false, MixtureConditionalPrior{},
                    PriorType::log_uniform);
  do {
    components.from_prior(rng);
  } while (components.num_components() == 0);
  return components;
}

double GaussianMixture::perturb(Params& components, Rng& rng) const {
  const double log_h = components.perturb(rng);
  if (components.num_components() == 0) return -std::numeric_limits<double>::infinity();
  return log_h;
}

double GaussianMixture::log_likelihood(const Params& components) const {
  return mixture_log_likelihood(components, data_->column(0));
}

std::string GaussianMixture::description() const {
  std::string names =
      "num_dimensions, max_num_components, location_mu, log_scale_mu, location_log_sigma, "
      "scale_log_sigma, scale_log_weight, num_components";
  for (const char* field : {"mu", "log_sigma", "log_weight"})
    for (int i = 0; i < max_num_components_; ++i)
      names += ", " + std::string(field) + "[" + std::to_string(i) + "]";
  return names;
}

}  // namespace dns::models
