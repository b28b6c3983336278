#include "dns/models/analytic_gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dns::models {

double analytic_gaussian_log_z(int dimensions, double width) {
  if (dimensions < 1 || !(width > 0.0))
    throw std::invalid_argument("analytic_gaussian_log_z: need D >= 1 and s > 0");
  return -0.5 * dimensions * std::log(2.0 * std::numbers::pi * (1.0 + width * width));
}

AnalyticGaussian::AnalyticGaussian(int dimensions, double width)
    : dimensions_(dimensions), width_(width) {
  if (dimensions < 1 || !(width > 0.0))
    throw std::invalid_argument("AnalyticGaussian: need D >= 1 and s > 0");
}

AnalyticGaussian::Params AnalyticGaussian::from_prior(Rng& rng) const {
  Params theta(static_cast<std::size_t>(dimensions_));
  for (double& t : theta) t = rng.randn();
  return theta;
}

double AnalyticGaussian::perturb(Params& theta, Rng& rng) const {
  double& t = theta[static_cast<std::size_t>(rng.rand_int(dimensions_))];
  double log_h = 0.5 * t * t;
  t += rng.randh();
  log_h -= 0.5 * t * t;
  return log_h;
}

double AnalyticGaussian::log_likelihood(const Params& theta) const {
  const double var = width_ * width_;
  double sum_sq = 0.0;
  for (double t : theta) sum_sq += t * t;
  return -0.5 * dimensions_ * std::log(2.0 * std::numbers::pi * var) - 0.5 * sum_sq / var;
}

void AnalyticGaussian::print(std::ostream& out, const Params& theta) const {
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (i) out << ' ';
    out << theta[i];
  }
}

std::string AnalyticGaussian::description() const {
  std::string names;
  for (int i = 0; i < dimensions_; ++i) {
    if (i) names += ", ";
    names += "theta[" + std::to_string(i) + "]";
  }
  return names;
}

}  // namespace dns::models
