#include "dns/laplace.hpp"

#include <cmath>
#include <stdexcept>

namespace dns {

Laplace::Laplace(double location, double scale) : location_(location), scale_(scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("Laplace: scale must be positive");
}

double Laplace::log_pdf(double x) const {
  return -std::log(2.0 * scale_) - std::abs(x - location_) / scale_;
}

double Laplace::cdf(double x) const {
  const double z = (x - location_) / scale_;
  if (z < 0.0) return 0.5 * std::exp(z);
  return 1.0 - 0.5 * std::exp(-z);
}

double Laplace::cdf_inverse(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("Laplace: cdf_inverse needs 0 < u < 1");
  if (u < 0.5) return location_ + scale_ * std::log(2.0 * u);
  return location_ - scale_ * std::log(2.0 * (1.0 - u));
}

double laplace_log_pdf(double x, double location, double scale) {
  return Laplace(location, scale).log_pdf(x);
}

double laplace_cdf(double x, double location, double scale) {
  return Laplace(location, scale).cdf(x);
}

double laplace_cdf_inverse(double u, double location, double scale) {
  return Laplace(location, scale).cdf_inverse(u);
}

}  // namespace dns
