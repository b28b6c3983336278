#include "dns/models/straight_line.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dns::models {

StraightLine::StraightLine(std::shared_ptr<const Dataset> data) : data_(std::move(data)) {
  if (!data_ || data_->num_columns() != 2)
    throw std::invalid_argument("StraightLine needs a two-column (x y) dataset");
}

StraightLine::Params StraightLine::from_prior(Rng& rng) const {
  Params p;
  p.m = 1e3 * rng.randn();
  p.b = 1e3 * rng.randn();
  p.sigma = std::exp(-10.0 + 20.0 * rng.rand());
  return p;
}

double StraightLine::perturb(Params& p, Rng& rng) const {
  double log_h = 0.0;
  const int which = rng.rand_int(3);
  if (which == 0) {
    log_h -= -0.5 * std::pow(p.m / 1e3, 2);
    p.m += 1e3 * rng.randh();
    log_h += -0.5 * std::pow(p.m / 1e3, 2);
  } else if (which == 1) {
    log_h -= -0.5 * std::pow(p.b / 1e3, 2);
    p.b += 1e3 * rng.randh();
    log_h += -0.5 * std::pow(p.b / 1e3, 2);
  } else {
    // Uniform prior on ln(sigma): step in log space and wrap.
    double log_sigma = std::log(p.sigma);
    log_sigma += 20.0 * rng.randh();
    p.sigma = std::exp(wrap(log_sigma, -10.0, 10.0));
  }
  return log_h;
}

double StraightLine::log_likelihood(const Params& p) const {
  const auto x = data_->column(0);
  const auto y = data_->column(1);
  const double var = p.sigma * p.sigma;
  const double norm = -0.5 * std::log(2.0 * std::numbers::pi * var);
  double log_l = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double r = y[i] - (p.m * x[i] + p.b);
    log_l += norm - 0.5 * r * r / var;
  }
  return log_l;
}

void StraightLine::print(std::ostream& out, const Params& p) const {
  out << p.m << ' ' << p.b << ' ' << p.sigma;
}

Dataset StraightLine::simulate(int n, const Params& truth, Rng& rng) {
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    x[i] = 10.0 * rng.rand();
    y[i] = truth.m * x[i] + truth.b + truth.sigma * rng.randn();
  }
  return Dataset({std::move(x), std::move(y)});
}

}  // namespace dns::models
