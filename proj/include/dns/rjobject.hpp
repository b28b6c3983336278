#ifndef DNS_RJOBJECT_HPP
#define DNS_RJOBJECT_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dns/rng.hpp"

namespace dns {

/// Prior for the number of components N in {0, ..., max}.
enum class PriorType {
  uniform,      // p(N) = 1 / (max + 1)
  log_uniform,  // p(N) proportional to 1 / (N + 1)
};

/// ln p(N). Throws std::out_of_range unless 0 <= n <= max_num_components.
double n_prior_log_mass(int n, PriorType prior_type, int max_num_components);

/// Draws N from n_prior_log_mass's distribution.
int draw_num_components(PriorType prior_type, int max_num_components, Rng& rng);

/// Hyperparameters alpha plus the iid conditional prior p(x | alpha) of one
/// component. from_uniform maps iid U(0,1) coordinates to a draw from
/// p(x | alpha) in place and to_uniform is its exact inverse.
template <typename C>
concept ConditionalPrior = requires(C& prior, const C& cprior, Rng& rng, std::span<double> x,
                                    std::span<const double> cx, std::ostream& out) {
  prior.from_prior(rng);
  { prior.perturb_hyperparameters(rng) } -> std::convertible_to<double>;
  cprior.from_uniform(x);
  cprior.to_uniform(x);
  { cprior.log_pdf(cx) } -> std::convertible_to<double>;
  cprior.print(out);
  { cprior.num_hyperparameters() } -> std::convertible_to<int>;
};

/// An unknown number N of exchangeable components, each a point in R^d,
/// with prior p(N) p(alpha) prod_i p(x_i | alpha). Provides its own
/// Metropolis proposals: birth/death of components, hyperparameter moves
/// that carry the components along in uniform space, and single-coordinate
/// moves in uniform space.
template <ConditionalPrior Prior>
class RJObject {
 public:
  enum class Move { birth_death, hyperparameters, component };

  RJObject(int num_dimensions, int max_num_components, bool fixed, Prior conditional_prior,
           PriorType prior_type = PriorType::uniform)
      : num_dimensions_(num_dimensions),
        max_num_components_(max_num_components),
        fixed_(fixed),
        prior_type_(prior_type),
        prior_(std::move(conditional_prior)) {
    if (num_dimensions < 1) throw std::invalid_argument("RJObject: num_dimensions must be >= 1");
    if (max_num_components < 1)
      throw std::invalid_argument("RJObject: max_num_components must be >= 1");
    components_.reserve(static_cast<std::size_t>(num_dimensions) * max_num_components);
  }

  void from_prior(Rng& rng) {
    prior_.from_prior(rng);
    const int n = fixed_ ? max_num_components_
                         : draw_num_components(prior_type_, max_num_components_, rng);
    components_.clear();
    for (int i = 0; i < n; ++i) append_from_prior(rng);
  }

  /// Picks one move type uniformly (birth/death is skipped when N is fixed)
  /// and returns ln H for it.
  double perturb(Rng& rng) {
    if (fixed_) {
      return rng.rand_int(2) == 0 ? perturb(Move::hyperparameters, rng)
                                  : perturb(Move::component, rng);
    }
    return perturb(static_cast<Move>(rng.rand_int(3)), rng);
  }

  double perturb(Move move, Rng& rng) {
    switch (move) {
      case Move::birth_death:
        return perturb_birth_death(rng);
      case Move::hyperparameters:
        return perturb_hyperparameters(rng);
      case Move::component:
        return perturb_component(rng);
    }
    return 0.0;
  }

  /// Adds or removes k >= 1 components; k is log-uniform on [1, max].
  /// New components come from the conditional prior, so ln H reduces to the
  /// ratio of p(N). Proposals outside [0, max] return -infinity.
  double perturb_birth_death(Rng& rng) {
    if (fixed_) return 0.0;
    const int k = std::max(
        1, static_cast<int>(std::pow(static_cast<double>(max_num_components_), rng.rand())));
    const int n = num_components();
    const int target = rng.rand() < 0.5 ? n + k : n - k;
    if (target < 0 || target > max_num_components_)
      return -std::numeric_limits<double>::infinity();

    const double log_h = n_prior_log_mass(target, prior_type_, max_num_components_) -
                         n_prior_log_mass(n, prior_type_, max_num_components_);
    if (target > n) {
      for (int i = n; i < target; ++i) append_from_prior(rng);
    } else {
      for (int remaining = n; remaining > target; --remaining) {
        const int victim = rng.rand_int(remaining);
        const int last = remaining - 1;
        std::swap_ranges(slot(victim).begin(), slot(victim).end(), slot(last).begin());
        components_.resize(static_cast<std::size_t>(last) * num_dimensions_);
      }
    }
    return log_h;
  }

  /// Moves alpha and transports every component through uniform space, so
  /// ln H is the hyperprior ratio returned by the conditional prior.
  double perturb_hyperparameters(Rng& rng) {
    std::vector<double> uniform = components_;
    for (int i = 0; i < num_components(); ++i)
      prior_.to_uniform(std::span<double>(uniform).subspan(offset(i), num_dimensions_));
    if (!all_strictly_inside_unit(uniform)) return -std::numeric_limits<double>::infinity();

    const double log_h = prior_.perturb_hyperparameters(rng);
    if (log_h == -std::numeric_limits<double>::infinity()) return log_h;
    for (int i = 0; i < num_components(); ++i)
      prior_.from_uniform(std::span<double>(uniform).subspan(offset(i), num_dimensions_));
    if (!std::ranges::all_of(uniform, [](double v) { return std::isfinite(v); }))
      return -std::numeric_limits<double>::infinity();
    components_.swap(uniform);
    return log_h;
  }

  /// Moves one coordinate of one component by a heavy-tailed step in
  /// uniform space (with wraparound). The conditional prior must factorize
  /// across coordinates. ln H = 0.
  double perturb_component(Rng& rng) {
    const int n = num_components();
    if (n == 0) return 0.0;
    const int i = rng.rand_int(n);
    const int k = rng.rand_int(num_dimensions_);

    std::vector<double> work(slot(i).begin(), slot(i).end());
    prior_.to_uniform(work);
    const double u = wrap(work[static_cast<std::size_t>(k)] + rng.randh(), 0.0, 1.0);
    if (!(u > 0.0)) return -std::numeric_limits<double>::infinity();
    std::ranges::fill(work, 0.5);
    work[static_cast<std::size_t>(k)] = u;
    prior_.from_uniform(work);
    if (!std::isfinite(work[static_cast<std::size_t>(k)]))
      return -std::numeric_limits<double>::infinity();
    slot(i)[static_cast<std::size_t>(k)] = work[static_cast<std::size_t>(k)];
    return 0.0;
  }

  /// d, max, the hyperparameters, N, then coordinate 0 of every slot,
  /// coordinate 1 of every slot, and so on, with zeros in empty slots.
  void print(std::ostream& out) const {
    out << num_dimensions_ << ' ' << max_num_components_ << ' ';
    prior_.print(out);
    out << ' ' << num_components();
    for (int k = 0; k < num_dimensions_; ++k) {
      for (int i = 0; i < max_num_components_; ++i) {
        out << ' ';
        if (i < num_components())
          out << components_[offset(i) + static_cast<std::size_t>(k)];
        else
          out << 0;
      }
    }
  }

  int print_field_count() const {
    return 3 + prior_.num_hyperparameters() + num_dimensions_ * max_num_components_;
  }

  int num_components() const {
    return static_cast<int>(components_.size()) / num_dimensions_;
  }
  int num_dimensions() const { return num_dimensions_; }
  int max_num_components() const { return max_num_components_; }
  bool fixed() const { return fixed_; }
  PriorType prior_type() const { return prior_type_; }

  std::span<const double> component(int i) const {
    return std::span<const double>(components_).subspan(offset(i), num_dimensions_);
  }
  /// All components, row-major (component index major).
  std::span<const double> components() const { return components_; }

  const Prior& conditional_prior() const { return prior_; }
  Prior& conditional_prior() { return prior_; }

  /// Replaces the components; `flat` holds N * d values.
  void set_components(std::vector<double> flat) {
    if (flat.size() % static_cast<std::size_t>(num_dimensions_) != 0 ||
        flat.size() / num_dimensions_ > static_cast<std::size_t>(max_num_components_))
      throw std::invalid_argument("RJObject: bad component array");
    components_ = std::move(flat);
  }

 private:
  std::size_t offset(int i) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(num_dimensions_);
  }

  std::span<double> slot(int i) {
    return std::span<double>(components_).subspan(offset(i), num_dimensions_);
  }

  void append_from_prior(Rng& rng) {
    const std::size_t start = components_.size();
    for (int k = 0; k < num_dimensions_; ++k) {
      double u = rng.rand();
      while (u == 0.0) u = rng.rand();
      components_.push_back(u);
    }
    prior_.from_uniform(std::span<double>(components_).subspan(start, num_dimensions_));
  }

  static bool all_strictly_inside_unit(std::span<const double> values) {
    return std::ranges::all_of(values, [](double v) { return v > 0.0 && v < 1.0; });
  }

  int num_dimensions_;
  int max_num_components_;
  bool fixed_;
  PriorType prior_type_;
  Prior prior_;
  std::vector<double> components_;
};

}  // namespace dns

#endif  // DNS_RJOBJECT_HPP
