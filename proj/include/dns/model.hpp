#ifndef DNS_MODEL_HPP
#define DNS_MODEL_HPP

#include <compare>
#include <concepts>
#include <ostream>
#include <string>

#include "dns/rng.hpp"

namespace dns {

/// A log-likelihood paired with a tiebreaker in [0, 1). Ordering is
/// lexicographic, which gives a strict order even on likelihood plateaus.
struct LikelihoodValue {
  double log_l = 0.0;
  double tiebreaker = 0.0;

  friend constexpr bool operator==(const LikelihoodValue&, const LikelihoodValue&) = default;

  friend constexpr std::partial_ordering operator<=>(const LikelihoodValue& a,
                                                     const LikelihoodValue& b) {
    if (auto c = a.log_l <=> b.log_l; c != 0) return c;
    return a.tiebreaker <=> b.tiebreaker;
  }
};

/// Contract for user models. A model object describes the problem (priors,
/// data, proposals) and is shared read-only between threads; points in
/// parameter space are separate `Params` values.
///
///  - from_prior: an exact independent draw from the prior.
///  - perturb: modifies a copy of the current point in place and returns
///    ln H, the log of the proposal ratio times the prior ratio. Returning
///    -infinity forces rejection. The sampler discards the copy on rejection.
///  - log_likelihood: finite, or -infinity for zero likelihood. NaN is a bug
///    and aborts the run.
///  - print: space separated fields, same count on every call.
///  - description: comma separated names of the printed fields.
template <typename M>
concept Model = requires(const M& model, typename M::Params& params,
                         const typename M::Params& cparams, Rng& rng, std::ostream& out) {
  typename M::Params;
  requires std::copyable<typename M::Params>;
  { model.from_prior(rng) } -> std::same_as<typename M::Params>;
  { model.perturb(params, rng) } -> std::convertible_to<double>;
  { model.log_likelihood(cparams) } -> std::convertible_to<double>;
  { model.print(out, cparams) };
  { model.description() } -> std::convertible_to<std::string>;
};

}  // namespace dns

#endif  // DNS_MODEL_HPP
