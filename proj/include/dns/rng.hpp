#ifndef DNS_RNG_HPP
#define DNS_RNG_HPP

#include <cstdint>
#include <random>

namespace dns {

/// Mix a base seed with a stream index (splitmix64 finalizer). Used to give
/// every worker its own reproducible stream from a single run seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Random number source handed to models and the sampler.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The distributions are implemented here rather than taken from
/// <random> so that a seed yields the same doubles on every standard library.
/// One instance per thread; not safe to share.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  /// Uniform on [0, 1) with 53 bits of resolution.
  double rand();

  /// Standard normal (Marsaglia polar method).
  double randn();

  /// Student-t with 2 degrees of freedom, a / sqrt(-ln b).
  double student_t2();

  /// Heavy-tailed step 10^(1.5 - 3|t|) * n with t ~ t_2 and n ~ N(0,1).
  /// Scale it by the prior width of the parameter being moved.
  double randh();

  /// Uniform integer in {0, ..., n-1}. Throws std::invalid_argument if n <= 0.
  int rand_int(int n);

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t next_bits() { return engine_(); }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Periodic boundary: maps x into [lo, hi) by adding a multiple of (hi - lo).
/// Throws std::invalid_argument unless lo < hi.
double wrap(double x, double lo, double hi);

}  // namespace dns

#endif  // DNS_RNG_HPP
