#include "dns/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace dns {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double Rng::rand() {
  return static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
}

double Rng::randn() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * rand() - 1.0;
    v = 2.0 * rand() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

double Rng::student_t2() {
  const double a = randn();
  double b = rand();
  while (b == 0.0) b = rand();
  return a / std::sqrt(-std::log(b));
}

double Rng::randh() {
  const double t = student_t2();
  const double n = randn();
  return std::pow(10.0, 1.5 - 3.0 * std::abs(t)) * n;
}

int Rng::rand_int(int n) {
  if (n <= 0) throw std::invalid_argument("rand_int: n must be positive");
  // Lemire's multiply-shift with rejection, unbiased for any n.
  const auto range = static_cast<std::uint64_t>(n);
  unsigned __int128 m = static_cast<unsigned __int128>(next_bits()) * range;
  auto low = static_cast<std::uint64_t>(m);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next_bits()) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<int>(m >> 64);
}

double wrap(double x, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("wrap: requires lo < hi");
  const double width = hi - lo;
  double r = std::fmod(x - lo, width);
  if (r < 0.0) r += width;
  // fmod of a tiny negative number can round up to exactly width.
  if (r >= width) r = 0.0;
  const double y = lo + r;
  return y < hi ? y : lo;
}

}  // namespace dns
