#ifndef DNS_LAPLACE_HPP
#define DNS_LAPLACE_HPP

namespace dns {

/// Laplace (double exponential) distribution with location a and scale b,
/// density exp(-|x - a| / b) / (2b). Constructors throw on b <= 0.
class Laplace {
 public:
  Laplace(double location, double scale);

  double log_pdf(double x) const;
  double cdf(double x) const;
  /// Throws std::invalid_argument unless 0 < u < 1.
  double cdf_inverse(double u) const;

  double location() const { return location_; }
  double scale() const { return scale_; }

 private:
  double location_;
  double scale_;
};

double laplace_log_pdf(double x, double location, double scale);
double laplace_cdf(double x, double location, double scale);
double laplace_cdf_inverse(double u, double location, double scale);

}  // namespace dns

#endif  // DNS_LAPLACE_HPP
