#pragma once

// Exact integration for the function family that appears in the threshold
// games: finite sums c * w^p * (ln w)^q with w = 1 - z, integer p, q >= 0.
// Densities, CDFs and payoff kernels of the mixed threshold strategies all
// stay inside this family, so expectations reduce to antiderivative
// evaluations with no quadrature.

#include <vector>

namespace persuasion {

struct LogPowerTerm {
  double coeff;
  int power;      // exponent of w
  int log_power;  // exponent of ln w
};

class LogPowerSum {
 public:
  LogPowerSum() = default;
  LogPowerSum(std::initializer_list<LogPowerTerm> terms);

  static LogPowerSum constant(double c);
  /// c * w^p
  static LogPowerSum monomial(double c, int power, int log_power = 0);

  const std::vector<LogPowerTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Value at z (requires z < 1 whenever a term has p < 0 or q > 0).
  double operator()(double z) const;

  LogPowerSum& operator+=(const LogPowerSum& other);
  LogPowerSum& operator*=(double c);
  friend LogPowerSum operator+(LogPowerSum a, const LogPowerSum& b) {
    return a += b;
  }
  friend LogPowerSum operator*(LogPowerSum a, double c) { return a *= c; }
  friend LogPowerSum operator*(const LogPowerSum& a, const LogPowerSum& b);

  /// An antiderivative with respect to z.
  LogPowerSum antiderivative() const;
  /// Integral over [a, b] in z.
  double integrate(double a, double b) const;

 private:
  void add_term(LogPowerTerm t);
  std::vector<LogPowerTerm> terms_;
};

}  // namespace persuasion
