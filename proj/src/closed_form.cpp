#include "persuasion/closed_form.hpp"

#include <cmath>
#include <stdexcept>

namespace persuasion {

LogPowerSum::LogPowerSum(std::initializer_list<LogPowerTerm> terms) {
  for (const auto& t : terms) add_term(t);
}

LogPowerSum LogPowerSum::constant(double c) { return monomial(c, 0, 0); }

LogPowerSum LogPowerSum::monomial(double c, int power, int log_power) {
  LogPowerSum s;
  s.add_term({c, power, log_power});
  return s;
}

void LogPowerSum::add_term(LogPowerTerm t) {
  if (t.log_power < 0) throw std::invalid_argument("negative log power");
  if (t.coeff == 0.0) return;
  for (auto& existing : terms_) {
    if (existing.power == t.power && existing.log_power == t.log_power) {
      existing.coeff += t.coeff;
      return;
    }
  }
  terms_.push_back(t);
}

double LogPowerSum::operator()(double z) const {
  const double w = 1.0 - z;
  double total = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    if (t.power != 0) v *= std::pow(w, t.power);
    if (t.log_power != 0) v *= std::pow(std::log(w), t.log_power);
    total += v;
  }
  return total;
}

LogPowerSum& LogPowerSum::operator+=(const LogPowerSum& other) {
  for (const auto& t : other.terms_) add_term(t);
  return *this;
}

LogPowerSum& LogPowerSum::operator*=(double c) {
  if (c == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

LogPowerSum operator*(const LogPowerSum& a, const LogPowerSum& b) {
  LogPowerSum out;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      out.add_term({x.coeff * y.coeff, x.power + y.power,
                    x.log_power + y.log_power});
    }
  }
  return out;
}

namespace {

// Antiderivative in w of w^p (ln w)^q, accumulated into out with factor c.
void antiderivative_in_w(double c, int p, int q, LogPowerSum& out) {
  if (p == -1) {
    // d/dw (ln w)^{q+1}/(q+1) = (ln w)^q / w
    out += LogPowerSum::monomial(c / (q + 1), 0, q + 1);
    return;
  }
  // Integration by parts:
  // int w^p (ln w)^q = w^{p+1}(ln w)^q/(p+1) - q/(p+1) int w^p (ln w)^{q-1}
  const double k = static_cast<double>(p + 1);
  out += LogPowerSum::monomial(c / k, p + 1, q);
  if (q > 0) antiderivative_in_w(-c * q / k, p, q - 1, out);
}

}  // namespace

LogPowerSum LogPowerSum::antiderivative() const {
  // dz = -dw
  LogPowerSum out;
  for (const auto& t : terms_) {
    antiderivative_in_w(-t.coeff, t.power, t.log_power, out);
  }
  return out;
}

double LogPowerSum::integrate(double a, double b) const {
  if (a == b || terms_.empty()) return 0.0;
  auto f = antiderivative();
  return f(b) - f(a);
}

}  // namespace persuasion
