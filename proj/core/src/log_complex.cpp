#include "korops/log_complex.hpp"

#include <numbers>

#include "korops/error.hpp"

namespace korops {

LogComplex LogComplex::from(Complex w) noexcept {
  if (w == Complex(0.0, 0.0)) return zero();
  return {std::log(std::abs(w)), std::arg(w)};
}

double LogComplex::principal_arg() const noexcept {
  return std::remainder(arg, 2.0 * std::numbers::pi);
}

Complex LogComplex::to_complex() const noexcept {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_abs), arg);
}

LogComplex operator*(LogComplex a, LogComplex b) noexcept {
  if (a.is_zero() || b.is_zero()) return LogComplex::zero();
  return {a.log_abs + b.log_abs, a.arg + b.arg};
}

LogComplex operator/(LogComplex a, LogComplex b) noexcept {
  if (a.is_zero()) return LogComplex::zero();
  return {a.log_abs - b.log_abs, a.arg - b.arg};
}

LogComplex operator-(LogComplex a) noexcept {
  if (a.is_zero()) return a;
  return {a.log_abs, a.arg + std::numbers::pi};
}

LogComplex operator+(LogComplex a, LogComplex b) noexcept {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (b.log_abs > a.log_abs) std::swap(a, b);
  // a + b = a * (1 + (b/a)), |b/a| <= 1.
  const Complex ratio = std::polar(std::exp(b.log_abs - a.log_abs), b.arg - a.arg);
  const Complex factor = Complex(1.0, 0.0) + ratio;
  if (factor == Complex(0.0, 0.0)) return LogComplex::zero();
  return {a.log_abs + std::log(std::abs(factor)), a.principal_arg() + std::arg(factor)};
}

LogComplex operator-(LogComplex a, LogComplex b) noexcept { return a + (-b); }

Complex principal_power(Complex w, double s) {
  if (w.imag() == 0.0 && !(w.real() > 0.0)) throw BranchCutError(w.real(), w.imag());
  return std::exp(s * Complex(std::log(std::abs(w)), std::arg(w)));
}

LogComplex principal_power(LogComplex w, double s) {
  if (w.is_zero()) throw BranchCutError(0.0, 0.0);
  const double theta = w.principal_arg();
  if (std::abs(theta) >= std::numbers::pi) {
    const Complex v = w.to_complex();
    throw BranchCutError(v.real(), 0.0);
  }
  return {s * w.log_abs, s * theta};
}

double log_add_exp(double a, double b) noexcept {
  constexpr double ninf = -std::numeric_limits<double>::infinity();
  if (a == ninf) return b;
  if (b == ninf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double abs_expm1(Complex w) noexcept {
  const double x = w.real();
  const double y = w.imag();
  const double half = std::sin(0.5 * y);
  // exp(x + iy) - 1 = expm1(x) cos y - 2 sin^2(y/2) + i exp(x) sin y
  const double re = std::expm1(x) * std::cos(y) - 2.0 * half * half;
  const double im = std::exp(x) * std::sin(y);
  return std::hypot(re, im);
}

}  // namespace korops
