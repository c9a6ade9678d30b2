#pragma once

// Complex numbers in log-polar form, for products of powers whose moduli
// leave the double range long before their logarithms do.

#include <cmath>
#include <limits>

#include "korops/halfplane.hpp"

namespace korops {

/// value = exp(log_abs + i*arg). Zero has log_abs = -inf. `arg` is not kept
/// reduced; use principal_arg() when the branch matters.
struct LogComplex {
  double log_abs = -std::numeric_limits<double>::infinity();
  double arg = 0.0;

  static LogComplex zero() noexcept { return {}; }
  static LogComplex one() noexcept { return {0.0, 0.0}; }
  static LogComplex from(Complex w) noexcept;
  static LogComplex from_real_log(double log_abs) noexcept { return {log_abs, 0.0}; }

  bool is_zero() const noexcept { return log_abs == -std::numeric_limits<double>::infinity(); }
  /// arg reduced to [-pi, pi].
  double principal_arg() const noexcept;
  Complex to_complex() const noexcept;
  double abs() const noexcept { return std::exp(log_abs); }
};

LogComplex operator*(LogComplex a, LogComplex b) noexcept;
LogComplex operator/(LogComplex a, LogComplex b) noexcept;
LogComplex operator-(LogComplex a) noexcept;
LogComplex operator+(LogComplex a, LogComplex b) noexcept;
LogComplex operator-(LogComplex a, LogComplex b) noexcept;

/// Principal power w^s = exp(s (log|w| + i Arg w)), Arg in (-pi, pi).
/// Throws BranchCutError when w lies on the closed negative real axis.
Complex principal_power(Complex w, double s);
LogComplex principal_power(LogComplex w, double s);

/// log(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b) noexcept;

/// |exp(w) - 1| for complex w, accurate for small |w|.
double abs_expm1(Complex w) noexcept;

}  // namespace korops
