#include "korops/lemmas.hpp"

#include <algorithm>
#include <cmath>

#include "korops/error.hpp"

namespace korops {

namespace {

// Log(1 + u) without cancellation for small u.
Complex log1p_complex(Complex u) {
  const double re = 0.5 * std::log1p(2.0 * u.real() + std::norm(u));
  return {re, std::atan2(u.imag(), 1.0 + u.real())};
}

void check_dims(std::size_t n, const TubePoint& z, const TubePoint& w) {
  if (z.dim() != n) throw DimensionMismatch(n, z.dim());
  if (w.dim() != n) throw DimensionMismatch(n, w.dim());
}

double positive_rho(const TubePoint& z, const TubePoint& w) {
  const double r = rho(z, w);
  if (!(r > 0.0)) throw UndefinedRatio("ratio undefined at rho(z,w) = 0");
  return r;
}

// log|A - B|
double log_abs_diff(LogComplex a, LogComplex b) {
  if (a.is_zero()) return b.log_abs;
  if (b.is_zero()) return a.log_abs;
  if (b.log_abs > a.log_abs) std::swap(a, b);
  const Complex w(b.log_abs - a.log_abs, b.arg - a.arg);
  const double m = abs_expm1(w);
  if (m == 0.0) return -std::numeric_limits<double>::infinity();
  return a.log_abs + std::log(m);
}

LogComplex weighted(const AnalyticFn& f, const Weight& gamma, const TubePoint& z) {
  return f.evaluate_log(z) * LogComplex::from_real_log(log_weight(gamma, z));
}

double log_product_ratio(const Weight& gamma, const TubePoint& z, const TubePoint& image) {
  double acc = 0.0;
  for (std::size_t k = 0; k < z.dim(); ++k) {
    acc += gamma[k] * (std::log(z.im(k)) - std::log(image.im(k)));
  }
  return acc;
}

}  // namespace

double lemma31_ratio(const TubePoint& a, const TubePoint& z, const TubePoint& w, const Weight& s) {
  check_dims(s.dim(), z, w);
  if (a.dim() != s.dim()) throw DimensionMismatch(s.dim(), a.dim());
  const double r = positive_rho(z, w);
  Complex total(0.0, 0.0);
  for (std::size_t k = 0; k < s.dim(); ++k) {
    const Complex u = (z[k] - w[k]) / (w[k] - std::conj(a[k]));
    total += s[k] * log1p_complex(u);
  }
  return abs_expm1(total) / r;
}

double lemma32_ratio(const TubePoint& z, const TubePoint& w, const Weight& s) {
  check_dims(s.dim(), z, w);
  const double r = positive_rho(z, w);
  double total = 0.0;
  for (std::size_t k = 0; k < s.dim(); ++k) {
    total += s[k] * std::log1p((z.im(k) - w.im(k)) / w.im(k));
  }
  return std::abs(std::expm1(total)) / r;
}

double lemma34_ratio(const AnalyticFn& f, const Weight& gamma, const RegionSpec& region,
                     const TubePoint& z, const TubePoint& w, double sup_value) {
  check_dims(gamma.dim(), z, w);
  if (f.dim() != gamma.dim()) throw DimensionMismatch(gamma.dim(), f.dim());
  if (!region.contains(z) || !region.contains(w)) {
    throw DomainError("lemma34_ratio: z and w must lie in the region");
  }
  if (!(sup_value > 0.0) || !std::isfinite(sup_value)) {
    throw UndefinedRatio("ratio undefined: regional supremum is not a positive finite number");
  }
  if (z == w) return 0.0;
  const double r = positive_rho(z, w);
  const double log_num = log_abs_diff(weighted(f, gamma, z), weighted(f, gamma, w));
  return std::exp(log_num - std::log(sup_value) - std::log(r));
}

double lemma34_ratio(const AnalyticFn& f, const Weight& gamma, const RegionSpec& region,
                     const TubePoint& z, const TubePoint& w, const SearchBudget& budget) {
  const TubePoint starts[] = {z, w};
  const auto s = sup_estimate(f, gamma, region, budget, starts);
  return lemma34_ratio(f, gamma, region, z, w, s.value);
}

SplitSups estimate_split_sups(const AnalyticFn& f, const Weight& gamma, const RegionSpec& omega1,
                              const RegionSpec& omega2, const SearchBudget& budget,
                              std::span<const TubePoint> inject1,
                              std::span<const TubePoint> inject2) {
  SplitSups out;
  out.omega1 = sup_estimate(f, gamma, omega1, budget, inject1).value;
  out.omega2 = sup_estimate(f, gamma, omega2, budget, inject2).value;
  out.omega_union = std::max(out.omega1, out.omega2);
  return out;
}

GapTerms lemma35_gap(const AnalyticFn& f, const Weight& gamma, const TubePoint& phi_z,
                     const TubePoint& psi_z, const TubePoint& z, double h1,
                     const RegionSpec& omega1, const RegionSpec& omega2, const SplitSups& sups) {
  check_dims(gamma.dim(), phi_z, psi_z);
  if (z.dim() != gamma.dim()) throw DimensionMismatch(gamma.dim(), z.dim());
  if (f.dim() != gamma.dim()) throw DimensionMismatch(gamma.dim(), f.dim());
  if (!(h1 >= 0.0 && h1 <= 1.0)) throw DomainError("h1 must lie in [0, 1]");
  if (!omega1.contains(phi_z)) throw DomainError("phi(z) must lie in omega1");
  if (!omega2.contains(psi_z)) throw DomainError("psi(z) must lie in omega2");
  for (double s : {sups.omega1, sups.omega2, sups.omega_union}) {
    if (!(s >= 0.0)) throw DomainError("regional suprema must be >= 0");
  }
  const double h2 = 1.0 - h1;

  GapTerms out;
  const double log_lhs =
      log_abs_diff(f.evaluate_log(phi_z), f.evaluate_log(psi_z)) + log_weight(gamma, z);
  out.lhs = std::exp(log_lhs);

  const double r = rho(phi_z, psi_z);
  const double p_phi = std::exp(log_product_ratio(gamma, z, phi_z));
  const double p_psi = std::exp(log_product_ratio(gamma, z, psi_z));
  out.rhs = (h1 * sups.omega1 + h2 * sups.omega2) * r * (p_phi + p_psi) +
            sups.omega_union * r * (h2 * p_phi + h1 * p_psi);
  return out;
}

GapTerms lemma35_gap(const AnalyticFn& f, const Weight& gamma, const TubePoint& phi_z,
                     const TubePoint& psi_z, const TubePoint& z, double h1,
                     const RegionSpec& omega1, const RegionSpec& omega2,
                     const SearchBudget& budget) {
  const TubePoint s1[] = {phi_z};
  const TubePoint s2[] = {psi_z};
  const auto sups = estimate_split_sups(f, gamma, omega1, omega2, budget, s1, s2);
  return lemma35_gap(f, gamma, phi_z, psi_z, z, h1, omega1, omega2, sups);
}

}  // namespace korops
