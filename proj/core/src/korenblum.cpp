#include "korops/korenblum.hpp"

#include <cmath>
#include <numbers>

#include "korops/error.hpp"
#include "korops/search.hpp"

namespace korops {

Weight::Weight(std::vector<double> exponents) : exponents_(std::move(exponents)) {
  if (exponents_.empty()) throw DomainError("weight needs at least one component");
  for (double g : exponents_) {
    if (!(g > 0.0) || !std::isfinite(g)) {
      throw DomainError("weight components must be finite and > 0, got " + std::to_string(g));
    }
    total_ += g;
  }
}

double log_weight(const Weight& gamma, const TubePoint& z) {
  if (gamma.dim() != z.dim()) throw DimensionMismatch(gamma.dim(), z.dim());
  double acc = 0.0;
  for (std::size_t k = 0; k < z.dim(); ++k) acc += gamma[k] * std::log(z.im(k));
  return acc;
}

double log_weighted_modulus(const AnalyticFn& f, const Weight& gamma, const TubePoint& z) {
  if (f.dim() != gamma.dim()) throw DimensionMismatch(f.dim(), gamma.dim());
  const LogComplex v = f.evaluate_log(z);
  if (v.is_zero()) return -std::numeric_limits<double>::infinity();
  return v.log_abs + log_weight(gamma, z);
}

double weighted_modulus(const AnalyticFn& f, const Weight& gamma, const TubePoint& z) {
  return std::exp(log_weighted_modulus(f, gamma, z));
}

namespace {

// prod_k Pow(z_k - conj(a_k), -2 gamma_k)
AnalyticFn kernel_powers(const TubePoint& a, const Weight& gamma) {
  const std::size_t n = a.dim();
  std::optional<AnalyticFn> acc;
  for (std::size_t k = 0; k < n; ++k) {
    auto base = AnalyticFn::coordinate(n, k) - AnalyticFn::constant(n, std::conj(a[k]));
    auto factor = base.pow(-2.0 * gamma[k]);
    acc = acc ? *acc * factor : factor;
  }
  return *acc;
}

}  // namespace

AnalyticFn make_f_a(const TubePoint& a, const Weight& gamma) {
  if (a.dim() != gamma.dim()) throw DimensionMismatch(a.dim(), gamma.dim());
  // (2i)^{2 gamma_k} (Im a_k)^{gamma_k}, principal power of 2i.
  LogComplex c = LogComplex::one();
  const LogComplex two_i = LogComplex::from(Complex(0.0, 2.0));
  for (std::size_t k = 0; k < a.dim(); ++k) {
    c = c * principal_power(two_i, 2.0 * gamma[k]) *
        LogComplex::from_real_log(gamma[k] * std::log(a.im(k)));
  }
  return AnalyticFn::constant(a.dim(), c) * kernel_powers(a, gamma);
}

AnalyticFn make_g_am(const TubePoint& a, std::size_t m, const Weight& gamma) {
  if (a.dim() != gamma.dim()) throw DimensionMismatch(a.dim(), gamma.dim());
  if (m < 1 || m > a.dim()) {
    throw DomainError("g_{a,m} index m = " + std::to_string(m) + " outside [1, " +
                      std::to_string(a.dim()) + "]");
  }
  const std::size_t n = a.dim();
  double log_c = gamma.total() * std::log(4.0);
  for (std::size_t k = 0; k < n; ++k) log_c += gamma[k] * std::log(a.im(k));
  const auto zm = AnalyticFn::coordinate(n, m - 1);
  const auto blaschke = (zm - AnalyticFn::constant(n, a[m - 1])) /
                        (zm - AnalyticFn::constant(n, std::conj(a[m - 1])));
  return AnalyticFn::constant(n, LogComplex::from_real_log(log_c)) * blaschke *
         kernel_powers(a, gamma);
}

void RegionSpec::check_box(const Box& box) {
  const std::size_t n = box.re_lo.size();
  if (n == 0 || box.re_hi.size() != n || box.im_lo.size() != n || box.im_hi.size() != n) {
    throw DomainError("box bounds must all have the same positive length");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!(box.re_lo[k] <= box.re_hi[k]) || !(box.im_lo[k] <= box.im_hi[k])) {
      throw DomainError("box bounds must be ordered (lo <= hi)");
    }
    if (!(box.im_lo[k] > 0.0) || !std::isfinite(box.im_hi[k]) || !std::isfinite(box.re_lo[k]) ||
        !std::isfinite(box.re_hi[k])) {
      throw DomainError("box needs finite bounds and Im lower bound > 0");
    }
  }
}

RegionSpec RegionSpec::whole(std::size_t n) {
  if (n == 0) throw DomainError("region dimension must be >= 1");
  return RegionSpec(n, Whole{});
}

RegionSpec RegionSpec::box(Box box) {
  check_box(box);
  const std::size_t n = box.re_lo.size();
  return RegionSpec(n, std::move(box));
}

RegionSpec RegionSpec::box(std::size_t n, double re_lo, double re_hi, double im_lo, double im_hi) {
  return box(Box{std::vector<double>(n, re_lo), std::vector<double>(n, re_hi),
                 std::vector<double>(n, im_lo), std::vector<double>(n, im_hi)});
}

RegionSpec RegionSpec::pseudo_polydisc(TubePoint center, PolyRadius delta) {
  if (center.dim() != delta.dim()) throw DimensionMismatch(center.dim(), delta.dim());
  const std::size_t n = center.dim();
  return RegionSpec(n, PseudoPolydisc{std::move(center), std::move(delta)});
}

RegionSpec RegionSpec::complement_of_box(Box box) {
  check_box(box);
  const std::size_t n = box.re_lo.size();
  return RegionSpec(n, ComplementOfBox{std::move(box)});
}

RegionSpec RegionSpec::complement_of_box(std::size_t n, double re_lo, double re_hi, double im_lo,
                                         double im_hi) {
  return complement_of_box(Box{std::vector<double>(n, re_lo), std::vector<double>(n, re_hi),
                               std::vector<double>(n, im_lo), std::vector<double>(n, im_hi)});
}

namespace {

bool in_box(const RegionSpec::Box& box, const TubePoint& z) {
  for (std::size_t k = 0; k < z.dim(); ++k) {
    if (z.re(k) < box.re_lo[k] || z.re(k) > box.re_hi[k]) return false;
    if (z.im(k) < box.im_lo[k] || z.im(k) > box.im_hi[k]) return false;
  }
  return true;
}

}  // namespace

bool RegionSpec::contains(const TubePoint& z) const {
  if (z.dim() != dim_) throw DimensionMismatch(dim_, z.dim());
  if (std::holds_alternative<Whole>(kind_)) return true;
  if (auto* b = std::get_if<Box>(&kind_)) return in_box(*b, z);
  if (auto* d = std::get_if<PseudoPolydisc>(&kind_)) {
    return polydisc_contains(d->center, d->delta, z);
  }
  return !in_box(std::get<ComplementOfBox>(kind_).box, z);
}

SupEstimate sup_estimate(const AnalyticFn& f, const Weight& gamma, const RegionSpec& region,
                         const SearchBudget& budget, std::span<const TubePoint> inject) {
  if (f.dim() != gamma.dim()) throw DimensionMismatch(f.dim(), gamma.dim());
  if (f.dim() != region.dim()) throw DimensionMismatch(f.dim(), region.dim());
  const LogObjective objective = [&](const TubePoint& z) {
    return log_weighted_modulus(f, gamma, z);
  };
  const LogMaximum best = maximize_log(objective, region, budget, inject);
  SupEstimate out;
  out.value = std::exp(best.log_value);
  out.witness = best.witness;
  out.samples_used = best.evaluations;
  out.converged = best.converged;
  return out;
}

}  // namespace korops
