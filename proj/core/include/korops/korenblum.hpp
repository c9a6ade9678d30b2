#pragma once

// Korenblum-space quantities: weighted moduli, the extremal test functions
// f_a and g_{a,m}, and supremum estimation over regions of H^n.

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "korops/analytic.hpp"
#include "korops/halfplane.hpp"

namespace korops {

/// Multi-index gamma with strictly positive components.
class Weight {
 public:
  explicit Weight(std::vector<double> exponents);
  Weight(std::initializer_list<double> exponents) : Weight(std::vector<double>(exponents)) {}

  std::size_t dim() const noexcept { return exponents_.size(); }
  double operator[](std::size_t k) const noexcept { return exponents_[k]; }
  std::span<const double> exponents() const noexcept { return exponents_; }
  /// |gamma| = sum of the components.
  double total() const noexcept { return total_; }

 private:
  std::vector<double> exponents_;
  double total_ = 0.0;
};

/// sum_k gamma_k log Im z_k
double log_weight(const Weight& gamma, const TubePoint& z);

/// log(|f(z)| prod_k (Im z_k)^{gamma_k}); -inf when f(z) = 0.
double log_weighted_modulus(const AnalyticFn& f, const Weight& gamma, const TubePoint& z);

/// |f(z)| prod_k (Im z_k)^{gamma_k}, computed in log space.
double weighted_modulus(const AnalyticFn& f, const Weight& gamma, const TubePoint& z);

/// f_a(z) = prod_k (2i)^{2 gamma_k} (Im a_k)^{gamma_k} / (z_k - conj(a_k))^{2 gamma_k}
AnalyticFn make_f_a(const TubePoint& a, const Weight& gamma);

/// g_{a,m}(z) = 4^{|gamma|} (z_m - a_m)/(z_m - conj(a_m)) prod_k (Im a_k)^{gamma_k} / (z_k - conj(a_k))^{2 gamma_k}
/// `m` is 1-based.
AnalyticFn make_g_am(const TubePoint& a, std::size_t m, const Weight& gamma);

/// Omega in S^gamma_{Omega,f}.
class RegionSpec {
 public:
  struct Whole {};
  /// Per-coordinate Re in [re_lo, re_hi], Im in [im_lo, im_hi] (closed).
  struct Box {
    std::vector<double> re_lo, re_hi, im_lo, im_hi;
  };
  struct PseudoPolydisc {
    TubePoint center;
    PolyRadius delta;
  };
  /// H^n minus the closed box.
  struct ComplementOfBox {
    Box box;
  };
  using Variant = std::variant<Whole, Box, PseudoPolydisc, ComplementOfBox>;

  static RegionSpec whole(std::size_t n);
  static RegionSpec box(Box box);
  /// Same interval on every coordinate.
  static RegionSpec box(std::size_t n, double re_lo, double re_hi, double im_lo, double im_hi);
  static RegionSpec pseudo_polydisc(TubePoint center, PolyRadius delta);
  static RegionSpec complement_of_box(Box box);
  static RegionSpec complement_of_box(std::size_t n, double re_lo, double re_hi, double im_lo,
                                      double im_hi);

  std::size_t dim() const noexcept { return dim_; }
  const Variant& kind() const noexcept { return kind_; }
  bool contains(const TubePoint& z) const;

 private:
  RegionSpec(std::size_t dim, Variant kind) : dim_(dim), kind_(std::move(kind)) {}
  static void check_box(const Box& box);

  std::size_t dim_;
  Variant kind_;
};

/// Multi-start budget: `starts` low-discrepancy start points, each refined by
/// at most `refine_steps` simplex iterations.
struct SearchBudget {
  int starts = 64;
  int refine_steps = 200;
  std::uint64_t seed = 0;
};

struct SupEstimate {
  double value = 0.0;
  TubePoint witness = TubePoint::unit(1);
  int samples_used = 0;
  bool converged = false;
};

/// Lower-bound estimate of S^gamma_{Omega,f} = sup_{z in Omega} |f(z)| prod (Im z_k)^{gamma_k}.
/// Every point of `inject` that lies in the region is used as an extra start,
/// so the result is never below the weighted modulus at those points.
SupEstimate sup_estimate(const AnalyticFn& f, const Weight& gamma, const RegionSpec& region,
                         const SearchBudget& budget, std::span<const TubePoint> inject = {});

}  // namespace korops
