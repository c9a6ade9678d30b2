#pragma once

// Multi-start derivative-free maximization over regions of H^n.
//
// Start points come from a digitally shifted Sobol sequence in compactified
// coordinates (Re through an arctangent map, Im through its logarithm). Each
// start is refined with Nelder-Mead in unconstrained chart coordinates, and the
// overall best point gets one more refinement pass. Objectives are given in log
// form so that values spanning hundreds of decades stay comparable.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "korops/halfplane.hpp"
#include "korops/korenblum.hpp"

namespace korops {

/// Returns log of the quantity to maximize, -inf where it vanishes.
using LogObjective = std::function<double(const TubePoint&)>;

struct LogMaximum {
  double log_value = -std::numeric_limits<double>::infinity();
  TubePoint witness = TubePoint::unit(1);
  int evaluations = 0;
  bool converged = false;
};

/// Objective evaluations that throw korops::Error count as -inf.
LogMaximum maximize_log(const LogObjective& objective, const RegionSpec& region,
                        const SearchBudget& budget, std::span<const TubePoint> inject = {});

/// Unconstrained coordinates for a region; exposed for testing.
class RegionChart {
 public:
  explicit RegionChart(const RegionSpec& region);

  std::size_t param_dim() const noexcept { return 2 * n_; }
  /// Chart coordinates of the start point for u in (0,1)^{2n}.
  std::vector<double> start_params(std::span<const double> u) const;
  /// Point for chart coordinates t, or nullopt when t maps outside the region.
  std::optional<TubePoint> to_point(std::span<const double> t) const;
  /// Chart coordinates of a region point (inverse of to_point up to rounding).
  std::optional<std::vector<double>> params_of(const TubePoint& z) const;
  /// Initial simplex edge lengths around t.
  std::vector<double> initial_steps(std::span<const double> t) const;

 private:
  const RegionSpec& region_;
  std::size_t n_;
  std::vector<EuclideanDisc> discs_;
};

}  // namespace korops
