#pragma once

// Executable forms of the ratio inequalities used by the criteria: each returns
// the quantity whose boundedness the corresponding estimate asserts.

#include <optional>
#include <utility>

#include "korops/halfplane.hpp"
#include "korops/korenblum.hpp"

namespace korops {

/// |prod_k ((z_k - conj a_k)/(w_k - conj a_k))^{s_k} - 1| / rho(z,w)
double lemma31_ratio(const TubePoint& a, const TubePoint& z, const TubePoint& w, const Weight& s);

/// |prod_k (Im z_k / Im w_k)^{s_k} - 1| / rho(z,w)
double lemma32_ratio(const TubePoint& z, const TubePoint& w, const Weight& s);

/// |f(z)W(z) - f(w)W(w)| / (S * rho(z,w)) with W(z) = prod (Im z_k)^{gamma_k}
/// and S the supremum of the weighted modulus over `region`.
/// Returns 0 for z == w.
double lemma34_ratio(const AnalyticFn& f, const Weight& gamma, const RegionSpec& region,
                     const TubePoint& z, const TubePoint& w, double sup_value);

/// Same, with S estimated by sup_estimate (z and w injected as starts).
double lemma34_ratio(const AnalyticFn& f, const Weight& gamma, const RegionSpec& region,
                     const TubePoint& z, const TubePoint& w, const SearchBudget& budget);

struct SplitSups {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega_union = 0.0;
};

struct GapTerms {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = |f(phi_z) - f(psi_z)| prod (Im z_k)^{gamma_k}
/// rhs = (h1 S1 + h2 S2) rho (P_phi + P_psi) + S12 rho (h2 P_phi + h1 P_psi)
/// where rho = rho(phi_z, psi_z), P_phi = prod (Im z_k / Im phi_z,k)^{gamma_k}, h2 = 1 - h1.
GapTerms lemma35_gap(const AnalyticFn& f, const Weight& gamma, const TubePoint& phi_z,
                     const TubePoint& psi_z, const TubePoint& z, double h1,
                     const RegionSpec& omega1, const RegionSpec& omega2, const SplitSups& sups);

/// Same, with S1, S2 estimated over omega1, omega2 and S12 = max(S1, S2).
GapTerms lemma35_gap(const AnalyticFn& f, const Weight& gamma, const TubePoint& phi_z,
                     const TubePoint& psi_z, const TubePoint& z, double h1,
                     const RegionSpec& omega1, const RegionSpec& omega2,
                     const SearchBudget& budget);

/// S over omega1, omega2 and their union, using the given points as starts.
SplitSups estimate_split_sups(const AnalyticFn& f, const Weight& gamma, const RegionSpec& omega1,
                              const RegionSpec& omega2, const SearchBudget& budget,
                              std::span<const TubePoint> inject1 = {},
                              std::span<const TubePoint> inject2 = {});

}  // namespace korops
