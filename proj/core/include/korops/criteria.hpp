#pragma once

// Boundedness and compactness evidence for C_phi - C_psi on the weighted
// space with weight prod (Im z_k)^{gamma_k}.

#include <cstdint>
#include <string>
#include <vector>

#include "korops/korenblum.hpp"
#include "korops/selfmap.hpp"

namespace korops {

enum class Direction { ImToZero, ImToInfinity, ReToInfinity };

const char* to_string(Direction d) noexcept;

/// z_j for j = 1..steps: coordinate `coordinate` moves geometrically away from
/// the base point (i,...,i); the others stay at i.
struct BoundarySchedule {
  std::size_t coordinate = 0;
  Direction direction = Direction::ImToZero;
  double ratio = 10.0;
  int steps = 12;

  std::string name() const;
  std::vector<TubePoint> points(std::size_t n) const;
};

struct CriterionConfig {
  std::uint64_t seed = 0;
  int starts = 64;
  int refine_steps = 200;
  /// Empty means default_schedules(n).
  std::vector<BoundarySchedule> schedules;
  double unbounded_threshold = 1e6;
  double compact_epsilon = 1e-3;

  void validate() const;
  SearchBudget budget() const { return {starts, refine_steps, seed}; }
  std::vector<BoundarySchedule> schedules_for(std::size_t n) const;

  /// Im -> 0, Im -> infinity and Re -> +infinity on every coordinate, ratio 10, 12 steps.
  static std::vector<BoundarySchedule> default_schedules(std::size_t n);
};

enum class BoundednessVerdict { Bounded, Unbounded, Inconclusive };
enum class CompactnessVerdict { Compact, Noncompact, Inconclusive };

const char* to_string(BoundednessVerdict v) noexcept;
const char* to_string(CompactnessVerdict v) noexcept;

struct Trace {
  std::string name;
  std::vector<TubePoint> points;
  std::vector<double> values;
};

struct BoundednessReport {
  double sup_estimate = 0.0;
  TubePoint witness = TubePoint::unit(1);
  std::vector<Trace> traces;
  BoundednessVerdict verdict = BoundednessVerdict::Inconclusive;
  int evaluations = 0;
};

struct CompactnessTrace {
  std::string name;
  std::vector<TubePoint> points;
  /// rho(z) P_phi(z) and rho(z) P_psi(z)
  std::vector<double> phi_values;
  std::vector<double> psi_values;
  /// Whether phi(z) (resp. psi(z)) is near the boundary at that step.
  std::vector<bool> phi_attributed;
  std::vector<bool> psi_attributed;
};

struct CompactnessReport {
  double limsup_phi = 0.0;
  double limsup_psi = 0.0;
  CompactnessVerdict verdict = CompactnessVerdict::Inconclusive;
  std::vector<CompactnessTrace> traces;
};

/// B(z) = rho(z) (prod (Im z_k/Im phi_k(z))^{gamma_k} + prod (Im z_k/Im psi_k(z))^{gamma_k})
double boundedness_functional(const SelfMap& phi, const SelfMap& psi, const Weight& gamma,
                              const TubePoint& z);
/// log B(z), -inf where B vanishes.
double log_boundedness_functional(const SelfMap& phi, const SelfMap& psi, const Weight& gamma,
                                  const TubePoint& z);

BoundednessReport estimate_sup_boundedness(const SelfMap& phi, const SelfMap& psi,
                                           const Weight& gamma, const CriterionConfig& cfg);

CompactnessReport compactness_limits(const SelfMap& phi, const SelfMap& psi, const Weight& gamma,
                                     const CriterionConfig& cfg);

/// True when some coordinate of w has Im < 1e-6, Im > 1e6 or |Re| > 1e6.
bool near_boundary(const TubePoint& w) noexcept;

/// Lower bound on the norm of C_phi - C_psi obtained from the test functions
/// centred at phi(z) and psi(z).
double lower_bound_at(const SelfMap& phi, const SelfMap& psi, const Weight& gamma,
                      const TubePoint& z);

/// Base point plus the first `per_schedule` steps of every schedule.
std::vector<TubePoint> probe_points(const CriterionConfig& cfg, std::size_t n,
                                    int per_schedule = 4);

struct ProbeAnchors {
  /// For each z: f and g test functions centred at phi(z), psi(z); z is injected.
  std::vector<TubePoint> points;
  /// Extra f_a centres, searched with the same starts as compactness_probe_sequence.
  std::vector<TubePoint> f_centers;
};

/// max over test functions f of sup_estimate((C_phi - C_psi) f) / U(f), with U
/// the known norm bound 1 of f_a and g_{a,m}. Family member j is drawn from
/// derive_seed(seed, j), so larger families only add members.
double operator_norm_probe(const SelfMap& phi, const SelfMap& psi, const Weight& gamma,
                           int family_size, std::uint64_t seed, const SearchBudget& budget,
                           const ProbeAnchors& anchors = {});

/// Norm estimates of (C_phi - C_psi) f_{a_j} for the given centres.
std::vector<double> compactness_probe_sequence(const SelfMap& phi, const SelfMap& psi,
                                               const Weight& gamma,
                                               const std::vector<TubePoint>& centers,
                                               const SearchBudget& budget);

/// (sum_j ||T f^j||^p)^{1/p} / sup_xi (sum_j |f^j(xi)|^p W(xi)^p)^{1/p}
double psumming_ratio(const SelfMap& phi, const SelfMap& psi, const Weight& gamma,
                      const std::vector<AnalyticFn>& functions, int xi_samples, double p,
                      const SearchBudget& budget);

/// Seeded family of `count` functions f_a with a drawn from the default sampler.
std::vector<AnalyticFn> random_f_family(const Weight& gamma, int count, std::uint64_t seed);

/// Throws DomainError naming the map when validation rejects it.
void require_self_maps(const SelfMap& phi, const SelfMap& psi, std::uint64_t seed);

}  // namespace korops
