#pragma once

// Component-wise self-maps of H^n written in a small rational expression
// language:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := ['-'] atom
//   atom   := number | 'i' | 'z' digits | '(' expr ')'
//
// A map is n such expressions separated by ';'.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "korops/analytic.hpp"
#include "korops/halfplane.hpp"

namespace korops {

/// lambda * z_j + c
struct AffineForm {
  std::size_t coordinate = 0;
  Complex lambda{1.0, 0.0};
  Complex c{};
};

/// (a z_j + b) / (c z_j + d), coefficients as extracted (not normalized).
struct MoebiusForm {
  std::size_t coordinate = 0;
  Complex a{}, b{}, c{}, d{};
  Complex det() const noexcept { return a * d - b * c; }
};

struct GeneralForm {};

using ComponentForm = std::variant<AffineForm, MoebiusForm, GeneralForm>;

struct ComponentInfo {
  ComponentForm form = GeneralForm{};
  /// Affine with lambda real > 0 and Im c >= 0, or Moebius with real
  /// coefficients (up to a common phase) and ad - bc > 0.
  bool structural = false;
};

/// Parse one expression over z1..zn. `component` only labels errors.
AnalyticFn parse_expr(std::string_view text, std::size_t n, std::size_t component = 0);

/// Canonical text: binary operations as "(l op r)", negation as "-x".
std::string print_expr(const AnalyticFn& f);

/// Form of a single expression (degree <= 1 rational in one coordinate).
ComponentInfo classify(const AnalyticFn& f);

class SelfMap {
 public:
  SelfMap(std::vector<AnalyticFn> components);

  std::size_t dim() const noexcept { return components_.size(); }
  const std::vector<AnalyticFn>& components() const noexcept { return components_; }
  const AnalyticFn& component(std::size_t k) const { return components_.at(k); }
  const ComponentInfo& info(std::size_t k) const { return info_.at(k); }
  bool all_structural() const noexcept;
  /// Canonical components joined by "; ".
  std::string to_string() const;

  static SelfMap identity(std::size_t n);

 private:
  std::vector<AnalyticFn> components_;
  std::vector<ComponentInfo> info_;
};

/// Semicolon-separated list of exactly n expressions.
SelfMap parse_selfmap(std::string_view text, std::size_t n);

/// phi(z); NotSelfMapAt when some component image has Im <= 0.
TubePoint eval_map(const SelfMap& phi, const TubePoint& z);

enum class ValidationVerdict { StructurallyValid, NumericallyValid, Rejected };

const char* to_string(ValidationVerdict v) noexcept;

struct ValidationReport {
  ValidationVerdict verdict = ValidationVerdict::Rejected;
  std::optional<TubePoint> counterexample;
  /// 0-based component that failed.
  std::optional<std::size_t> component;
  std::string reason;
  int samples_checked = 0;
};

/// Structural check where available, otherwise sampling: the point (i,...,i),
/// `budget` seeded random points and geometric near-boundary schedules.
ValidationReport validate(const SelfMap& phi, int budget, std::uint64_t seed);

/// C_phi f = f o phi
AnalyticFn pullback(const SelfMap& phi, const AnalyticFn& f);

/// rho(phi(z), psi(z))
double rho_at(const SelfMap& phi, const SelfMap& psi, const TubePoint& z);
std::vector<double> rho_components_at(const SelfMap& phi, const SelfMap& psi, const TubePoint& z);

}  // namespace korops
