#pragma once

// Closed-form functions H^n -> C as immutable expression trees.

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "korops/halfplane.hpp"
#include "korops/log_complex.hpp"

namespace korops {

/// Minimum |denominator| accepted by plain (non-log) evaluation.
inline constexpr double kMinDenominator = 1e-300;

class AnalyticFn {
 public:
  enum class Kind { Constant, Coordinate, Negate, Add, Sub, Mul, Div, Power, Compose };

  /// How a constant was written; only affects printing.
  enum class ConstantStyle { Literal, ImaginaryUnit, Computed };

  struct Node {
    Kind kind = Kind::Constant;
    // Constant
    Complex value{};
    LogComplex log_value{};
    bool plain_ok = true;
    ConstantStyle style = ConstantStyle::Computed;
    // Coordinate
    std::size_t index = 0;
    // Power
    double exponent = 0.0;
    // Operands. Compose: children[0] is the inner function, the rest are the
    // components that produce its argument.
    std::vector<std::shared_ptr<const Node>> children;
    // No Power/Compose below and all constants representable in plain form.
    bool rational = true;
    // Smallest coordinate index this subtree reads.
    std::optional<std::size_t> first_coordinate;
  };

  static AnalyticFn constant(std::size_t dim, Complex value,
                             ConstantStyle style = ConstantStyle::Computed);
  static AnalyticFn constant(std::size_t dim, LogComplex value);
  static AnalyticFn coordinate(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return dim_; }
  const Node& node() const noexcept { return *node_; }
  Kind kind() const noexcept { return node_->kind; }
  /// Operand `i` as a function of the same dimension (not valid for Compose).
  AnalyticFn child(std::size_t i) const;

  /// Plain complex evaluation. Division by |d| < kMinDenominator and branch-cut
  /// violations throw EvaluationError.
  Complex operator()(const TubePoint& z) const;
  /// Log-polar evaluation; only exact zero denominators are errors.
  LogComplex evaluate_log(const TubePoint& z) const;

  /// Principal real power of this function.
  AnalyticFn pow(double exponent) const;

  /// z -> this(components(z)). Each component has dimension `outer_dim`; their
  /// number must equal dim(). A component image outside H raises NotSelfMapAt.
  AnalyticFn compose(const std::vector<AnalyticFn>& components) const;

  friend AnalyticFn operator+(const AnalyticFn& a, const AnalyticFn& b);
  friend AnalyticFn operator-(const AnalyticFn& a, const AnalyticFn& b);
  friend AnalyticFn operator*(const AnalyticFn& a, const AnalyticFn& b);
  friend AnalyticFn operator/(const AnalyticFn& a, const AnalyticFn& b);
  friend AnalyticFn operator-(const AnalyticFn& a);

  /// Structural equality of the trees.
  friend bool same_tree(const AnalyticFn& a, const AnalyticFn& b);

 private:
  AnalyticFn(std::size_t dim, std::shared_ptr<const Node> node) : dim_(dim), node_(std::move(node)) {}
  static AnalyticFn binary(Kind kind, const AnalyticFn& a, const AnalyticFn& b);

  std::size_t dim_;
  std::shared_ptr<const Node> node_;
};

}  // namespace korops
