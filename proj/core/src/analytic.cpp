#include "korops/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "korops/error.hpp"

namespace korops {

using Node = AnalyticFn::Node;
using Kind = AnalyticFn::Kind;

namespace {

// Magnitudes whose log lies within this bound are added in plain form.
constexpr double kPlainLogBound = 600.0;

std::optional<std::size_t> min_coordinate(std::optional<std::size_t> a,
                                          std::optional<std::size_t> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

TubePoint image_point(const std::vector<Complex>& image, const TubePoint& z) {
  for (std::size_t k = 0; k < image.size(); ++k) {
    if (!HalfPlanePoint::admissible(image[k])) {
      std::vector<double> re(z.dim());
      std::vector<double> im(z.dim());
      for (std::size_t j = 0; j < z.dim(); ++j) {
        re[j] = z.re(j);
        im[j] = z.im(j);
      }
      throw NotSelfMapAt(std::move(re), std::move(im), k, image[k].imag());
    }
  }
  return TubePoint(image);
}

Complex eval_plain(const Node& node, const TubePoint& z);

std::vector<Complex> eval_components(const Node& node, const TubePoint& z) {
  std::vector<Complex> image(node.children.size() - 1);
  for (std::size_t k = 1; k < node.children.size(); ++k) {
    image[k - 1] = eval_plain(*node.children[k], z);
  }
  return image;
}

Complex eval_plain(const Node& node, const TubePoint& z) {
  switch (node.kind) {
    case Kind::Constant:
      return node.plain_ok ? node.value : node.log_value.to_complex();
    case Kind::Coordinate:
      return z[node.index];
    case Kind::Negate:
      return -eval_plain(*node.children[0], z);
    case Kind::Add:
      return eval_plain(*node.children[0], z) + eval_plain(*node.children[1], z);
    case Kind::Sub:
      return eval_plain(*node.children[0], z) - eval_plain(*node.children[1], z);
    case Kind::Mul:
      return eval_plain(*node.children[0], z) * eval_plain(*node.children[1], z);
    case Kind::Div: {
      const Complex num = eval_plain(*node.children[0], z);
      const Complex den = eval_plain(*node.children[1], z);
      if (!(std::abs(den) >= kMinDenominator)) {
        throw EvaluationError("division by a denominator of modulus < 1e-300",
                              node.children[1]->first_coordinate);
      }
      return num / den;
    }
    case Kind::Power: {
      const Complex base = eval_plain(*node.children[0], z);
      try {
        return principal_power(base, node.exponent);
      } catch (const BranchCutError& e) {
        throw BranchCutError(e.re(), e.im(), node.children[0]->first_coordinate);
      }
    }
    case Kind::Compose: {
      const TubePoint w = image_point(eval_components(node, z), z);
      return eval_plain(*node.children[0], w);
    }
  }
  return {};
}

LogComplex add_log(LogComplex a, LogComplex b) {
  if (!a.is_zero() && !b.is_zero() && std::abs(a.log_abs) < kPlainLogBound &&
      std::abs(b.log_abs) < kPlainLogBound) {
    return LogComplex::from(a.to_complex() + b.to_complex());
  }
  return a + b;
}

LogComplex sub_log(LogComplex a, LogComplex b) {
  if (!a.is_zero() && !b.is_zero() && std::abs(a.log_abs) < kPlainLogBound &&
      std::abs(b.log_abs) < kPlainLogBound) {
    return LogComplex::from(a.to_complex() - b.to_complex());
  }
  if (a.log_abs == b.log_abs && a.principal_arg() == b.principal_arg()) return LogComplex::zero();
  return a - b;
}

LogComplex eval_log(const Node& node, const TubePoint& z) {
  if (node.rational && node.kind != Kind::Mul && node.kind != Kind::Div) {
    return LogComplex::from(eval_plain(node, z));
  }
  switch (node.kind) {
    case Kind::Constant:
      return node.log_value;
    case Kind::Coordinate:
      return LogComplex::from(z[node.index]);
    case Kind::Negate:
      return -eval_log(*node.children[0], z);
    case Kind::Add:
      return add_log(eval_log(*node.children[0], z), eval_log(*node.children[1], z));
    case Kind::Sub:
      return sub_log(eval_log(*node.children[0], z), eval_log(*node.children[1], z));
    case Kind::Mul:
      return eval_log(*node.children[0], z) * eval_log(*node.children[1], z);
    case Kind::Div: {
      const LogComplex den = eval_log(*node.children[1], z);
      if (den.is_zero()) {
        throw EvaluationError("division by zero", node.children[1]->first_coordinate);
      }
      return eval_log(*node.children[0], z) / den;
    }
    case Kind::Power: {
      const LogComplex base = eval_log(*node.children[0], z);
      try {
        return principal_power(base, node.exponent);
      } catch (const BranchCutError& e) {
        throw BranchCutError(e.re(), e.im(), node.children[0]->first_coordinate);
      }
    }
    case Kind::Compose: {
      const TubePoint w = image_point(eval_components(node, z), z);
      return eval_log(*node.children[0], w);
    }
  }
  return {};
}

bool same_node(const Node& a, const Node& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  switch (a.kind) {
    case Kind::Constant:
      if (a.plain_ok != b.plain_ok) return false;
      if (a.plain_ok ? a.value != b.value
                     : (a.log_value.log_abs != b.log_value.log_abs ||
                        a.log_value.arg != b.log_value.arg)) {
        return false;
      }
      break;
    case Kind::Coordinate:
      if (a.index != b.index) return false;
      break;
    case Kind::Power:
      if (a.exponent != b.exponent) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!same_node(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

}  // namespace

AnalyticFn AnalyticFn::constant(std::size_t dim, Complex value, ConstantStyle style) {
  if (dim == 0) throw DomainError("function dimension must be >= 1");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Constant;
  node->value = value;
  node->log_value = LogComplex::from(value);
  node->style = style;
  return AnalyticFn(dim, std::move(node));
}

AnalyticFn AnalyticFn::constant(std::size_t dim, LogComplex value) {
  if (dim == 0) throw DomainError("function dimension must be >= 1");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Constant;
  node->log_value = value;
  node->value = value.to_complex();
  node->plain_ok = value.is_zero() || std::abs(value.log_abs) < kPlainLogBound;
  node->rational = node->plain_ok;
  return AnalyticFn(dim, std::move(node));
}

AnalyticFn AnalyticFn::coordinate(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DomainError("coordinate index out of range");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Coordinate;
  node->index = index;
  node->first_coordinate = index;
  return AnalyticFn(dim, std::move(node));
}

AnalyticFn AnalyticFn::child(std::size_t i) const {
  if (node_->kind == Kind::Compose) throw DomainError("child() is not defined for compositions");
  return AnalyticFn(dim_, node_->children.at(i));
}

AnalyticFn AnalyticFn::binary(Kind kind, const AnalyticFn& a, const AnalyticFn& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch(a.dim_, b.dim_);
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->children = {a.node_, b.node_};
  node->rational = a.node_->rational && b.node_->rational;
  node->first_coordinate = min_coordinate(a.node_->first_coordinate, b.node_->first_coordinate);
  return AnalyticFn(a.dim_, std::move(node));
}

AnalyticFn operator+(const AnalyticFn& a, const AnalyticFn& b) {
  return AnalyticFn::binary(Kind::Add, a, b);
}
AnalyticFn operator-(const AnalyticFn& a, const AnalyticFn& b) {
  return AnalyticFn::binary(Kind::Sub, a, b);
}
AnalyticFn operator*(const AnalyticFn& a, const AnalyticFn& b) {
  return AnalyticFn::binary(Kind::Mul, a, b);
}
AnalyticFn operator/(const AnalyticFn& a, const AnalyticFn& b) {
  return AnalyticFn::binary(Kind::Div, a, b);
}

AnalyticFn operator-(const AnalyticFn& a) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Negate;
  node->children = {a.node_};
  node->rational = a.node_->rational;
  node->first_coordinate = a.node_->first_coordinate;
  return AnalyticFn(a.dim_, std::move(node));
}

AnalyticFn AnalyticFn::pow(double exponent) const {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Power;
  node->exponent = exponent;
  node->children = {node_};
  node->rational = false;
  node->first_coordinate = node_->first_coordinate;
  return AnalyticFn(dim_, std::move(node));
}

AnalyticFn AnalyticFn::compose(const std::vector<AnalyticFn>& components) const {
  if (components.size() != dim_) throw DimensionMismatch(dim_, components.size());
  const std::size_t outer = components.front().dim();
  auto node = std::make_shared<Node>();
  node->kind = Kind::Compose;
  node->rational = false;
  node->children.push_back(node_);
  for (const auto& c : components) {
    if (c.dim() != outer) throw DimensionMismatch(outer, c.dim());
    node->children.push_back(c.node_);
    node->first_coordinate = min_coordinate(node->first_coordinate, c.node_->first_coordinate);
  }
  return AnalyticFn(outer, std::move(node));
}

Complex AnalyticFn::operator()(const TubePoint& z) const {
  if (z.dim() != dim_) throw DimensionMismatch(dim_, z.dim());
  return eval_plain(*node_, z);
}

LogComplex AnalyticFn::evaluate_log(const TubePoint& z) const {
  if (z.dim() != dim_) throw DimensionMismatch(dim_, z.dim());
  return eval_log(*node_, z);
}

bool same_tree(const AnalyticFn& a, const AnalyticFn& b) {
  return a.dim_ == b.dim_ && same_node(*a.node_, *b.node_);
}

}  // namespace korops
