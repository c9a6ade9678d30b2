#include "korops/selfmap.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "korops/error.hpp"
#include "korops/random.hpp"

namespace korops {

using Kind = AnalyticFn::Kind;
using Style = AnalyticFn::ConstantStyle;

namespace {

const std::vector<std::string> kAtomStart = {"number", "'i'", "coordinate", "'('"};

class Parser {
 public:
  Parser(std::string_view text, std::size_t n, std::size_t component)
      : text_(text), n_(n), component_(component) {}

  AnalyticFn parse() {
    skip_ws();
    if (at_end()) fail("empty expression", with_minus(kAtomStart));
    AnalyticFn e = expr();
    skip_ws();
    if (!at_end()) {
      fail(std::string("unexpected '") + text_[pos_] + "'",
           {"'+'", "'-'", "'*'", "'/'", "end of expression"});
    }
    return e;
  }

 private:
  static std::vector<std::string> with_minus(std::vector<std::string> v) {
    v.push_back("'-'");
    return v;
  }

  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected = {}) const {
    throw ParseError(msg, component_, pos_, std::move(expected));
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  AnalyticFn expr() {
    AnalyticFn lhs = term();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      AnalyticFn rhs = term();
      lhs = c == '+' ? lhs + rhs : lhs - rhs;
    }
  }

  AnalyticFn term() {
    AnalyticFn lhs = factor();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      skip_ws();
      const std::size_t start = pos_;
      AnalyticFn rhs = factor();
      if (c == '/') {
        if (!rhs.node().first_coordinate && rhs(TubePoint::unit(n_)) == Complex(0.0, 0.0)) {
          pos_ = start;
          fail("division by zero");
        }
        lhs = lhs / rhs;
      } else {
        lhs = lhs * rhs;
      }
    }
  }

  AnalyticFn factor() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -atom();
    }
    return atom();
  }

  AnalyticFn atom() {
    skip_ws();
    if (at_end()) fail("unexpected end of expression", kAtomStart);
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (c == 'i') {
      ++pos_;
      return AnalyticFn::constant(n_, Complex(0.0, 1.0), Style::ImaginaryUnit);
    }
    if (c == 'z') return coordinate();
    if (c == '(') {
      ++pos_;
      AnalyticFn inner = expr();
      skip_ws();
      if (peek() != ')') fail(at_end() ? "unexpected end of expression" : "unbalanced parenthesis",
                              {"')'", "operator"});
      ++pos_;
      return inner;
    }
    fail(std::string("unexpected '") + c + "'", kAtomStart);
  }

  AnalyticFn number() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '.') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed number", {"digit"});
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || !std::isfinite(value)) {
      pos_ = start;
      fail("number out of range");
    }
    return AnalyticFn::constant(n_, Complex(value, 0.0), Style::Literal);
  }

  AnalyticFn coordinate() {
    const std::size_t start = pos_;
    ++pos_;
    const std::size_t digits = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == digits) fail("coordinate needs an index", {"digit"});
    std::size_t index = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, index);
    if (ec != std::errc() || index < 1 || index > n_) {
      std::vector<std::string> expected;
      for (std::size_t k = 1; k <= n_; ++k) expected.push_back("z" + std::to_string(k));
      const std::string name(text_.substr(start, pos_ - start));
      pos_ = start;
      fail("unknown coordinate " + name, std::move(expected));
    }
    return AnalyticFn::coordinate(n_, index - 1);
  }

  std::string_view text_;
  std::size_t n_;
  std::size_t component_;
  std::size_t pos_ = 0;
};

std::string format_real(double x) {
  if (!std::isfinite(x)) throw DomainError("cannot print a non-finite constant");
  char buf[512];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::abs(x), std::chars_format::fixed);
  std::string s(buf, ptr);
  return std::signbit(x) && x != 0.0 ? "-" + s : s;
}

std::string format_complex(Complex v) {
  if (v.imag() == 0.0) {
    return v.real() < 0.0 ? "(" + format_real(v.real()) + ")" : format_real(v.real());
  }
  const std::string im = format_real(std::abs(v.imag())) + "*i";
  if (v.real() == 0.0) return v.imag() < 0.0 ? "(-" + im + ")" : "(" + im + ")";
  return "(" + format_real(v.real()) + (v.imag() < 0.0 ? " - " : " + ") + im + ")";
}

void print_node(const AnalyticFn::Node& node, std::string& out) {
  switch (node.kind) {
    case Kind::Constant:
      if (node.style == Style::ImaginaryUnit) {
        out += 'i';
      } else if (node.style == Style::Literal) {
        out += format_real(node.value.real());
      } else {
        out += format_complex(node.plain_ok ? node.value : node.log_value.to_complex());
      }
      return;
    case Kind::Coordinate:
      out += 'z';
      out += std::to_string(node.index + 1);
      return;
    case Kind::Negate: {
      const auto& child = *node.children[0];
      const bool wrap = child.kind == Kind::Negate;
      out += '-';
      if (wrap) out += '(';
      print_node(child, out);
      if (wrap) out += ')';
      return;
    }
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div: {
      static constexpr const char* ops[] = {" + ", " - ", " * ", " / "};
      out += '(';
      print_node(*node.children[0], out);
      out += ops[static_cast<int>(node.kind) - static_cast<int>(Kind::Add)];
      print_node(*node.children[1], out);
      out += ')';
      return;
    }
    case Kind::Power:
    case Kind::Compose:
      throw DomainError("powers and compositions have no textual form in the map language");
  }
}

// Polynomials in one variable, lowest degree first, trailing zeros trimmed.
using Poly = std::vector<Complex>;
constexpr std::size_t kMaxDegree = 4;

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == Complex(0.0, 0.0)) p.pop_back();
}

std::size_t degree(const Poly& p) { return p.size() - 1; }

bool is_zero(const Poly& p) { return p.size() == 1 && p[0] == Complex(0.0, 0.0); }

Poly mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Poly add(const Poly& a, const Poly& b, double sign) {
  Poly r(std::max(a.size(), b.size()), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += sign * b[i];
  trim(r);
  return r;
}

Complex eval(const Poly& p, Complex x) {
  Complex acc(0.0, 0.0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

double scale_at(const Poly& p, Complex x) {
  double acc = 0.0;
  double xp = 1.0;
  for (const auto& c : p) {
    acc += std::abs(c) * xp;
    xp *= std::abs(x);
  }
  return acc;
}

// p / (x - r), assuming r is a root.
Poly deflate(const Poly& p, Complex r) {
  Poly q(p.size() - 1);
  Complex carry(0.0, 0.0);
  for (std::size_t i = p.size(); i-- > 1;) {
    carry = p[i] + carry * r;
    q[i - 1] = carry;
  }
  trim(q);
  return q;
}

std::vector<Complex> roots(const Poly& p) {
  if (degree(p) == 1) return {-p[0] / p[1]};
  if (degree(p) == 2) {
    const Complex disc = std::sqrt(p[1] * p[1] - 4.0 * p[2] * p[0]);
    return {(-p[1] + disc) / (2.0 * p[2]), (-p[1] - disc) / (2.0 * p[2])};
  }
  return {};
}

struct Rational {
  std::optional<std::size_t> coordinate;
  Poly num{Complex(0.0, 0.0)};
  Poly den{Complex(1.0, 0.0)};
};

void cancel(Rational& r) {
  bool changed = true;
  while (changed && degree(r.den) >= 1 && degree(r.num) >= 1) {
    changed = false;
    for (const Complex root : roots(r.den)) {
      if (std::abs(eval(r.num, root)) <= 1e-12 * scale_at(r.num, root)) {
        r.num = deflate(r.num, root);
        r.den = deflate(r.den, root);
        changed = true;
        break;
      }
    }
  }
}

std::optional<Rational> rational_of(const AnalyticFn::Node& node) {
  switch (node.kind) {
    case Kind::Constant:
      if (!node.plain_ok) return std::nullopt;
      return Rational{std::nullopt, {node.value}, {Complex(1.0, 0.0)}};
    case Kind::Coordinate:
      return Rational{node.index, {Complex(0.0, 0.0), Complex(1.0, 0.0)}, {Complex(1.0, 0.0)}};
    case Kind::Negate: {
      auto r = rational_of(*node.children[0]);
      if (r) r->num = add(Poly{Complex(0.0, 0.0)}, r->num, -1.0);
      return r;
    }
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div: {
      auto a = rational_of(*node.children[0]);
      auto b = rational_of(*node.children[1]);
      if (!a || !b) return std::nullopt;
      if (a->coordinate && b->coordinate && *a->coordinate != *b->coordinate) return std::nullopt;
      Rational r;
      r.coordinate = a->coordinate ? a->coordinate : b->coordinate;
      if (node.kind == Kind::Add || node.kind == Kind::Sub) {
        const double sign = node.kind == Kind::Add ? 1.0 : -1.0;
        if (a->den == b->den) {
          r.num = add(a->num, b->num, sign);
          r.den = a->den;
        } else {
          r.num = add(mul(a->num, b->den), mul(b->num, a->den), sign);
          r.den = mul(a->den, b->den);
        }
      } else if (node.kind == Kind::Mul) {
        r.num = mul(a->num, b->num);
        r.den = mul(a->den, b->den);
      } else {
        if (is_zero(b->num)) return std::nullopt;
        r.num = mul(a->num, b->den);
        r.den = mul(a->den, b->num);
      }
      cancel(r);
      if (degree(r.num) > kMaxDegree || degree(r.den) > kMaxDegree) return std::nullopt;
      return r;
    }
    case Kind::Power:
    case Kind::Compose:
      return std::nullopt;
  }
  return std::nullopt;
}

constexpr double kRealTol = 1e-12;

bool affine_structural(const AffineForm& f) {
  return std::abs(f.lambda.imag()) <= kRealTol * std::abs(f.lambda) && f.lambda.real() > 0.0 &&
         f.c.imag() >= 0.0;
}

bool moebius_structural(const MoebiusForm& f) {
  const Complex coeffs[] = {f.a, f.b, f.c, f.d};
  Complex big(0.0, 0.0);
  for (const auto& c : coeffs) {
    if (std::abs(c) > std::abs(big)) big = c;
  }
  if (big == Complex(0.0, 0.0)) return false;
  const Complex phase = std::conj(big) / std::abs(big);
  Complex n[4];
  for (int i = 0; i < 4; ++i) {
    n[i] = coeffs[i] * phase;
    if (std::abs(n[i].imag()) > kRealTol * std::abs(big)) return false;
  }
  return n[0].real() * n[3].real() - n[1].real() * n[2].real() > 0.0;
}

[[noreturn]] void throw_not_self_map(const TubePoint& z, std::size_t k, double image_im) {
  std::vector<double> re(z.dim()), im(z.dim());
  for (std::size_t j = 0; j < z.dim(); ++j) {
    re[j] = z.re(j);
    im[j] = z.im(j);
  }
  throw NotSelfMapAt(std::move(re), std::move(im), k, image_im);
}

std::vector<TubePoint> boundary_schedule_points(std::size_t n) {
  std::vector<TubePoint> out;
  for (std::size_t k = 0; k < n; ++k) {
    for (int j = 1; j <= 12; ++j) {
      const double t = std::pow(10.0, j);
      for (const Complex v : {Complex(0.0, 1.0 / t), Complex(0.0, t), Complex(t, 1.0),
                              Complex(-t, 1.0)}) {
        std::vector<Complex> c(n, Complex(0.0, 1.0));
        c[k] = v;
        out.emplace_back(std::move(c));
      }
    }
  }
  return out;
}

}  // namespace

AnalyticFn parse_expr(std::string_view text, std::size_t n, std::size_t component) {
  if (n == 0) throw DomainError("map dimension must be >= 1");
  return Parser(text, n, component).parse();
}

std::string print_expr(const AnalyticFn& f) {
  std::string out;
  print_node(f.node(), out);
  return out;
}

ComponentInfo classify(const AnalyticFn& f) {
  ComponentInfo info;
  const auto r = rational_of(f.node());
  if (!r || !r->coordinate) return info;
  const std::size_t j = *r->coordinate;
  if (degree(r->den) == 0 && degree(r->num) == 1) {
    AffineForm a{j, r->num[1] / r->den[0], r->num[0] / r->den[0]};
    info.structural = affine_structural(a);
    info.form = a;
  } else if (degree(r->den) == 1 && degree(r->num) <= 1) {
    MoebiusForm m{j, degree(r->num) == 1 ? r->num[1] : Complex(0.0, 0.0), r->num[0], r->den[1],
                  r->den[0]};
    info.structural = moebius_structural(m);
    info.form = m;
  }
  return info;
}

SelfMap::SelfMap(std::vector<AnalyticFn> components) : components_(std::move(components)) {
  if (components_.empty()) throw DomainError("a self-map needs at least one component");
  for (const auto& c : components_) {
    if (c.dim() != components_.size()) throw DimensionMismatch(components_.size(), c.dim());
    info_.push_back(classify(c));
  }
}

bool SelfMap::all_structural() const noexcept {
  return std::all_of(info_.begin(), info_.end(), [](const auto& i) { return i.structural; });
}

std::string SelfMap::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    if (k) out += "; ";
    out += print_expr(components_[k]);
  }
  return out;
}

SelfMap SelfMap::identity(std::size_t n) {
  std::vector<AnalyticFn> c;
  for (std::size_t k = 0; k < n; ++k) c.push_back(AnalyticFn::coordinate(n, k));
  return SelfMap(std::move(c));
}

SelfMap parse_selfmap(std::string_view text, std::size_t n) {
  if (n == 0) throw DomainError("map dimension must be >= 1");
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t semi = text.find(';', start);
    parts.push_back(text.substr(start, semi == std::string_view::npos ? semi : semi - start));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  if (parts.size() != n) throw DimensionMismatch(n, parts.size());
  std::vector<AnalyticFn> comps;
  for (std::size_t k = 0; k < n; ++k) comps.push_back(parse_expr(parts[k], n, k));
  return SelfMap(std::move(comps));
}

TubePoint eval_map(const SelfMap& phi, const TubePoint& z) {
  if (z.dim() != phi.dim()) throw DimensionMismatch(phi.dim(), z.dim());
  std::vector<Complex> image(phi.dim());
  for (std::size_t k = 0; k < phi.dim(); ++k) {
    image[k] = phi.component(k)(z);
    if (!HalfPlanePoint::admissible(image[k])) throw_not_self_map(z, k, image[k].imag());
  }
  return TubePoint(std::move(image));
}

const char* to_string(ValidationVerdict v) noexcept {
  switch (v) {
    case ValidationVerdict::StructurallyValid:
      return "structurally-valid";
    case ValidationVerdict::NumericallyValid:
      return "numerically-valid";
    case ValidationVerdict::Rejected:
      return "rejected";
  }
  return "?";
}

ValidationReport validate(const SelfMap& phi, int budget, std::uint64_t seed) {
  if (budget < 1) throw DomainError("validation budget must be >= 1");
  ValidationReport report;
  if (phi.all_structural()) {
    report.verdict = ValidationVerdict::StructurallyValid;
    return report;
  }
  const std::size_t n = phi.dim();
  std::vector<std::size_t> numeric;
  for (std::size_t k = 0; k < n; ++k) {
    if (!phi.info(k).structural) numeric.push_back(k);
  }

  auto check = [&](const TubePoint& z) {
    ++report.samples_checked;
    for (std::size_t k : numeric) {
      try {
        const Complex w = phi.component(k)(z);
        if (HalfPlanePoint::admissible(w)) continue;
        report.reason = "image Im = " + std::to_string(w.imag());
      } catch (const EvaluationError& e) {
        report.reason = e.what();
      }
      report.counterexample = z;
      report.component = k;
      return false;
    }
    return true;
  };

  if (!check(TubePoint::unit(n))) return report;
  Rng rng(derive_seed(seed, 0x76616c6964ULL));
  const PointSampler sampler;
  for (int i = 0; i < budget; ++i) {
    if (!check(sampler.sample(rng, n))) return report;
  }
  for (const auto& z : boundary_schedule_points(n)) {
    if (!check(z)) return report;
  }
  report.verdict = ValidationVerdict::NumericallyValid;
  return report;
}

AnalyticFn pullback(const SelfMap& phi, const AnalyticFn& f) {
  if (f.dim() != phi.dim()) throw DimensionMismatch(phi.dim(), f.dim());
  return f.compose(phi.components());
}

double rho_at(const SelfMap& phi, const SelfMap& psi, const TubePoint& z) {
  return rho(eval_map(phi, z), eval_map(psi, z));
}

std::vector<double> rho_components_at(const SelfMap& phi, const SelfMap& psi, const TubePoint& z) {
  return rho_components(eval_map(phi, z), eval_map(psi, z));
}

}  // namespace korops
