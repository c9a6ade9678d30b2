#include "korops/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "korops/error.hpp"
#include "korops/random.hpp"
#include "korops/search.hpp"

namespace korops {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kBoundaryLow = 1e-6;
constexpr double kBoundaryHigh = 1e6;
constexpr int kTail = 3;
constexpr double kGrowthTol = 1e-6;

double log_p(const Weight& gamma, const TubePoint& z, const TubePoint& image) {
  double acc = 0.0;
  for (std::size_t k = 0; k < z.dim(); ++k) {
    acc += gamma[k] * (std::log(z.im(k)) - std::log(image.im(k)));
  }
  return acc;
}

void check_inputs(const SelfMap& phi, const SelfMap& psi, const Weight& gamma) {
  if (phi.dim() != psi.dim()) throw DimensionMismatch(phi.dim(), psi.dim());
  if (gamma.dim() != phi.dim()) throw DimensionMismatch(phi.dim(), gamma.dim());
}

bool growing(double prev, double last) {
  return last - prev > kGrowthTol * std::max(1.0, std::abs(last));
}

AnalyticFn difference(const SelfMap& phi, const SelfMap& psi, const AnalyticFn& f) {
  return pullback(phi, f) - pullback(psi, f);
}

double tail_max(const std::vector<double>& values, const std::vector<bool>& attributed) {
  double best = 0.0;
  const std::size_t from = values.size() > kTail ? values.size() - kTail : 0;
  for (std::size_t j = from; j < values.size(); ++j) {
    if (attributed[j]) best = std::max(best, values[j]);
  }
  return best;
}

std::string describe(const TubePoint& z) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (std::size_t k = 0; k < z.dim(); ++k) {
    if (k) os << ", ";
    os << z.re(k) << (z.im(k) < 0 ? "" : "+") << z.im(k) << "i";
  }
  os << ")";
  return os.str();
}

}  // namespace

const char* to_string(Direction d) noexcept {
  switch (d) {
    case Direction::ImToZero:
      return "im->0";
    case Direction::ImToInfinity:
      return "im->inf";
    case Direction::ReToInfinity:
      return "re->inf";
  }
  return "?";
}

const char* to_string(BoundednessVerdict v) noexcept {
  switch (v) {
    case BoundednessVerdict::Bounded:
      return "BOUNDED_EVIDENCE";
    case BoundednessVerdict::Unbounded:
      return "UNBOUNDED_EVIDENCE";
    case BoundednessVerdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

const char* to_string(CompactnessVerdict v) noexcept {
  switch (v) {
    case CompactnessVerdict::Compact:
      return "COMPACT_EVIDENCE";
    case CompactnessVerdict::Noncompact:
      return "NONCOMPACT_EVIDENCE";
    case CompactnessVerdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

std::string BoundarySchedule::name() const {
  return "z" + std::to_string(coordinate + 1) + ":" + to_string(direction);
}

std::vector<TubePoint> BoundarySchedule::points(std::size_t n) const {
  if (coordinate >= n) throw DomainError("schedule coordinate out of range");
  std::vector<TubePoint> out;
  for (int j = 1; j <= steps; ++j) {
    const double t = std::pow(ratio, j);
    std::vector<Complex> c(n, Complex(0.0, 1.0));
    switch (direction) {
      case Direction::ImToZero:
        c[coordinate] = Complex(0.0, 1.0 / t);
        break;
      case Direction::ImToInfinity:
        c[coordinate] = Complex(0.0, t);
        break;
      case Direction::ReToInfinity:
        c[coordinate] = Complex(t, 1.0);
        break;
    }
    out.emplace_back(std::move(c));
  }
  return out;
}

void CriterionConfig::validate() const {
  if (starts < 1) throw DomainError("starts must be >= 1");
  if (refine_steps < 1) throw DomainError("refine_steps must be >= 1");
  if (!(unbounded_threshold > 1.0)) throw DomainError("unbounded threshold must be > 1");
  if (!(compact_epsilon > 0.0)) throw DomainError("compact epsilon must be > 0");
  for (const auto& s : schedules) {
    if (!(s.ratio > 1.0) || !std::isfinite(s.ratio)) throw DomainError("schedule ratio must be > 1");
    if (s.steps < 4) throw DomainError("schedule steps must be >= 4");
  }
}

std::vector<BoundarySchedule> CriterionConfig::default_schedules(std::size_t n) {
  std::vector<BoundarySchedule> out;
  for (std::size_t k = 0; k < n; ++k) {
    for (auto d : {Direction::ImToZero, Direction::ImToInfinity, Direction::ReToInfinity}) {
      out.push_back({k, d, 10.0, 12});
    }
  }
  return out;
}

std::vector<BoundarySchedule> CriterionConfig::schedules_for(std::size_t n) const {
  if (schedules.empty()) return default_schedules(n);
  for (const auto& s : schedules) {
    if (s.coordinate >= n) throw DomainError("schedule coordinate out of range for dimension");
  }
  return schedules;
}

double log_boundedness_functional(const SelfMap& phi, const SelfMap& psi, const Weight& gamma,
                                  const TubePoint& z) {
  check_inputs(phi, psi, gamma);
  const TubePoint a = eval_map(phi, z);
  const TubePoint b = eval_map(psi, z);
  const double r = rho(a, b);
  if (r == 0.0) return kNegInf;
  return std::log(r) + log_add_exp(log_p(gamma, z, a), log_p(gamma, z, b));
}

double boundedness_functional(const SelfMap& phi, const SelfMap& psi, const Weight& gamma,
                              const TubePoint& z) {
  return std::exp(log_boundedness_functional(phi, psi, gamma, z));
}

void require_self_maps(const SelfMap& phi, const SelfMap& psi, std::uint64_t seed) {
  const std::pair<const SelfMap*, const char*> maps[] = {{&phi, "phi"}, {&psi, "psi"}};
  for (const auto& [m, label] : maps) {
    const auto report = validate(*m, 1000, seed);
    if (report.verdict != ValidationVerdict::Rejected) continue;
    std::string msg = std::string(label) + " is not a self-map";
    if (report.component) msg += ": component " + std::to_string(*report.component + 1);
    if (report.counterexample) msg += " at z = " + describe(*report.counterexample);
    if (!report.reason.empty()) msg += " (" + report.reason + ")";
    throw DomainError(msg);
  }
}

BoundednessReport estimate_sup_boundedness(const SelfMap& phi, const SelfMap& psi,
                                           const Weight& gamma, const CriterionConfig& cfg) {
  check_inputs(phi, psi, gamma);
  cfg.validate();
  const std::size_t n = phi.dim();
  BoundednessReport report;

  for (const auto& s : cfg.schedules_for(n)) {
    Trace t{s.name(), s.points(n), {}};
    for (const auto& z : t.points) t.values.push_back(boundedness_functional(phi, psi, gamma, z));
    report.traces.push_back(std::move(t));
  }

  const LogObjective objective = [&](const TubePoint& z) {
    return log_boundedness_functional(phi, psi, gamma, z);
  };
  const auto best = maximize_log(objective, RegionSpec::whole(n), cfg.budget());
  report.sup_estimate = std::exp(best.log_value);
  report.witness = best.witness;
  report.evaluations = best.evaluations;
  for (const auto& t : report.traces) {
    for (std::size_t j = 0; j < t.values.size(); ++j) {
      if (t.values[j] > report.sup_estimate) {
        report.sup_estimate = t.values[j];
        report.witness = t.points[j];
      }
    }
  }

  bool unbounded = false;
  bool still_growing = false;
  bool finals_below = true;
  for (const auto& t : report.traces) {
    const auto& v = t.values;
    const std::size_t m = v.size();
    if (m >= 3 && v[m - 1] > cfg.unbounded_threshold && v[m - 3] < v[m - 2] &&
        v[m - 2] < v[m - 1]) {
      unbounded = true;
    }
    if (m >= 2 && growing(v[m - 2], v[m - 1])) still_growing = true;
    if (m >= 1 && !(v[m - 1] <= report.sup_estimate + 1e-9)) finals_below = false;
  }
  if (unbounded) {
    report.verdict = BoundednessVerdict::Unbounded;
  } else if (finals_below && !still_growing) {
    report.verdict = BoundednessVerdict::Bounded;
  } else {
    report.verdict = BoundednessVerdict::Inconclusive;
  }
  return report;
}

bool near_boundary(const TubePoint& w) noexcept {
  for (std::size_t k = 0; k < w.dim(); ++k) {
    if (w.im(k) < kBoundaryLow || w.im(k) > kBoundaryHigh || std::abs(w.re(k)) > kBoundaryHigh) {
      return true;
    }
  }
  return false;
}

CompactnessReport compactness_limits(const SelfMap& phi, const SelfMap& psi, const Weight& gamma,
                                     const CriterionConfig& cfg) {
  check_inputs(phi, psi, gamma);
  cfg.validate();
  const std::size_t n = phi.dim();
  CompactnessReport report;
  for (const auto& s : cfg.schedules_for(n)) {
    CompactnessTrace t;
    t.name = s.name();
    t.points = s.points(n);
    for (const auto& z : t.points) {
      const TubePoint a = eval_map(phi, z);
      const TubePoint b = eval_map(psi, z);
      const double r = rho(a, b);
      t.phi_values.push_back(r == 0.0 ? 0.0 : r * std::exp(log_p(gamma, z, a)));
      t.psi_values.push_back(r == 0.0 ? 0.0 : r * std::exp(log_p(gamma, z, b)));
      t.phi_attributed.push_back(near_boundary(a));
      t.psi_attributed.push_back(near_boundary(b));
    }
    report.limsup_phi = std::max(report.limsup_phi, tail_max(t.phi_values, t.phi_attributed));
    report.limsup_psi = std::max(report.limsup_psi, tail_max(t.psi_values, t.psi_attributed));
    report.traces.push_back(std::move(t));
  }
  const double eps = cfg.compact_epsilon;
  if (report.limsup_phi < eps && report.limsup_psi < eps) {
    report.verdict = CompactnessVerdict::Compact;
  } else if (report.limsup_phi >= 10.0 * eps || report.limsup_psi >= 10.0 * eps) {
    report.verdict = CompactnessVerdict::Noncompact;
  } else {
    report.verdict = CompactnessVerdict::Inconclusive;
  }
  return report;
}

double lower_bound_at(const SelfMap& phi, const SelfMap& psi, const Weight& gamma,
                      const TubePoint& z) {
  check_inputs(phi, psi, gamma);
  const TubePoint a = eval_map(phi, z);
  const TubePoint b = eval_map(psi, z);
  if (a == b) return 0.0;
  const std::size_t n = z.dim();
  const auto rk = rho_components(a, b);
  const double r = *std::max_element(rk.begin(), rk.end());

  // 1 - rho_k^2 = 4 Im a_k Im b_k / |b_k - conj a_k|^2, so the f-bounds are
  // P (1 - prod (1 - rho_k^2)^{gamma_k}).
  double u = 0.0;
  double log_g = std::log(r) - std::log(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    u += gamma[k] * std::log1p(-rk[k] * rk[k]);
    log_g += gamma[k] * (std::log(4.0) + 2.0 * std::log(a.im(k)) -
                         2.0 * std::log(std::abs(b[k] - std::conj(a[k]))));
  }
  const double lp_phi = log_p(gamma, z, a);
  const double lp_psi = log_p(gamma, z, b);
  const double f1 = std::exp(lp_phi) * -std::expm1(u);
  const double f2 = std::exp(lp_psi) * -std::expm1(u);
  const double g = std::exp(log_g + lp_phi);
  return std::max({0.0, f1, f2, g});
}

std::vector<TubePoint> probe_points(const CriterionConfig& cfg, std::size_t n, int per_schedule) {
  std::vector<TubePoint> out{TubePoint::unit(n)};
  for (const auto& s : cfg.schedules_for(n)) {
    const auto pts = s.points(n);
    const std::size_t take = std::min<std::size_t>(pts.size(), std::max(per_schedule, 0));
    out.insert(out.end(), pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return out;
}

namespace {

double centre_estimate(const SelfMap& phi, const SelfMap& psi, const Weight& gamma,
                       const TubePoint& a, const SearchBudget& budget) {
  const TubePoint starts[] = {a, TubePoint::unit(a.dim())};
  return sup_estimate(difference(phi, psi, make_f_a(a, gamma)), gamma,
                      RegionSpec::whole(a.dim()), budget, starts)
      .value;
}

}  // namespace

double operator_norm_probe(const SelfMap& phi, const SelfMap& psi, const Weight& gamma,
                           int family_size, std::uint64_t seed, const SearchBudget& budget,
                           const ProbeAnchors& anchors) {
  check_inputs(phi, psi, gamma);
  if (family_size < 1) throw DomainError("family size must be >= 1");
  const std::size_t n = phi.dim();
  const auto whole = RegionSpec::whole(n);
  const PointSampler sampler;
  double best = 0.0;

  for (int j = 0; j < family_size; ++j) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(j)));
    const TubePoint a = sampler.sample(rng, n);
    const AnalyticFn f = j % 2 == 0 ? make_f_a(a, gamma)
                                    : make_g_am(a, 1 + static_cast<std::size_t>(j / 2) % n, gamma);
    best = std::max(best, sup_estimate(difference(phi, psi, f), gamma, whole, budget).value);
  }

  for (const auto& z : anchors.points) {
    const TubePoint centres[] = {eval_map(phi, z), eval_map(psi, z)};
    const TubePoint inject[] = {z};
    for (const auto& c : centres) {
      std::vector<AnalyticFn> fns{make_f_a(c, gamma)};
      for (std::size_t m = 1; m <= n; ++m) fns.push_back(make_g_am(c, m, gamma));
      for (const auto& f : fns) {
        best = std::max(best,
                        sup_estimate(difference(phi, psi, f), gamma, whole, budget, inject).value);
      }
    }
  }

  for (const auto& a : anchors.f_centers) {
    best = std::max(best, centre_estimate(phi, psi, gamma, a, budget));
  }
  return best;
}

std::vector<double> compactness_probe_sequence(const SelfMap& phi, const SelfMap& psi,
                                               const Weight& gamma,
                                               const std::vector<TubePoint>& centers,
                                               const SearchBudget& budget) {
  check_inputs(phi, psi, gamma);
  std::vector<double> out;
  for (const auto& a : centers) {
    if (a.dim() != phi.dim()) throw DimensionMismatch(phi.dim(), a.dim());
    out.push_back(centre_estimate(phi, psi, gamma, a, budget));
  }
  return out;
}

std::vector<AnalyticFn> random_f_family(const Weight& gamma, int count, std::uint64_t seed) {
  const PointSampler sampler;
  std::vector<AnalyticFn> out;
  for (int j = 0; j < count; ++j) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(j)));
    out.push_back(make_f_a(sampler.sample(rng, gamma.dim()), gamma));
  }
  return out;
}

double psumming_ratio(const SelfMap& phi, const SelfMap& psi, const Weight& gamma,
                      const std::vector<AnalyticFn>& functions, int xi_samples, double p,
                      const SearchBudget& budget) {
  check_inputs(phi, psi, gamma);
  if (functions.empty()) throw DomainError("p-summing ratio needs a nonempty family");
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("p must be a finite number >= 1");
  if (xi_samples < 0) throw DomainError("xi_samples must be >= 0");
  const std::size_t n = phi.dim();
  const auto whole = RegionSpec::whole(n);

  double log_num = kNegInf;
  std::vector<TubePoint> xis;
  for (const auto& f : functions) {
    const double t = sup_estimate(difference(phi, psi, f), gamma, whole, budget).value;
    if (t > 0.0) log_num = log_add_exp(log_num, p * std::log(t));
    xis.push_back(sup_estimate(f, gamma, whole, budget).witness);
  }
  Rng rng(derive_seed(budget.seed, 0x7073756dULL));
  const PointSampler sampler;
  for (int i = 0; i < xi_samples; ++i) xis.push_back(sampler.sample(rng, n));

  double log_den = kNegInf;
  for (const auto& xi : xis) {
    double acc = kNegInf;
    for (const auto& f : functions) {
      double l = kNegInf;
      try {
        l = log_weighted_modulus(f, gamma, xi);
      } catch (const Error&) {
        continue;
      }
      acc = log_add_exp(acc, p * l);
    }
    log_den = std::max(log_den, acc);
  }
  if (log_den == kNegInf) throw UndefinedRatio("point evaluations of the family all vanish");
  if (log_num == kNegInf) return 0.0;
  return std::exp((log_num - log_den) / p);
}

}  // namespace korops
