#include "korops/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "korops/error.hpp"
#include "korops/random.hpp"

namespace korops {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogImFloor = -690.0;  // exp(-690) ~ 1e-300
constexpr double kLogImCeil = 690.0;
constexpr double kReBound = 1e150;
constexpr double kStartLogImLo = -18.420680743952367;  // log(1e-8)
constexpr double kStartLogImHi = 18.420680743952367;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double clamp_finite(double v, double lo, double hi) {
  if (std::isnan(v)) return 0.5 * (lo + hi);
  return std::clamp(v, lo, hi);
}

Complex whole_point(double x, double s) {
  return {clamp_finite(x, -kReBound, kReBound), std::exp(clamp_finite(s, kLogImFloor, kLogImCeil))};
}

struct Candidate {
  double value = -kInf;
  std::optional<TubePoint> point;
};

bool better(double value, const TubePoint& point, const Candidate& current) {
  if (!current.point) return true;
  if (value != current.value) return value > current.value;
  return lexicographic_less(point, *current.point);
}

class Engine {
 public:
  Engine(const LogObjective& objective, const RegionChart& chart)
      : objective_(objective), chart_(chart) {}

  // Minimized function: -log objective, +inf outside the region.
  double cost(std::span<const double> t) {
    auto z = chart_.to_point(t);
    if (!z) return kInf;
    return -evaluate(*z);
  }

  double evaluate(const TubePoint& z) {
    ++evaluations_;
    double v = -kInf;
    try {
      v = objective_(z);
    } catch (const Error&) {
      v = -kInf;
    }
    if (std::isnan(v)) v = -kInf;
    if (better(v, z, best_)) best_ = {v, z};
    return v;
  }

  struct RunResult {
    std::vector<double> best_t;
    double best_cost = kInf;
    bool converged = false;
  };

  RunResult nelder_mead(std::vector<double> t0, int max_iter) {
    const std::size_t d = t0.size();
    const auto steps = chart_.initial_steps(t0);
    std::vector<std::vector<double>> simplex(d + 1, t0);
    std::vector<double> costs(d + 1);
    for (std::size_t i = 0; i < d; ++i) simplex[i + 1][i] += steps[i];
    for (std::size_t i = 0; i <= d; ++i) costs[i] = cost(simplex[i]);

    RunResult result;
    std::vector<std::size_t> order(d + 1);
    std::vector<double> centroid(d), trial(d), trial2(d);

    auto sort_simplex = [&] {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });
      std::vector<std::vector<double>> s2(d + 1);
      std::vector<double> c2(d + 1);
      for (std::size_t i = 0; i <= d; ++i) {
        s2[i] = std::move(simplex[order[i]]);
        c2[i] = costs[order[i]];
      }
      simplex = std::move(s2);
      costs = std::move(c2);
    };

    sort_simplex();
    if (costs[0] == kInf) {
      result.best_t = simplex[0];
      return result;
    }

    for (int iter = 0; iter < max_iter; ++iter) {
      sort_simplex();
      const double spread = costs[d] - costs[0];
      if (std::isfinite(spread) && spread <= 1e-14 * (1.0 + std::abs(costs[0]))) {
        double extent = 0.0;
        for (std::size_t i = 1; i <= d; ++i) {
          for (std::size_t j = 0; j < d; ++j) {
            extent = std::max(extent, std::abs(simplex[i][j] - simplex[0][j]));
          }
        }
        if (extent <= 1e-10 * (1.0 + std::abs(simplex[0][0]))) {
          result.converged = true;
          break;
        }
      }

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) centroid[j] += simplex[i][j];
      }
      for (auto& c : centroid) c /= static_cast<double>(d);

      auto along = [&](double coef, std::vector<double>& out) {
        for (std::size_t j = 0; j < d; ++j) {
          out[j] = centroid[j] + coef * (simplex[d][j] - centroid[j]);
        }
      };

      along(-1.0, trial);
      const double fr = cost(trial);
      if (fr < costs[0]) {
        along(-2.0, trial2);
        const double fe = cost(trial2);
        if (fe < fr) {
          simplex[d] = trial2;
          costs[d] = fe;
        } else {
          simplex[d] = trial;
          costs[d] = fr;
        }
        continue;
      }
      if (fr < costs[d - 1]) {
        simplex[d] = trial;
        costs[d] = fr;
        continue;
      }
      const bool outside = fr < costs[d];
      along(outside ? -0.5 : 0.5, trial2);
      const double fc = cost(trial2);
      if (fc < (outside ? fr : costs[d])) {
        simplex[d] = trial2;
        costs[d] = fc;
        continue;
      }
      for (std::size_t i = 1; i <= d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
        }
        costs[i] = cost(simplex[i]);
      }
    }
    sort_simplex();
    result.best_t = simplex[0];
    result.best_cost = costs[0];
    return result;
  }

  const Candidate& best() const noexcept { return best_; }
  int evaluations() const noexcept { return evaluations_; }

 private:
  const LogObjective& objective_;
  const RegionChart& chart_;
  Candidate best_;
  int evaluations_ = 0;
};

}  // namespace

RegionChart::RegionChart(const RegionSpec& region) : region_(region), n_(region.dim()) {
  if (auto* disc = std::get_if<RegionSpec::PseudoPolydisc>(&region.kind())) {
    discs_ = euclidean_polydisc(disc->center, disc->delta);
  }
}

std::vector<double> RegionChart::start_params(std::span<const double> u) const {
  std::vector<double> t(2 * n_);
  std::visit(
      Overloaded{
          [&](const RegionSpec::Box& box) {
            for (std::size_t k = 0; k < n_; ++k) {
              t[2 * k] = box.re_lo[k] + u[2 * k] * (box.re_hi[k] - box.re_lo[k]);
              const double lo = std::log(box.im_lo[k]);
              const double hi = std::log(box.im_hi[k]);
              t[2 * k + 1] = lo + u[2 * k + 1] * (hi - lo);
            }
          },
          [&](const RegionSpec::PseudoPolydisc&) {
            for (std::size_t k = 0; k < n_; ++k) {
              const double r = std::sqrt(u[2 * k]);
              const double theta = 2.0 * std::numbers::pi * u[2 * k + 1];
              const double scale = 1.0 / std::sqrt(1.0 - r * r);
              t[2 * k] = r * std::cos(theta) * scale;
              t[2 * k + 1] = r * std::sin(theta) * scale;
            }
          },
          [&](const auto&) {
            for (std::size_t k = 0; k < n_; ++k) {
              t[2 * k] = std::tan(std::numbers::pi * (u[2 * k] - 0.5));
              t[2 * k + 1] = kStartLogImLo + u[2 * k + 1] * (kStartLogImHi - kStartLogImLo);
            }
          },
      },
      region_.kind());
  return t;
}

std::optional<TubePoint> RegionChart::to_point(std::span<const double> t) const {
  std::vector<Complex> coords(n_);
  bool ok = true;
  std::visit(Overloaded{
                 [&](const RegionSpec::Box& box) {
                   for (std::size_t k = 0; k < n_; ++k) {
                     const double x = clamp_finite(t[2 * k], box.re_lo[k], box.re_hi[k]);
                     const double s = clamp_finite(t[2 * k + 1], std::log(box.im_lo[k]),
                                                   std::log(box.im_hi[k]));
                     const double y = std::clamp(std::exp(s), box.im_lo[k], box.im_hi[k]);
                     coords[k] = {x, y};
                   }
                 },
                 [&](const RegionSpec::PseudoPolydisc&) {
                   for (std::size_t k = 0; k < n_; ++k) {
                     const Complex q(t[2 * k], t[2 * k + 1]);
                     if (!std::isfinite(q.real()) || !std::isfinite(q.imag())) {
                       ok = false;
                       return;
                     }
                     const Complex p = q / std::sqrt(1.0 + std::norm(q));
                     coords[k] = discs_[k].center + discs_[k].radius * p;
                   }
                 },
                 [&](const auto&) {
                   for (std::size_t k = 0; k < n_; ++k) {
                     coords[k] = whole_point(t[2 * k], t[2 * k + 1]);
                   }
                 },
             },
             region_.kind());
  if (!ok) return std::nullopt;
  for (const Complex& c : coords) {
    if (!HalfPlanePoint::admissible(c)) return std::nullopt;
  }
  TubePoint z(std::move(coords));
  if (!region_.contains(z)) return std::nullopt;
  return z;
}

std::optional<std::vector<double>> RegionChart::params_of(const TubePoint& z) const {
  if (z.dim() != n_ || !region_.contains(z)) return std::nullopt;
  std::vector<double> t(2 * n_);
  if (std::holds_alternative<RegionSpec::PseudoPolydisc>(region_.kind())) {
    for (std::size_t k = 0; k < n_; ++k) {
      const Complex p = (z[k] - discs_[k].center) / discs_[k].radius;
      const double r2 = std::norm(p);
      if (!(r2 < 1.0)) return std::nullopt;
      const Complex q = p / std::sqrt(1.0 - r2);
      t[2 * k] = q.real();
      t[2 * k + 1] = q.imag();
    }
    return t;
  }
  for (std::size_t k = 0; k < n_; ++k) {
    t[2 * k] = z.re(k);
    t[2 * k + 1] = std::log(z.im(k));
  }
  return t;
}

std::vector<double> RegionChart::initial_steps(std::span<const double> t) const {
  std::vector<double> steps(2 * n_);
  std::visit(Overloaded{
                 [&](const RegionSpec::Box& box) {
                   for (std::size_t k = 0; k < n_; ++k) {
                     const double w = box.re_hi[k] - box.re_lo[k];
                     const double h = std::log(box.im_hi[k]) - std::log(box.im_lo[k]);
                     steps[2 * k] = w > 0 ? 0.25 * w : 1e-3;
                     steps[2 * k + 1] = h > 0 ? 0.25 * h : 1e-3;
                   }
                 },
                 [&](const RegionSpec::PseudoPolydisc&) {
                   std::fill(steps.begin(), steps.end(), 0.3);
                 },
                 [&](const auto&) {
                   for (std::size_t k = 0; k < n_; ++k) {
                     const double y = std::exp(clamp_finite(t[2 * k + 1], kLogImFloor, kLogImCeil));
                     steps[2 * k] = 0.5 * y;
                     steps[2 * k + 1] = 0.5;
                   }
                 },
             },
             region_.kind());
  return steps;
}

LogMaximum maximize_log(const LogObjective& objective, const RegionSpec& region,
                        const SearchBudget& budget, std::span<const TubePoint> inject) {
  if (budget.starts < 1 || budget.refine_steps < 0) {
    throw DomainError("search budget must have starts >= 1 and refine_steps >= 0");
  }
  const std::size_t n = region.dim();
  const RegionChart chart(region);
  Engine engine(objective, chart);

  std::vector<std::vector<double>> starts;
  for (const TubePoint& z : inject) {
    if (z.dim() != n || !region.contains(z)) continue;
    engine.evaluate(z);
    if (auto t = chart.params_of(z)) starts.push_back(std::move(*t));
  }

  const std::size_t d = 2 * n;
  const bool use_sobol = d <= SobolSequence::kMaxDim;
  std::optional<SobolSequence> sobol;
  if (use_sobol) sobol.emplace(d, budget.seed);
  Rng rng(derive_seed(budget.seed, 0x50b01));
  auto next_u = [&] {
    if (sobol) return sobol->next();
    std::vector<double> u(d);
    for (auto& x : u) x = 0.5 * 0x1.0p-53 + rng.uniform() * (1.0 - 0x1.0p-53);
    return u;
  };

  // Rejected draws (complement regions) are retried up to this many times.
  const int max_draws = 64 * budget.starts;
  int placed = 0;
  for (int draw = 0; draw < max_draws && placed < budget.starts; ++draw) {
    auto t = chart.start_params(next_u());
    auto z = chart.to_point(t);
    if (!z) continue;
    engine.evaluate(*z);
    starts.push_back(std::move(t));
    ++placed;
  }
  if (starts.empty()) throw EmptyRegion("no start point could be placed inside the region");

  struct Refined {
    std::vector<double> t;
    double cost;
    bool converged;
  };
  std::optional<Refined> best_run;
  for (const auto& t0 : starts) {
    auto run = engine.nelder_mead(t0, budget.refine_steps);
    if (!best_run || run.best_cost < best_run->cost) {
      best_run = Refined{run.best_t, run.best_cost, run.converged};
    }
  }

  bool converged = best_run && best_run->converged;
  if (best_run && std::isfinite(best_run->cost) && budget.refine_steps > 0) {
    auto polish = engine.nelder_mead(best_run->t, budget.refine_steps);
    converged = polish.converged;
  }

  LogMaximum out;
  out.log_value = engine.best().value;
  out.witness = engine.best().point ? *engine.best().point : *chart.to_point(starts.front());
  out.evaluations = engine.evaluations();
  out.converged = converged;
  return out;
}

}  // namespace korops
