#include "korops/calibration.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>

#include <json.hpp>

#include "korops/error.hpp"
#include "korops/halfplane.hpp"
#include "korops/korenblum.hpp"
#include "korops/lemmas.hpp"
#include "korops/random.hpp"

namespace korops {

namespace detail {
const char* calibration_json();
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Point w with rho_k(z, w) = r_k u_k for random u_k in (0,1).
TubePoint near_point(Rng& rng, const TubePoint& z, double delta) {
  std::vector<Complex> c(z.dim());
  for (std::size_t k = 0; k < z.dim(); ++k) {
    c[k] = point_at_pseudo_radius(z[k], delta * rng.uniform(1e-9, 1.0), kTwoPi * rng.uniform());
  }
  return TubePoint(std::move(c));
}

bool strictly_between(double lo, double x, double hi) { return lo < x && x < hi; }

struct LemmaCase {
  std::string id;
  std::function<double(Rng&)> sample;
};

std::vector<LemmaCase> build_cases() {
  std::vector<LemmaCase> out;
  const PointSampler sampler;
  constexpr double delta = 0.5;
  const SearchBudget budget{};

  for (const auto& [tag, s] : {std::pair<const char*, Weight>{"n1-s1", Weight{1.0}},
                               {"n2-s1-1", Weight{1.0, 1.0}},
                               {"n2-s05-2", Weight{0.5, 2.0}}}) {
    out.push_back({std::string("l31-") + tag, [s, sampler](Rng& rng) {
                     const TubePoint a = sampler.sample(rng, s.dim());
                     const TubePoint z = sampler.sample(rng, s.dim());
                     return lemma31_ratio(a, z, near_point(rng, z, delta), s);
                   }});
  }
  for (const auto& [tag, s] : {std::pair<const char*, Weight>{"n1-s1", Weight{1.0}},
                               {"n2-s1-1", Weight{1.0, 1.0}},
                               {"n2-s05-2", Weight{0.5, 2.0}}}) {
    out.push_back({std::string("l32-") + tag, [s, sampler](Rng& rng) {
                     const TubePoint z = sampler.sample(rng, s.dim());
                     return lemma32_ratio(z, near_point(rng, z, delta), s);
                   }});
  }

  // Regional Lipschitz ratio; S is estimated once per case.
  auto disc_case = [&](std::string id, AnalyticFn f, Weight gamma, TubePoint centre) {
    const auto region = RegionSpec::pseudo_polydisc(centre, PolyRadius::uniform(centre.dim(), delta));
    const TubePoint inject[] = {centre};
    const double s = sup_estimate(f, gamma, region, budget, inject).value;
    out.push_back({std::move(id), [=](Rng& rng) {
                     const TubePoint z = near_point(rng, centre, 0.998 * delta);
                     const TubePoint w = near_point(rng, centre, 0.998 * delta);
                     return lemma34_ratio(f, gamma, region, z, w, s);
                   }});
  };
  {
    const TubePoint a{Complex(0.0, 1.0)};
    disc_case("l34-n1-fa-disc", make_f_a(a, Weight{1.0}), Weight{1.0}, a);
  }
  {
    const TubePoint a{Complex(0.5, 1.0), Complex(-1.0, 2.0)};
    const Weight g{1.0, 2.0};
    disc_case("l34-n2-fa-disc", make_f_a(a, g), g,
              TubePoint{Complex(0.3, 1.2), Complex(-0.5, 1.5)});
  }
  {
    const Weight g{0.5};
    const TubePoint a{Complex(1.0, 2.0)};
    const auto f = make_g_am(a, 1, g);
    const auto region = RegionSpec::box(1, -2.0, 2.0, 0.5, 4.0);
    const TubePoint inject[] = {TubePoint{Complex(1.0, 1.0)}};
    const double s = sup_estimate(f, g, region, budget, inject).value;
    out.push_back({"l34-n1-g-box", [=](Rng& rng) {
                     auto draw = [&] {
                       const double y = std::exp(rng.uniform(std::log(0.5), std::log(4.0)));
                       return TubePoint{Complex(rng.uniform(-2.0, 2.0), std::clamp(y, 0.5, 4.0))};
                     };
                     const TubePoint z = draw();
                     const TubePoint w = draw();
                     return lemma34_ratio(f, g, region, z, w, s);
                   }});
  }

  // Split bound: phi(z) in omega1, psi(z) in omega2, z anywhere.
  auto split_case = [&](std::string id, Weight gamma, TubePoint a, TubePoint c1, TubePoint c2,
                        std::optional<double> h1) {
    const auto f = make_f_a(a, gamma);
    const auto r = PolyRadius::uniform(a.dim(), delta);
    const auto o1 = RegionSpec::pseudo_polydisc(c1, r);
    const auto o2 = RegionSpec::pseudo_polydisc(c2, r);
    const TubePoint i1[] = {c1, a};
    const TubePoint i2[] = {c2, a};
    const auto sups = estimate_split_sups(f, gamma, o1, o2, budget, i1, i2);
    out.push_back({std::move(id), [=](Rng& rng) {
                     const TubePoint z = sampler.sample(rng, gamma.dim());
                     const TubePoint pz = near_point(rng, c1, 0.998 * delta);
                     const TubePoint qz = near_point(rng, c2, 0.998 * delta);
                     const double h = h1 ? *h1 : rng.uniform();
                     const auto gap = lemma35_gap(f, gamma, pz, qz, z, h, o1, o2, sups);
                     return gap.lhs / gap.rhs;
                   }});
  };
  {
    const TubePoint a{Complex(0.0, 1.0)};
    const TubePoint c2{Complex(0.3, 1.2)};
    split_case("l35-n1", Weight{1.0}, a, a, c2, std::nullopt);
    split_case("l35-n1-h1", Weight{1.0}, a, a, c2, 1.0);
    split_case("l35-n1-h0", Weight{1.0}, a, a, c2, 0.0);
  }
  split_case("l35-n2", Weight{1.0, 1.0}, TubePoint{Complex(0.0, 1.0), Complex(1.0, 1.0)},
             TubePoint{Complex(0.0, 1.0), Complex(1.0, 1.0)},
             TubePoint{Complex(0.5, 2.0), Complex(0.0, 3.0)}, std::nullopt);
  return out;
}

const std::vector<LemmaCase>& cases() {
  static const std::vector<LemmaCase> all = build_cases();
  return all;
}

}  // namespace

InequalityStats inequality_suite(int which, long long samples, std::uint64_t seed, double delta) {
  if (which < 1 || which > 3) throw DomainError("inequality index must be 1, 2 or 3");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  Rng rng(derive_seed(seed, 0x696e6571ULL + static_cast<std::uint64_t>(which)));
  const PointSampler sampler;
  const double lo = (1.0 - delta) / (1.0 + delta);
  const double hi = (1.0 + delta) / (1.0 - delta);
  InequalityStats st;
  for (long long i = 0; i < samples; ++i) {
    const Complex z = sampler.sample_coordinate(rng);
    const Complex w = point_at_pseudo_radius(z, delta * rng.uniform(), kTwoPi * rng.uniform());
    const Complex a = sampler.sample_coordinate(rng);
    if (!(pseudo_dist(z, w) < delta)) continue;
    ++st.checked;
    double q = 0.0;
    if (which == 1) {
      q = z.imag() / w.imag();
    } else if (which == 2) {
      q = std::abs(z - std::conj(w)) / (2.0 * z.imag());
    } else {
      q = std::abs((z - std::conj(a)) / (w - std::conj(a)));
    }
    if (!strictly_between(lo, q, hi)) ++st.violations;
  }
  return st;
}

PolydiscStats polydisc_equivalence_suite(long long samples, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x706f6c79ULL));
  const PointSampler sampler;
  PolydiscStats st;
  for (long long i = 0; i < samples; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.next() % 3);
    const TubePoint z = sampler.sample(rng, n);
    std::vector<double> radii(n);
    for (auto& d : radii) d = rng.uniform(0.05, 0.95);
    const PolyRadius delta(radii);
    std::vector<Complex> wc(n);
    for (std::size_t k = 0; k < n; ++k) {
      wc[k] = point_at_pseudo_radius(z[k], rng.uniform(0.0, 0.999), kTwoPi * rng.uniform());
    }
    const TubePoint w(wc);
    ++st.checked;
    const bool pseudo = polydisc_contains(z, delta, w);
    const auto discs = euclidean_polydisc(z, delta);
    bool euclid = true;
    for (std::size_t k = 0; k < n; ++k) euclid = euclid && discs[k].contains(w[k]);
    if (pseudo != euclid) {
      const auto rk = rho_components(z, w);
      bool band = false;
      for (std::size_t k = 0; k < n; ++k) band = band || std::abs(rk[k] - delta[k]) <= 1e-9;
      if (band) {
        ++st.in_band;
      } else {
        ++st.disagreements;
      }
    }
    if (i % 100 == 0) {
      for (const auto& p : boundary_torus_samples(z, delta, 3, rng.next())) {
        const auto rk = rho_components(z, p);
        for (std::size_t k = 0; k < n; ++k) {
          st.torus_max_error = std::max(st.torus_max_error, std::abs(rk[k] - delta[k]));
        }
        ++st.torus_points;
      }
    }
  }
  return st;
}

namespace {

ExtremalStats extremal_suite(bool g_family, int instances, int samples, std::uint64_t seed) {
  Rng rng(derive_seed(seed, g_family ? 0x67616dULL : 0x6661ULL));
  const PointSampler sampler;
  ExtremalStats st;
  for (int t = 0; t < instances; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.next() % 3);
    std::vector<double> g(n);
    for (auto& x : g) x = rng.uniform(0.25, 4.0);
    const Weight gamma(g);
    const TubePoint a = sampler.sample(rng, n);
    const std::size_t m = 1 + static_cast<std::size_t>(rng.next() % n);
    const AnalyticFn f = g_family ? make_g_am(a, m, gamma) : make_f_a(a, gamma);
    ++st.instances;
    if (!g_family) {
      st.max_center_deviation =
          std::max(st.max_center_deviation, std::abs(weighted_modulus(f, gamma, a) - 1.0));
    }
    for (int i = 0; i < samples; ++i) {
      const TubePoint z = i % 2 == 0 ? sampler.sample(rng, n) : near_point(rng, a, 0.99);
      const double v = weighted_modulus(f, gamma, z);
      if (!std::isfinite(v)) {
        ++st.nonfinite;
        continue;
      }
      st.max_sampled = std::max(st.max_sampled, v);
    }
  }
  return st;
}

}  // namespace

ExtremalStats f_a_suite(int instances, int samples, std::uint64_t seed) {
  return extremal_suite(false, instances, samples, seed);
}

ExtremalStats g_am_suite(int instances, int samples, std::uint64_t seed) {
  return extremal_suite(true, instances, samples, seed);
}

std::vector<double> f_a_decay_trace() {
  const Weight gamma{1.0};
  std::vector<double> out;
  for (int j = 0; j <= 8; ++j) {
    const auto f = make_f_a(TubePoint{Complex(0.0, std::pow(10.0, -j))}, gamma);
    double best = 0.0;
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 4; ++c) {
        const TubePoint z{Complex(-1.0 + 2.0 * r / 7.0, 0.5 + 0.5 * c)};
        best = std::max(best, std::abs(f(z)));
      }
    }
    out.push_back(best);
  }
  return out;
}

std::vector<std::string> lemma_case_ids() {
  std::vector<std::string> ids;
  for (const auto& c : cases()) ids.push_back(c.id);
  return ids;
}

LemmaStats run_lemma_case(const std::string& id, long long samples, std::uint64_t seed) {
  const auto& all = cases();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].id != id) continue;
    Rng rng(derive_seed(seed, i));
    LemmaStats st{id, 0.0, 0, 0};
    for (long long s = 0; s < samples; ++s) {
      const double r = all[i].sample(rng);
      ++st.samples;
      if (!std::isfinite(r)) {
        ++st.nonfinite;
        continue;
      }
      st.max_ratio = std::max(st.max_ratio, r);
    }
    return st;
  }
  throw DomainError("unknown lemma case " + id);
}

std::string calibration_to_json(const std::vector<LemmaStats>& cases, long long samples,
                                std::uint64_t seed) {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["samples"] = samples;
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& s : cases) c[s.id] = s.max_ratio;
  j["cases"] = c;
  return j.dump(2) + "\n";
}

std::map<std::string, double> calibration_from_json(std::string_view text) {
  std::map<std::string, double> out;
  const auto j = nlohmann::json::parse(text);
  if (!j.contains("cases")) return out;
  for (const auto& [k, v] : j.at("cases").items()) out[k] = v.get<double>();
  return out;
}

std::map<std::string, double> embedded_calibration() {
  return calibration_from_json(detail::calibration_json());
}

}  // namespace korops
