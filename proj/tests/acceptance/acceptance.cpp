// Acceptance suite: one PASS/FAIL line per criterion. `--only N` runs a single
// criterion. Exit status is 0 only when every criterion that ran passed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "korops/calibration.hpp"
#include "korops/criteria.hpp"
#include "korops/error.hpp"
#include "korops/harness.hpp"
#include "korops/scenario.hpp"

using namespace korops;

namespace {

// Tolerances and budgets.
constexpr double kDelta = 0.5;
constexpr long long kInequalitySamples = 100000;
constexpr double kSuiteSeconds = 5.0;
constexpr double kTorusTol = 1e-12;
constexpr int kExtremalInstances = 100;
constexpr int kExtremalSamples = 10000;
constexpr double kCentreTol = 1e-10;
constexpr double kSupSlack = 1e-9;
constexpr long long kLemmaSamples = 10000;
constexpr double kCalibrationFactor = 2.0;
constexpr double kScenarioSeconds = 10.0;
constexpr double kTranslationSupLo = 0.95;
constexpr double kTranslationSupHi = 1.0 + 1e-6;
constexpr double kTranslationLimsup = 0.9;
constexpr double kDilationSupHi = 1.0 + 0.5 + 0.05;
constexpr double kInversionTrace = 1e6;
constexpr double kLowerBoundSlack = 1e-6;
constexpr int kProbeFamily = 8;
constexpr int kPsumMaxFamily = 32;
constexpr int kPsumXi = 256;
constexpr double kPsumSlack = 1e-6;
constexpr std::uint64_t kSeeds[] = {0, 1, 42, 2024, 987654321};
constexpr std::uint64_t kSuiteSeed = 0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void fail(Outcome& o, const std::string& why) {
  o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += why;
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  long long violations = 0;
  for (int which = 1; which <= 3; ++which) {
    const auto st = inequality_suite(which, kInequalitySamples, kSuiteSeed, kDelta);
    violations += st.violations;
    if (st.checked != kInequalitySamples) fail(o, "suite " + std::to_string(which) + " short");
    if (st.violations) fail(o, "inequality (" + std::to_string(which) + ") violated");
  }
  const double t = seconds_since(t0);
  if (t >= kSuiteSeconds) fail(o, "runtime " + num(t) + " s");
  if (o.pass) o.detail = "3 x 1e5 samples, 0 violations, " + num(t) + " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto st = polydisc_equivalence_suite(kInequalitySamples, kSuiteSeed);
  const double t = seconds_since(t0);
  if (st.disagreements) fail(o, std::to_string(st.disagreements) + " disagreements");
  if (!(st.torus_max_error <= kTorusTol)) fail(o, "torus error " + num(st.torus_max_error));
  if (t >= kSuiteSeconds) fail(o, "runtime " + num(t) + " s");
  if (o.pass) {
    o.detail = "1e5 triples, 0 disagreements (" + std::to_string(st.in_band) +
               " in band), torus error " + num(st.torus_max_error) + ", " + num(t) + " s";
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto st = f_a_suite(kExtremalInstances, kExtremalSamples, kSuiteSeed);
  if (!(st.max_center_deviation < kCentreTol)) fail(o, "deviation " + num(st.max_center_deviation));
  if (!(st.max_sampled <= 1.0 + kSupSlack)) fail(o, "sampled max " + num(st.max_sampled));
  if (st.nonfinite) fail(o, "non-finite samples");
  if (o.pass) {
    o.detail = "deviation at a " + num(st.max_center_deviation) + ", sampled max " +
               num(st.max_sampled);
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto st = g_am_suite(kExtremalInstances, kExtremalSamples, kSuiteSeed);
  if (!(st.max_sampled <= 1.0 + kSupSlack)) fail(o, "sampled max " + num(st.max_sampled));
  if (st.nonfinite) fail(o, "non-finite samples");
  if (o.pass) o.detail = "sampled max " + num(st.max_sampled);
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto caps = embedded_calibration();
  double worst = 0.0;
  for (const auto& id : lemma_case_ids()) {
    const auto it = caps.find(id);
    if (it == caps.end()) {
      fail(o, id + " has no calibration value");
      continue;
    }
    const auto st = run_lemma_case(id, kLemmaSamples, kSuiteSeed);
    if (st.nonfinite) fail(o, id + " produced non-finite ratios");
    if (!std::isfinite(st.max_ratio)) fail(o, id + " max not finite");
    if (!(st.max_ratio <= kCalibrationFactor * it->second)) {
      fail(o, id + " max " + num(st.max_ratio) + " > 2 x " + num(it->second));
    }
    worst = std::max(worst, st.max_ratio / it->second);
  }
  if (o.pass) {
    o.detail = std::to_string(lemma_case_ids().size()) +
               " cases, largest max/calibration = " + num(worst);
  }
  return o;
}

CheckOptions scenario_options() {
  CheckOptions opts;
  opts.wall_clock = true;
  return opts;
}

Outcome criterion6() {
  Outcome o;
  double slowest = 0.0;
  std::vector<std::string> first_verdicts;
  for (std::uint64_t seed : kSeeds) {
    std::vector<std::string> verdicts;
    for (const auto& sc : builtin_scenarios()) {
      CheckOptions opts = scenario_options();
      opts.flags.seed = seed;
      const auto t0 = Clock::now();
      const auto r = run_check(sc, opts);
      const double t = seconds_since(t0);
      slowest = std::max(slowest, t);
      const std::string tag = sc.name + " seed " + std::to_string(seed);
      if (t >= kScenarioSeconds) fail(o, tag + " took " + num(t) + " s");
      const auto bv = r.boundedness.verdict;
      const auto cv = r.compactness.verdict;
      verdicts.push_back(std::string(to_string(bv)) + "/" + to_string(cv));
      const double sup = r.boundedness.sup_estimate;
      if (sc.name == "identity-pair") {
        if (bv != BoundednessVerdict::Bounded || cv != CompactnessVerdict::Compact) {
          fail(o, tag + ": " + verdicts.back());
        }
      } else if (sc.name == "translation-1d") {
        if (!(sup >= kTranslationSupLo && sup <= kTranslationSupHi)) fail(o, tag + ": sup " + num(sup));
        if (bv != BoundednessVerdict::Bounded || cv != CompactnessVerdict::Noncompact) {
          fail(o, tag + ": " + verdicts.back());
        }
        if (!(r.compactness.limsup_phi >= kTranslationLimsup)) {
          fail(o, tag + ": limsup phi " + num(r.compactness.limsup_phi));
        }
      } else if (sc.name == "dilation-1d") {
        if (!(sup <= kDilationSupHi)) fail(o, tag + ": sup " + num(sup));
        if (bv != BoundednessVerdict::Bounded || cv != CompactnessVerdict::Noncompact) {
          fail(o, tag + ": " + verdicts.back());
        }
      } else if (sc.name == "inversion-shift-1d") {
        if (bv != BoundednessVerdict::Unbounded) fail(o, tag + ": " + verdicts.back());
        bool big = false;
        for (const auto& tr : r.boundedness.traces) {
          for (double v : tr.values) big = big || v > kInversionTrace;
        }
        if (!big) fail(o, tag + ": no trace above 1e6");
      } else if (sc.name == "translation-2d") {
        if (bv != BoundednessVerdict::Bounded || cv != CompactnessVerdict::Noncompact) {
          fail(o, tag + ": " + verdicts.back());
        }
      }
    }
    if (first_verdicts.empty()) {
      first_verdicts = verdicts;
    } else if (verdicts != first_verdicts) {
      fail(o, "verdicts change with seed " + std::to_string(seed));
    }
  }
  if (o.pass) o.detail = "5 scenarios x 5 seeds, slowest run " + num(slowest) + " s";
  return o;
}

Outcome criterion7() {
  Outcome o;
  double worst_gap = -INFINITY;
  std::size_t points = 0;
  for (const auto& sc : builtin_scenarios()) {
    const CriterionConfig cfg = effective_config(sc, {});
    const auto phi = sc.phi();
    const auto psi = sc.psi();
    const auto gamma = sc.weight();
    ProbeAnchors anchors;
    anchors.points = probe_points(cfg, sc.n);
    const double probe =
        operator_norm_probe(phi, psi, gamma, kProbeFamily, cfg.seed, cfg.budget(), anchors);
    for (const auto& z : anchors.points) {
      const double lb = lower_bound_at(phi, psi, gamma, z);
      ++points;
      worst_gap = std::max(worst_gap, lb - probe);
      if (!(lb <= probe + kLowerBoundSlack)) {
        fail(o, sc.name + ": lower bound " + num(lb) + " > probe " + num(probe));
      }
      if (sc.name == "identity-pair" && lb != 0.0) fail(o, "identity-pair lower bound " + num(lb));
    }
    if (sc.name == "identity-pair" && probe != 0.0) fail(o, "identity-pair probe " + num(probe));
  }
  if (o.pass) {
    o.detail = std::to_string(points) + " probe points, max(lower - probe) = " + num(worst_gap);
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto tr = *find_builtin("translation-1d");
  const auto id = *find_builtin("identity-pair");
  const CriterionConfig cfg = effective_config(tr, {});
  const auto gamma = tr.weight();
  const double sup_b = estimate_sup_boundedness(tr.phi(), tr.psi(), gamma, cfg).sup_estimate;
  const double cap = 2.0 * sup_b + kPsumSlack;
  const auto family = random_f_family(gamma, kPsumMaxFamily, cfg.seed);
  std::string ratios;
  int first_bad = 0;
  double largest = 0.0;
  for (int size = 1; size <= kPsumMaxFamily; ++size) {
    const std::vector<AnalyticFn> head(family.begin(), family.begin() + size);
    const double r = psumming_ratio(tr.phi(), tr.psi(), gamma, head, kPsumXi, 1.0, cfg.budget());
    largest = std::max(largest, r);
    if ((size & (size - 1)) == 0) ratios += " " + std::to_string(size) + ":" + num(r);
    if (!(r <= cap) && first_bad == 0) first_bad = size;
    const double z = psumming_ratio(id.phi(), id.psi(), gamma, head, kPsumXi, 1.0, cfg.budget());
    if (z != 0.0) fail(o, "identity-pair ratio " + num(z) + " at size " + std::to_string(size));
  }
  if (first_bad) {
    fail(o, "translation-1d ratio exceeds 2 x sup B = " + num(cap) + " from family size " +
                std::to_string(first_bad) + " (max " + num(largest) + ";" + ratios + ")");
  } else {
    o.detail = "max ratio " + num(largest) + " <= " + num(cap) + ";" + ratios;
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::ifstream in(std::string(KOROPS_FIXTURE_DIR) + "/roundtrip_corpus.txt");
  int count = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    ++count;
    try {
      const auto f = parse_expr(line, 3);
      const auto printed = print_expr(f);
      const auto g = parse_expr(printed, 3);
      if (!same_tree(f, g) || print_expr(g) != printed) fail(o, "round trip differs: " + line);
    } catch (const Error& e) {
      fail(o, line + ": " + e.what());
    }
  }
  if (count != 50) fail(o, "corpus has " + std::to_string(count) + " expressions");

  const auto shift = classify(parse_expr("z1 + i", 1));
  const auto* a = std::get_if<AffineForm>(&shift.form);
  if (!a || !shift.structural || std::abs(a->lambda - 1.0) > 0 || std::abs(a->c - Complex(0, 1)) > 0) {
    fail(o, "z1 + i not Affine(1, i)");
  }
  const auto inv = classify(parse_expr("-1/z1", 1));
  const auto* m = std::get_if<MoebiusForm>(&inv.form);
  if (!m || !inv.structural || std::abs(m->det() - 1.0) > 1e-15 || std::abs(m->b + 1.0) > 1e-15) {
    fail(o, "-1/z1 not Moebius(0, -1, 1, 0)");
  }
  const auto rat = classify(parse_expr("(2*z1 + 1)/(z1 + 3)", 1));
  const auto* q = std::get_if<MoebiusForm>(&rat.form);
  if (!q || !rat.structural || std::abs(q->det() - 5.0) > 1e-14) {
    fail(o, "(2*z1 + 1)/(z1 + 3) not Moebius with det 5");
  }
  const auto rej = validate(parse_selfmap("z1 - 2*i", 1), 100, 0);
  if (rej.verdict != ValidationVerdict::Rejected || !rej.counterexample) {
    fail(o, "z1 - 2*i not rejected with a counterexample");
  }
  if (o.pass) {
    o.detail = "50/50 round trips, 3 classifications, z1 - 2*i rejected at Im z = " +
               num(rej.counterexample->im(0));
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  const std::function<Outcome()> criteria[] = {criterion1, criterion2, criterion3,
                                                criterion4, criterion5, criterion6,
                                                criterion7, criterion8, criterion9};
  bool all = true;
  for (int k = 1; k <= 9; ++k) {
    if (only && k != only) continue;
    Outcome o;
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %d: %s  %s\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
