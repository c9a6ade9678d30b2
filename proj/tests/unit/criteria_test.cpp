#include <gtest/gtest.h>

#include <cmath>

#include "korops/criteria.hpp"
#include "korops/error.hpp"
#include "korops/random.hpp"

using namespace korops;

namespace {

const Complex I(0.0, 1.0);

SelfMap map1(const char* text) { return parse_selfmap(text, 1); }

}  // namespace

TEST(Functional, TranslationClosedForm) {
  const auto phi = map1("z1");
  const auto psi = map1("z1 + i");
  for (double y : {1e-6, 1e-3, 0.5, 1.0, 7.0, 1e5}) {
    EXPECT_NEAR(boundedness_functional(phi, psi, Weight{1.0}, TubePoint{Complex(0, y)}),
                1.0 / (y + 1.0), 1e-14);
  }
}

TEST(Functional, IdentityPairVanishes) {
  const auto phi = map1("-1/z1");
  Rng rng(2);
  const PointSampler s;
  for (int i = 0; i < 200; ++i) {
    const TubePoint z = s.sample(rng, 1);
    EXPECT_EQ(boundedness_functional(phi, phi, Weight{1.0}, z), 0.0);
    EXPECT_EQ(lower_bound_at(phi, phi, Weight{1.0}, z), 0.0);
  }
  EXPECT_EQ(log_boundedness_functional(phi, phi, Weight{1.0}, TubePoint{I}), -INFINITY);
}

TEST(Functional, InversionGrowth) {
  const auto phi = map1("-1/z1");
  const auto psi = map1("-1/z1 + i");
  double prev = 0.0;
  for (double x : {1.0, 10.0, 100.0, 1e3, 1e4}) {
    const double b = boundedness_functional(phi, psi, Weight{1.0}, TubePoint{Complex(x, 1)});
    EXPECT_GT(b, prev);
    prev = b;
  }
  EXPECT_GT(prev, 1e6);
}

TEST(Functional, DominatesSingleProduct) {
  const auto phi = parse_selfmap("2*z1 + z2; z2 + i", 2);
  const auto psi = parse_selfmap("z1 + 3; 0.5*z2", 2);
  const Weight g{1.5, 0.5};
  Rng rng(6);
  const PointSampler s;
  for (int i = 0; i < 500; ++i) {
    const TubePoint z = s.sample(rng, 2);
    const TubePoint pz = eval_map(phi, z);
    const double pphi = std::pow(z.im(0) / pz.im(0), 1.5) * std::pow(z.im(1) / pz.im(1), 0.5);
    EXPECT_GE(boundedness_functional(phi, psi, g, z) * (1 + 1e-12), rho_at(phi, psi, z) * pphi);
  }
}

TEST(Config, Validation) {
  CriterionConfig c;
  EXPECT_NO_THROW(c.validate());
  c.unbounded_threshold = 1.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.compact_epsilon = 0.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.schedules = {BoundarySchedule{0, Direction::ImToZero, 1.0, 12}};
  EXPECT_THROW(c.validate(), DomainError);
  c.schedules = {BoundarySchedule{0, Direction::ImToZero, 10.0, 3}};
  EXPECT_THROW(c.validate(), DomainError);
  EXPECT_EQ(CriterionConfig::default_schedules(2).size(), 6u);
  EXPECT_EQ((BoundarySchedule{1, Direction::ReToInfinity}).name(), "z2:re->inf");
}

TEST(Boundedness, Translation) {
  const auto r = estimate_sup_boundedness(map1("z1"), map1("z1 + i"), Weight{1.0}, {});
  EXPECT_GE(r.sup_estimate, 0.95);
  EXPECT_LE(r.sup_estimate, 1.0 + 1e-6);
  EXPECT_EQ(r.verdict, BoundednessVerdict::Bounded);
  for (const auto& t : r.traces) {
    for (double v : t.values) EXPECT_LE(v, r.sup_estimate + 1e-9);
  }
}

TEST(Boundedness, IdentityAndInversion) {
  const auto id = estimate_sup_boundedness(map1("z1"), map1("z1"), Weight{1.0}, {});
  EXPECT_EQ(id.sup_estimate, 0.0);
  EXPECT_EQ(id.verdict, BoundednessVerdict::Bounded);

  CriterionConfig cfg;
  const auto inv = estimate_sup_boundedness(map1("-1/z1"), map1("-1/z1 + i"), Weight{1.0}, cfg);
  EXPECT_EQ(inv.verdict, BoundednessVerdict::Unbounded);
  bool witnessed = false;
  for (const auto& t : inv.traces) {
    const auto& v = t.values;
    const std::size_t m = v.size();
    if (t.name == "z1:re->inf" && v.back() > cfg.unbounded_threshold && v[m - 1] > v[m - 2] &&
        v[m - 2] > v[m - 3]) {
      witnessed = true;
    }
  }
  EXPECT_TRUE(witnessed);
}

TEST(Boundedness, DeterministicForFixedConfig) {
  CriterionConfig cfg;
  cfg.seed = 99;
  const auto a = estimate_sup_boundedness(map1("z1"), map1("2*z1"), Weight{1.0}, cfg);
  const auto b = estimate_sup_boundedness(map1("z1"), map1("2*z1"), Weight{1.0}, cfg);
  EXPECT_EQ(a.sup_estimate, b.sup_estimate);
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_LE(a.sup_estimate, 1.5 + 0.05);
  EXPECT_GE(a.sup_estimate, 1.4);
}

TEST(Compactness, Verdicts) {
  const auto id = compactness_limits(map1("z1"), map1("z1"), Weight{1.0}, {});
  EXPECT_EQ(id.limsup_phi, 0.0);
  EXPECT_EQ(id.limsup_psi, 0.0);
  EXPECT_EQ(id.verdict, CompactnessVerdict::Compact);

  const auto tr = compactness_limits(map1("z1"), map1("z1 + i"), Weight{1.0}, {});
  EXPECT_GE(tr.limsup_phi, 0.9);
  EXPECT_EQ(tr.verdict, CompactnessVerdict::Noncompact);

  const auto dil = compactness_limits(map1("z1"), map1("2*z1"), Weight{1.0}, {});
  EXPECT_NEAR(dil.limsup_phi, 1.0, 1e-3);
  EXPECT_EQ(dil.verdict, CompactnessVerdict::Noncompact);
}

TEST(Compactness, NearBoundary) {
  EXPECT_TRUE(near_boundary(TubePoint{Complex(0, 1e-7)}));
  EXPECT_TRUE(near_boundary(TubePoint{I, Complex(0, 1e7)}));
  EXPECT_TRUE(near_boundary(TubePoint{Complex(-2e6, 1)}));
  EXPECT_FALSE(near_boundary(TubePoint{Complex(1e5, 1e-5)}));
}

TEST(LowerBound, TranslationBelowProbe) {
  const auto phi = map1("z1");
  const auto psi = map1("z1 + i");
  const Weight g{1.0};
  const TubePoint z{Complex(0, 1e-3)};
  const double lb = lower_bound_at(phi, psi, g, z);
  EXPECT_GT(lb, 0.0);
  ProbeAnchors anchors;
  anchors.points = {z};
  const double probe = operator_norm_probe(phi, psi, g, 4, 0, SearchBudget{}, anchors);
  EXPECT_LE(lb, probe + 1e-6);
}

TEST(Probe, MonotoneInFamilySizeAndZeroForIdentity) {
  const auto phi = map1("z1");
  const auto psi = map1("2*z1");
  const Weight g{1.0};
  const SearchBudget b{16, 60, 5};
  double prev = 0.0;
  for (int size : {1, 2, 4, 8}) {
    const double p = operator_norm_probe(phi, psi, g, size, 17, b);
    EXPECT_GE(p, prev);
    prev = p;
  }
  EXPECT_GT(prev, 0.0);
  EXPECT_EQ(operator_norm_probe(phi, phi, g, 8, 17, b), 0.0);
  EXPECT_THROW(operator_norm_probe(phi, psi, g, 0, 17, b), DomainError);
}

TEST(ProbeSequence, TranslationTailAndConsistency) {
  const auto phi = map1("z1");
  const auto psi = map1("z1 + i");
  const Weight g{1.0};
  std::vector<TubePoint> centers;
  for (int j = 1; j <= 10; ++j) centers.push_back(TubePoint{Complex(0, std::ldexp(1.0, -j))});
  const SearchBudget b{};
  const auto seq = compactness_probe_sequence(phi, psi, g, centers, b);
  ASSERT_EQ(seq.size(), centers.size());
  for (std::size_t j = 5; j < seq.size(); ++j) EXPECT_GT(seq[j], 0.5);
  ProbeAnchors anchors;
  anchors.f_centers = centers;
  const double probe = operator_norm_probe(phi, psi, g, 1, 0, b, anchors);
  for (double v : seq) EXPECT_LE(v, probe + 1e-6);
  for (double v : compactness_probe_sequence(phi, phi, g, centers, b)) EXPECT_EQ(v, 0.0);
}

TEST(PSumming, IdentityAndSingleFunction) {
  const auto phi = map1("z1");
  const auto psi = map1("z1 + i");
  const Weight g{1.0};
  const SearchBudget b{};
  const auto fam = random_f_family(g, 4, 3);
  EXPECT_EQ(psumming_ratio(phi, phi, g, fam, 64, 1.0, b), 0.0);
  const std::vector<AnalyticFn> one{make_f_a(TubePoint{Complex(0.5, 0.01)}, g)};
  const double norm = sup_estimate(pullback(phi, one[0]) - pullback(psi, one[0]), g,
                                   RegionSpec::whole(1), b)
                          .value;
  EXPECT_NEAR(psumming_ratio(phi, psi, g, one, 64, 1.0, b), norm, 1e-6 * norm);
  EXPECT_THROW(psumming_ratio(phi, psi, g, {}, 64, 1.0, b), DomainError);
  EXPECT_THROW(psumming_ratio(phi, psi, g, one, 64, 0.5, b), DomainError);
}

TEST(PSumming, FamilyPrefixesAreStable) {
  const Weight g{1.0};
  const auto a = random_f_family(g, 3, 7);
  const auto b = random_f_family(g, 6, 7);
  const TubePoint z{Complex(0.2, 0.4)};
  for (int j = 0; j < 3; ++j) EXPECT_EQ(a[j](z), b[j](z));
}

TEST(RequireSelfMaps, NamesTheMap) {
  try {
    require_self_maps(map1("z1"), map1("z1 - 2*i"), 0);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("psi"), std::string::npos);
  }
}
