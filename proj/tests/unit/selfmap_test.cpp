#include <gtest/gtest.h>

#include <fstream>
#include <string>

#include "korops/error.hpp"
#include "korops/korenblum.hpp"
#include "korops/random.hpp"
#include "korops/selfmap.hpp"

using namespace korops;

namespace {

const Complex I(0.0, 1.0);

std::vector<std::string> corpus() {
  std::ifstream in(std::string(KOROPS_FIXTURE_DIR) + "/roundtrip_corpus.txt");
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

void expect_close(Complex a, Complex b, double tol = 1e-14) {
  EXPECT_LE(std::abs(a - b), tol) << a << " vs " << b;
}

}  // namespace

TEST(Parse, AffineShift) {
  const auto m = parse_selfmap("z1 + i", 1);
  const auto* a = std::get_if<AffineForm>(&m.info(0).form);
  ASSERT_NE(a, nullptr);
  expect_close(a->lambda, 1.0);
  expect_close(a->c, I);
  EXPECT_TRUE(m.info(0).structural);
}

TEST(Parse, NegativeInverse) {
  const auto m = parse_selfmap("-1/z1", 1);
  const auto* f = std::get_if<MoebiusForm>(&m.info(0).form);
  ASSERT_NE(f, nullptr);
  expect_close(f->a, 0.0);
  expect_close(f->b, -1.0);
  expect_close(f->c, 1.0);
  expect_close(f->d, 0.0);
  expect_close(f->det(), 1.0);
  EXPECT_TRUE(m.info(0).structural);
}

TEST(Parse, RationalDegreeOne) {
  const auto m = parse_selfmap("(2*z1 + 1)/(z1 + 3)", 1);
  const auto* f = std::get_if<MoebiusForm>(&m.info(0).form);
  ASSERT_NE(f, nullptr);
  expect_close(f->a, 2.0);
  expect_close(f->b, 1.0);
  expect_close(f->c, 1.0);
  expect_close(f->d, 3.0);
  expect_close(f->det(), 5.0);
  EXPECT_TRUE(m.info(0).structural);
}

TEST(Parse, OtherForms) {
  EXPECT_TRUE(std::holds_alternative<GeneralForm>(classify(parse_expr("z1*z1", 1)).form));
  EXPECT_TRUE(std::holds_alternative<GeneralForm>(classify(parse_expr("z1 + z2", 2)).form));
  EXPECT_FALSE(classify(parse_expr("z1 - 2*i", 1)).structural);
  EXPECT_FALSE(classify(parse_expr("-2*z1", 1)).structural);
  EXPECT_FALSE(classify(parse_expr("1/z1", 1)).structural);
  EXPECT_TRUE(classify(parse_expr("z2 + 3", 2)).structural);
}

TEST(Parse, Errors) {
  try {
    parse_selfmap("z1 + ", 1);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.component(), 0u);
    EXPECT_EQ(e.position(), 5u);
    EXPECT_FALSE(e.expected().empty());
  }
  try {
    parse_selfmap("z1; z2 * (z1", 2);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.component(), 1u);
  }
  EXPECT_THROW(parse_selfmap("z3; z1", 2), ParseError);
  EXPECT_THROW(parse_selfmap("z0; z1", 2), ParseError);
  EXPECT_THROW(parse_selfmap("z1/0", 1), ParseError);
  EXPECT_THROW(parse_selfmap("z1/(1 - 1)", 1), ParseError);
  EXPECT_THROW(parse_selfmap("1.", 1), ParseError);
  EXPECT_THROW(parse_selfmap("z1 $ 2", 1), ParseError);
  EXPECT_THROW(parse_selfmap("z1; z1", 1), DimensionMismatch);
  EXPECT_THROW(parse_selfmap("z1", 2), DimensionMismatch);
}

TEST(Print, CorpusRoundTrip) {
  const auto exprs = corpus();
  ASSERT_EQ(exprs.size(), 50u);
  Rng rng(8);
  const PointSampler s;
  for (const auto& text : exprs) {
    const auto f = parse_expr(text, 3);
    const std::string printed = print_expr(f);
    const auto g = parse_expr(printed, 3);
    EXPECT_TRUE(same_tree(f, g)) << text << " -> " << printed;
    EXPECT_EQ(print_expr(g), printed) << text;
    for (int k = 0; k < 5; ++k) {
      const TubePoint z = s.sample(rng, 3);
      try {
        EXPECT_EQ(f(z), g(z)) << text;
      } catch (const EvaluationError&) {
      }
    }
  }
}

TEST(Print, CanonicalForms) {
  EXPECT_EQ(print_expr(parse_expr("z1+i", 1)), "(z1 + i)");
  EXPECT_EQ(print_expr(parse_expr("-1/z1", 1)), "(-1 / z1)");
  EXPECT_EQ(print_expr(parse_expr("  2.50 * z1 ", 1)), "(2.5 * z1)");
  EXPECT_EQ(parse_selfmap("z1 ;z2+1", 2).to_string(), "z1; (z2 + 1)");
}

TEST(Classify, MoebiusDeterminantSign) {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    double c[4];
    for (double& x : c) x = std::round(rng.uniform(-9, 9) * 4) / 4;
    if (c[2] == 0.0) c[2] = 1.0;
    const double det = c[0] * c[3] - c[1] * c[2];
    if (det == 0.0) continue;
    const std::string text = "(" + std::to_string(c[0]) + "*z1 + " + std::to_string(c[1]) + ")/(" +
                             std::to_string(c[2]) + "*z1 + " + std::to_string(c[3]) + ")";
    const auto info = classify(parse_expr(text, 1));
    const auto* m = std::get_if<MoebiusForm>(&info.form);
    ASSERT_NE(m, nullptr) << text;
    EXPECT_EQ(info.structural, det > 0.0) << text;
    // Coefficients are stored up to a common factor.
    EXPECT_NEAR(std::abs(m->det() / (m->c * m->c) - det / (c[2] * c[2])), 0.0, 1e-9) << text;
  }
}

TEST(EvalMap, Examples) {
  expect_close(eval_map(SelfMap::identity(2), TubePoint{I, 2.0 * I})[1], 2.0 * I);
  expect_close(eval_map(parse_selfmap("z1 + i", 1), TubePoint{I})[0], 2.0 * I);
  expect_close(eval_map(parse_selfmap("-1/z1", 1), TubePoint{Complex(1, 1)})[0], Complex(-0.5, 0.5));
  try {
    eval_map(parse_selfmap("z1 - 2*i", 1), TubePoint{I});
    FAIL();
  } catch (const NotSelfMapAt& e) {
    EXPECT_EQ(e.component(), 0u);
    EXPECT_DOUBLE_EQ(e.image_im(), -1.0);
  }
}

TEST(Validate, Verdicts) {
  EXPECT_EQ(validate(parse_selfmap("z1 + i", 1), 100, 0).verdict,
            ValidationVerdict::StructurallyValid);
  EXPECT_EQ(validate(parse_selfmap("(2*z1 + 1)/(z1 + 3)", 1), 100, 0).verdict,
            ValidationVerdict::StructurallyValid);
  const auto r = validate(parse_selfmap("z1 - 2*i", 1), 100, 0);
  EXPECT_EQ(r.verdict, ValidationVerdict::Rejected);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_DOUBLE_EQ(r.counterexample->im(0), 1.0);
  const auto g = validate(parse_selfmap("z1 + z2 + i; z2*z2/(z2 + 1) - 1000*i", 2), 500, 3);
  EXPECT_EQ(g.verdict, ValidationVerdict::Rejected);
  const auto ok = validate(parse_selfmap("z1 + z2; z2 + 2*i", 2), 500, 3);
  EXPECT_EQ(ok.verdict, ValidationVerdict::NumericallyValid);
  EXPECT_GE(ok.samples_checked, 500);
  EXPECT_THROW(validate(SelfMap::identity(1), 0, 0), DomainError);
}

TEST(Pullback, Examples) {
  const auto f = make_f_a(TubePoint{I}, Weight{1.0});
  const auto pf = pullback(parse_selfmap("z1 + i", 1), f);
  expect_close(pf(TubePoint{I}), Complex(4.0 / 9.0, 0.0));
  Rng rng(1);
  const PointSampler s;
  const Weight g{1.0, 2.0};
  const auto h = make_f_a(TubePoint{Complex(1, 2), Complex(0, 0.5)}, g);
  const auto id = pullback(SelfMap::identity(2), h);
  const auto shift = parse_selfmap("z1 + 2; 3*z2", 2);
  const auto ph = pullback(shift, h);
  for (int i = 0; i < 100; ++i) {
    const TubePoint z = s.sample(rng, 2);
    EXPECT_EQ(id(z), h(z));
    EXPECT_EQ(std::abs(ph(z)), std::abs(h(eval_map(shift, z))));
  }
}

TEST(RhoAt, Examples) {
  const auto id = SelfMap::identity(1);
  EXPECT_EQ(rho_at(id, id, TubePoint{Complex(2, 3)}), 0.0);
  EXPECT_NEAR(rho_at(id, parse_selfmap("z1 + i", 1), TubePoint{I}), 1.0 / 3.0, 1e-15);
  const auto dil = parse_selfmap("2*z1", 1);
  for (double x : {0.0, 1.0, 10.0, 1e4}) {
    EXPECT_NEAR(rho_at(id, dil, TubePoint{Complex(x, 1)}), std::sqrt((x * x + 1) / (x * x + 9)),
                1e-14);
  }
}
