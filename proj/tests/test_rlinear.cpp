#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "univmet/rlinear.hpp"

using namespace univmet;

namespace {

Mat2 diag(cplx a, cplx b) { return Mat2{{{a, cplx(0.0)}, {cplx(0.0), b}}}; }

RLinearMap2 random_clinear(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  RLinearMap2 t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) t.A[i][j] = cplx(v(rng), v(rng));
  return t;
}

RLinearMap2 random_anti(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  RLinearMap2 t;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) t.B[i][j] = cplx(v(rng), v(rng));
  return t;
}

RLinearMap2 random_mixed(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> v(0.2, 1.0);
  RLinearMap2 t = random_clinear(rng);
  RLinearMap2 u = random_anti(rng);
  double s = v(rng);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) t.B[i][j] = s * u.B[i][j];
  return t;
}

}  // namespace

TEST_CASE("dual views of an R-linear map agree") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    RLinearMap2 t = random_mixed(rng);
    Mat4 m = t.real_matrix();
    C2 x = {cplx(v(rng), v(rng)), cplx(v(rng), v(rng))};
    double rx[4] = {x[0].real(), x[1].real(), x[0].imag(), x[1].imag()};
    double out[4] = {};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out[i] += m[i][j] * rx[j];
    C2 tx = t.apply(x);
    CHECK(std::abs(out[0] - tx[0].real()) <= 1e-13);
    CHECK(std::abs(out[1] - tx[1].real()) <= 1e-13);
    CHECK(std::abs(out[2] - tx[0].imag()) <= 1e-13);
    CHECK(std::abs(out[3] - tx[1].imag()) <= 1e-13);
  }
}

TEST_CASE("classification basics") {
  CHECK(classify(RLinearMap2::identity(), 1e-8).label == Linearity::CLinear);
  CHECK(classify(RLinearMap2::conjugation(), 1e-8).label == Linearity::AntiCLinear);
  RLinearMap2 half_conj{diag(cplx(0.0), cplx(1.0)), diag(cplx(1.0), cplx(0.0))};
  CHECK(classify(half_conj, 1e-8).label == Linearity::Neither);
}

TEST_CASE("J-commutation equivalence") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    RLinearMap2 t = trial % 2 ? random_clinear(rng) : random_mixed(rng);
    ClassifyResult c = classify(t, 1e-12);
    Mat4 m = t.real_matrix(), j = complex_structure_matrix();
    Mat4 mj = mat4_mul(m, j), jm = mat4_mul(j, m);
    double comm = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) comm += (mj[a][b] - jm[a][b]) * (mj[a][b] - jm[a][b]);
    comm = std::sqrt(comm);
    CHECK((comm <= 1e-12) == (c.b_norm <= 1e-12));
  }
}

TEST_CASE("circle image radii") {
  CHECK(circle_image_radii({cplx(1.0), cplx(0.0)}).min_radius == 1.0);
  CHECK(circle_image_radii({cplx(1.0), cplx(0.0)}).is_circle());
  CircleImage ci = circle_image_radii({cplx(1.0), cplx(0.5)});
  CHECK_THAT(ci.min_radius, Catch::Matchers::WithinAbs(0.5, 1e-15));
  CHECK_THAT(ci.max_radius, Catch::Matchers::WithinAbs(1.5, 1e-15));
  CHECK_FALSE(ci.is_circle());
  CHECK(circle_image_radii({cplx(0.0), cplx(0.7)}).is_circle());
}

TEST_CASE("circle image dichotomy on random coefficients") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> mag(0.1, 2.0), ang(0.0, 2 * M_PI);
  for (int trial = 0; trial < 500; ++trial) {
    RLinearMap1 m{std::polar(mag(rng), ang(rng)), std::polar(mag(rng), ang(rng))};
    CircleImage ci = circle_image_radii(m);
    double expect = 2.0 * std::min(std::abs(m.a), std::abs(m.b));
    CHECK(std::abs((ci.max_radius - ci.min_radius) - expect) <= 1e-12);
    CHECK_FALSE(ci.is_circle());
  }
}

TEST_CASE("maps_lines on basic configurations") {
  std::vector<C2> lines = {{cplx(1.0), cplx(0.0)}, {cplx(0.0), cplx(1.0)},
                           {cplx(M_SQRT1_2), cplx(M_SQRT1_2)}};
  auto r = maps_lines(RLinearMap2::identity(), lines, lines, 1e-8);
  REQUIRE(r.ok);
  CHECK(r.permutation == std::vector<int>{0, 1, 2});

  RLinearMap2 swap{Mat2{{{cplx(0.0), cplx(1.0)}, {cplx(1.0), cplx(0.0)}}}, Mat2{}};
  auto rs = maps_lines(swap, lines, lines, 1e-8);
  REQUIRE(rs.ok);
  CHECK(rs.permutation == std::vector<int>{1, 0, 2});

  RLinearMap2 half_conj{diag(cplx(0.0), cplx(1.0)), diag(cplx(1.0), cplx(0.0))};
  auto rf = maps_lines(half_conj, {lines[2]}, {lines[2]}, 1e-8);
  CHECK_FALSE(rf.ok);
  CHECK(rf.failed_source == 0);

  CHECK_THROWS_AS(maps_lines(swap, lines, {lines[0]}, 1e-8), error);
}

TEST_CASE("maps_lines respects composition") {
  std::mt19937_64 rng(34);
  std::vector<C2> lines = {{cplx(1.0), cplx(0.0)}, {cplx(0.0), cplx(1.0)},
                           {cplx(M_SQRT1_2), cplx(M_SQRT1_2)}};
  RLinearMap2 swap{Mat2{{{cplx(0.0), cplx(1.0)}, {cplx(1.0), cplx(0.0)}}}, Mat2{}};
  RLinearMap2 conj = RLinearMap2::conjugation();
  RLinearMap2 both = compose(swap, conj);
  auto s1 = maps_lines(conj, lines, lines, 1e-8);
  auto s2 = maps_lines(swap, lines, lines, 1e-8);
  auto s12 = maps_lines(both, lines, lines, 1e-8);
  REQUIRE((s1.ok && s2.ok && s12.ok));
  for (int j = 0; j < 3; ++j) CHECK(s12.permutation[j] == s2.permutation[s1.permutation[j]]);
}

TEST_CASE("norm preservation sampling") {
  IndicatrixModel bid = build_indicatrix(make_bidisc(), {cplx(0.0), cplx(0.0)});
  auto r = preserves_norm(RLinearMap2::identity(), bid, bid, 500, 1e-12);
  CHECK(r.ok);
  CHECK(r.worst_relative_deviation == 0.0);

  RLinearMap2 phases{diag(std::polar(1.0, 0.7), std::polar(1.0, -1.1)), Mat2{}};
  CHECK(preserves_norm(phases, bid, bid, 500, 1e-12).ok);

  RLinearMap2 doubled{diag(cplx(2.0), cplx(2.0)), Mat2{}};
  CHECK_FALSE(preserves_norm(doubled, bid, bid, 500, 1e-8).ok);
}

TEST_CASE("verdict pipeline") {
  DomainSpec dab = make_dab(cplx(0.6), cplx(0.6));
  IndicatrixModel ind = build_indicatrix(dab, {cplx(0.0), cplx(0.0)});

  auto v1 = linearity_verdict(RLinearMap2::identity(), ind, ind);
  CHECK(v1.hypotheses_hold);
  CHECK(v1.classification.label == Linearity::CLinear);
  CHECK_FALSE(v1.contradiction);

  // a, b real: all functionals have real coefficients, so conjugation
  // preserves every |L_i| and fixes the line configuration
  auto v2 = linearity_verdict(RLinearMap2::conjugation(), ind, ind);
  CHECK(v2.hypotheses_hold);
  CHECK(v2.classification.label == Linearity::AntiCLinear);
  CHECK_FALSE(v2.contradiction);

  RLinearMap2 half_conj{diag(cplx(0.0), cplx(1.0)), diag(cplx(1.0), cplx(0.0))};
  auto v3 = linearity_verdict(half_conj, ind, ind);
  CHECK_FALSE(v3.line_check.ok);
  CHECK(v3.classification.label == Linearity::Neither);
  CHECK_FALSE(v3.contradiction);

  IndicatrixModel bid = build_indicatrix(make_bidisc(), {cplx(0.0), cplx(0.0)});
  CHECK_THROWS_WITH(linearity_verdict(RLinearMap2::identity(), bid, bid),
                    Catch::Matchers::ContainsSubstring("at least 3"));
}

TEST_CASE("classification respects composition") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    RLinearMap2 c1 = random_clinear(rng), c2 = random_clinear(rng);
    RLinearMap2 a1 = random_anti(rng), a2 = random_anti(rng);
    CHECK(classify(compose(c1, c2), 1e-8).label == Linearity::CLinear);
    CHECK(classify(compose(a1, a2), 1e-8).label == Linearity::CLinear);
    CHECK(classify(compose(a1, c1), 1e-8).label == Linearity::AntiCLinear);
    CHECK(classify(compose(c1, a1), 1e-8).label == Linearity::AntiCLinear);
  }
}
