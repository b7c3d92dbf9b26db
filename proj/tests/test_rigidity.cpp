#include <catch_amalgamated.hpp>

#include <cmath>

#include "univmet/rigidity.hpp"

using namespace univmet;

namespace {

SampledMap identity_map(DomainSpec spec) {
  SampledMap m;
  m.f = [](const C2& z) { return z; };
  m.source = spec;
  m.target = spec;
  return m;
}

SampledMap conjugation_map(DomainSpec spec) {
  SampledMap m;
  m.f = [](const C2& z) { return conj(z); };
  m.source = spec;
  m.target = spec;
  return m;
}

}  // namespace

TEST_CASE("jacobian of simple maps") {
  SampledMap id = identity_map(make_bidisc());
  RLinearMap2 t = real_jacobian(id, {cplx(0.1), cplx(0.2)});
  CHECK(frobenius(t.B) <= 1e-9);
  CHECK_THAT(std::abs(t.A[0][0]), Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK_THAT(std::abs(t.A[1][1]), Catch::Matchers::WithinAbs(1.0, 1e-9));

  SampledMap cj = conjugation_map(make_bidisc());
  RLinearMap2 tc = real_jacobian(cj, {cplx(0.1), cplx(0.2)});
  CHECK(frobenius(tc.A) <= 1e-9);
  CHECK_THAT(std::abs(tc.B[0][0]), Catch::Matchers::WithinAbs(1.0, 1e-9));

  // quadratic map: central differences are exact up to rounding
  SampledMap sq;
  sq.f = [](const C2& z) -> C2 { return {z[0] * z[0], z[1]}; };
  sq.source = sq.target = make_bidisc();
  RLinearMap2 ts = real_jacobian(sq, {cplx(0.3), cplx(0.0)});
  CHECK_THAT(ts.A[0][0].real(), Catch::Matchers::WithinAbs(0.6, 1e-9));
  CHECK_THAT(ts.A[1][1].real(), Catch::Matchers::WithinAbs(1.0, 1e-9));
  CHECK(frobenius(ts.B) <= 1e-9);
}

TEST_CASE("wirtinger split reconstructs the map on the basis") {
  SampledMap mix;
  mix.f = [](const C2& z) -> C2 { return {z[0] + 0.5 * std::conj(z[1]), std::conj(z[0])}; };
  mix.source = mix.target = make_bidisc();
  RLinearMap2 t = real_jacobian(mix, {cplx(0.0), cplx(0.0)});
  const C2 basis[2] = {{cplx(1.0), cplx(0.0)}, {cplx(0.0), cplx(1.0)}};
  for (const C2& e : basis) {
    C2 expect = mix.f(e);  // the map is itself R-linear
    C2 got = t.apply(e);
    CHECK(norm2(got - expect) <= 1e-9);
  }
}

TEST_CASE("step halving near the boundary") {
  SampledMap id = identity_map(make_bidisc());
  // 0.999999 + 1e-5 leaves the bidisc; halving brings the stencil back in
  CHECK_NOTHROW(real_jacobian(id, {cplx(0.999997), cplx(0.0)}, 1e-5));
  CHECK_THROWS_WITH(real_jacobian(id, {cplx(0.9999999), cplx(0.0)}, 1e-5),
                    Catch::Matchers::ContainsSubstring("smaller step"));
}

TEST_CASE("isometry residuals") {
  DomainSpec dab = make_dab(cplx(0.6), cplx(0.6));
  SampledMap id = identity_map(dab);
  CHECK(check_isometry_at(id, {cplx(0.05), cplx(-0.1)}) <= 1e-7);

  SampledMap mixed;
  mixed.f = [](const C2& z) -> C2 { return {z[0], std::conj(z[1])}; };
  mixed.source = mixed.target = make_bidisc();
  CHECK(check_isometry_at(mixed, {cplx(0.1), cplx(0.2)}) <= 1e-7);

  SampledMap contraction;
  contraction.f = [](const C2& z) { return 0.5 * z; };
  contraction.source = contraction.target = make_bidisc();
  double r = check_isometry_at(contraction, {cplx(0.0), cplx(0.0)});
  CHECK_THAT(r, Catch::Matchers::WithinAbs(0.5, 1e-6));
}

TEST_CASE("point classification") {
  DomainSpec bid = make_bidisc();
  CHECK(classify_point(identity_map(bid), {cplx(0.1), cplx(0.1)}).label == PointLabel::Holo);
  CHECK(classify_point(conjugation_map(bid), {cplx(0.1), cplx(0.1)}).label == PointLabel::Anti);
  SampledMap mixed;
  mixed.f = [](const C2& z) -> C2 { return {z[0], std::conj(z[1])}; };
  mixed.source = mixed.target = bid;
  CHECK(classify_point(mixed, {cplx(0.1), cplx(0.1)}).label == PointLabel::Mixed);

  SampledMap constant;
  constant.f = [](const C2&) -> C2 { return {cplx(0.0), cplx(0.0)}; };
  constant.source = constant.target = bid;
  CHECK(classify_point(constant, {cplx(0.1), cplx(0.1)}).degenerate);
}

TEST_CASE("global verdicts over a grid") {
  DomainSpec dab = make_dab(cplx(0.6), cplx(0.6));
  Grid grid = make_axis_grid(dab, {cplx(0.0), cplx(0.0)}, 3, 0.05);
  REQUIRE(grid.points.size() == 81);
  REQUIRE(grid_connected(grid));

  CHECK(classify_map(identity_map(dab), grid).verdict == GlobalVerdict::Holomorphic);
  CHECK(classify_map(conjugation_map(dab), grid).verdict == GlobalVerdict::Antiholomorphic);

  DomainSpec bid = make_bidisc();
  Grid bgrid = make_axis_grid(bid, {cplx(0.0), cplx(0.0)}, 3, 0.05);
  SampledMap mixed;
  mixed.f = [](const C2& z) -> C2 { return {z[0], std::conj(z[1])}; };
  mixed.source = mixed.target = bid;
  MapClassification mc = classify_map(mixed, bgrid);
  CHECK(mc.verdict == GlobalVerdict::Mixed);
  for (const auto& pc : mc.points) CHECK(pc.label == PointLabel::Mixed);
}

TEST_CASE("disconnected grids are rejected") {
  DomainSpec bid = make_bidisc();
  Grid g;
  g.points = {{cplx(0.0), cplx(0.0)}, {cplx(0.5), cplx(0.5)}};
  CHECK_THROWS_WITH(classify_map(identity_map(bid), g),
                    Catch::Matchers::ContainsSubstring("not connected"));
}

TEST_CASE("axis adjacency inference") {
  std::vector<C2> pts = {{cplx(0.0), cplx(0.0)}, {cplx(0.1), cplx(0.0)},
                         {cplx(0.1), cplx(0.1)}, {cplx(0.5), cplx(0.5)}};
  auto edges = infer_axis_adjacency(pts, 0.1);
  CHECK(edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("expression maps allow conjugated variables") {
  DomainSpec bid = make_bidisc();
  SampledMap m = expression_map("z1", "conj(z2)", {}, bid, bid);
  C2 out = m.f({cplx(0.1, 0.2), cplx(0.3, 0.4)});
  CHECK(out[0] == cplx(0.1, 0.2));
  CHECK(out[1] == cplx(0.3, -0.4));
}
