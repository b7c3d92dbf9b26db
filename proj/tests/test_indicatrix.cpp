#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "univmet/indicatrix.hpp"

using namespace univmet;

namespace {

C2 random_unit_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  C2 x = {cplx(gauss(rng), gauss(rng)), cplx(gauss(rng), gauss(rng))};
  return (1.0 / norm2(x)) * x;
}

C2 random_point(std::mt19937_64& rng, const DomainSpec& spec, double rmax = 0.5) {
  std::uniform_real_distribution<double> coord(-rmax, rmax);
  for (;;) {
    C2 p = {cplx(coord(rng), coord(rng)), cplx(coord(rng), coord(rng))};
    if (contains(spec, p)) return p;
  }
}

}  // namespace

TEST_CASE("origin functionals") {
  IndicatrixModel bid = build_indicatrix(make_bidisc(), {cplx(0.0), cplx(0.0)});
  REQUIRE(bid.functionals.size() == 2);
  CHECK(bid.functionals[0].l == C2{cplx(1.0), cplx(0.0)});
  CHECK(bid.functionals[1].l == C2{cplx(0.0), cplx(1.0)});

  IndicatrixModel dab = build_indicatrix(make_dab(cplx(0.6), cplx(0.6)), {cplx(0.0), cplx(0.0)});
  REQUIRE(dab.functionals.size() == 3);
  CHECK_THAT(dab.functionals[2].l[0].real(), Catch::Matchers::WithinAbs(-0.6, 1e-15));
  CHECK_THAT(dab.functionals[2].l[1].real(), Catch::Matchers::WithinAbs(-0.6, 1e-15));
}

TEST_CASE("minkowski values") {
  IndicatrixModel bid = build_indicatrix(make_bidisc(), {cplx(0.0), cplx(0.0)});
  CHECK(minkowski(bid, {cplx(1.0), cplx(1.0)}) == 1.0);
  IndicatrixModel dab = build_indicatrix(make_dab(cplx(0.6), cplx(0.6)), {cplx(0.0), cplx(0.0)});
  CHECK_THAT(minkowski(dab, {cplx(1.0), cplx(-1.0)}), Catch::Matchers::WithinAbs(1.0, 1e-15));
  CHECK(minkowski(dab, {cplx(0.0), cplx(0.0)}) == 0.0);
}

TEST_CASE("boundary projection") {
  IndicatrixModel bid = build_indicatrix(make_bidisc(), {cplx(0.0), cplx(0.0)});
  CHECK(boundary_point(bid, {cplx(2.0), cplx(0.0)}) == C2{cplx(1.0), cplx(0.0)});
  IndicatrixModel dab = build_indicatrix(make_dab(cplx(0.6), cplx(0.6)), {cplx(0.0), cplx(0.0)});
  C2 q = boundary_point(dab, {cplx(1.0), cplx(1.0)});
  CHECK_THAT(q[0].real(), Catch::Matchers::WithinAbs(1.0 / 1.2, 1e-14));
  C2 q2 = boundary_point(dab, q);
  CHECK_THAT(norm2(q2 - q), Catch::Matchers::WithinAbs(0.0, 1e-14));
  CHECK_THROWS_AS(boundary_point(bid, {cplx(0.0), cplx(0.0)}), error);
}

TEST_CASE("active sets") {
  IndicatrixModel bid = build_indicatrix(make_bidisc(), {cplx(0.0), cplx(0.0)});
  CHECK(active_set(bid, {cplx(1.0), cplx(0.5)}) == std::vector<int>{0});
  CHECK(active_set(bid, {cplx(1.0), cplx(1.0)}) == std::vector<int>{0, 1});
  IndicatrixModel dab = build_indicatrix(make_dab(cplx(0.6), cplx(0.6)), {cplx(0.0), cplx(0.0)});
  // |L3(1, 0.5)| = 0.6 * 1.5 = 0.9 < 1
  CHECK(active_set(dab, {cplx(1.0), cplx(0.5)}) == std::vector<int>{0});
  CHECK_THROWS_AS(active_set(bid, {cplx(0.5), cplx(0.5)}), error);
}

TEST_CASE("faces") {
  IndicatrixModel bid = build_indicatrix(make_bidisc(), {cplx(0.0), cplx(0.0)});
  Face f = face_at(bid, {cplx(1.0), cplx(0.5)});
  CHECK(f.active_index == 0);
  CHECK(std::abs(f.kernel_direction[0]) < 1e-15);
  CHECK_THAT(std::abs(f.kernel_direction[1]), Catch::Matchers::WithinAbs(1.0, 1e-15));

  IndicatrixModel dab = build_indicatrix(make_dab(cplx(0.6), cplx(0.6)), {cplx(0.0), cplx(0.0)});
  Face g = face_at(dab, {cplx(0.5), cplx(1.0)});
  CHECK(g.active_index == 1);
  CHECK_THAT(std::abs(g.kernel_direction[0]), Catch::Matchers::WithinAbs(1.0, 1e-15));

  CHECK_THROWS_WITH(face_at(bid, {cplx(1.0), cplx(1.0)}),
                    Catch::Matchers::ContainsSubstring("not a smooth face"));
}

TEST_CASE("line configurations") {
  IndicatrixModel bid = build_indicatrix(make_bidisc(), {cplx(0.0), cplx(0.0)});
  CHECK(line_configuration(bid).size() == 2);
  IndicatrixModel dab = build_indicatrix(make_dab(cplx(0.6), cplx(0.6)), {cplx(0.0), cplx(0.0)});
  auto lines = line_configuration(dab);
  REQUIRE(lines.size() == 3);
  CHECK(same_complex_line(lines[2], {cplx(1.0), cplx(-1.0)}, 1e-9));

  // proportional functionals deduplicate to one line
  IndicatrixModel dup;
  dup.functionals = {Functional{{cplx(1.0), cplx(2.0)}, 0},
                     Functional{{cplx(2.0), cplx(4.0)}, 1},
                     Functional{{cplx(1.0), cplx(-1.0)}, 2}};
  CHECK(line_configuration(dup).size() == 2);
}

TEST_CASE("degenerate models are rejected") {
  // both functionals proportional: body unbounded along the common kernel
  DomainSpec spec = make_custom({}, {"z1", "z1/2"}, {"z1", "z2"});
  CHECK_THROWS_WITH(build_indicatrix(spec, {cplx(0.0), cplx(0.0)}),
                    Catch::Matchers::ContainsSubstring("unbounded"));
}

TEST_CASE("minkowski is a norm") {
  std::mt19937_64 rng(21);
  IndicatrixModel dab = build_indicatrix(make_dab(cplx(0.6), cplx(0.6)), {cplx(0.0), cplx(0.0)});
  std::uniform_real_distribution<double> mag(0.1, 3.0), ang(0.0, 2 * M_PI);
  for (int trial = 0; trial < 200; ++trial) {
    C2 x = random_unit_vector(rng), y = random_unit_vector(rng);
    cplx lambda = std::polar(mag(rng), ang(rng));
    CHECK_THAT(minkowski(dab, lambda * x),
               Catch::Matchers::WithinAbs(std::abs(lambda) * minkowski(dab, x), 1e-12));
    CHECK(minkowski(dab, x) + minkowski(dab, y) - minkowski(dab, x + y) >= -1e-12);
  }
}

TEST_CASE("face flatness and maximality") {
  std::mt19937_64 rng(22);
  IndicatrixModel dab = build_indicatrix(make_dab(cplx(0.6), cplx(0.6)), {cplx(0.0), cplx(0.0)});
  int tested = 0;
  while (tested < 50) {
    C2 q = boundary_point(dab, random_unit_vector(rng));
    auto active = active_set(dab, q);
    if (active.size() != 1) continue;
    ++tested;
    Face face = face_at(dab, q);
    const C2& v = face.kernel_direction;
    double inactive_max = 0.0;
    for (std::size_t i = 0; i < dab.functionals.size(); ++i)
      if (static_cast<int>(i) != face.active_index)
        inactive_max = std::max(inactive_max, std::abs(dab.functionals[i].apply(q)));
    double lv_max = 0.0;
    for (const auto& f : dab.functionals) lv_max = std::max(lv_max, std::abs(f.apply(v)));
    double radius = 0.01 * (1.0 - inactive_max) / lv_max;
    std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
    for (int k = 0; k < 8; ++k) {
      cplx eps = std::polar(radius, ang(rng));
      CHECK_THAT(minkowski(dab, q + eps * v), Catch::Matchers::WithinAbs(1.0, 1e-9));
    }
    // along any non-kernel direction some phase leaves the body
    C2 u = random_unit_vector(rng);
    if (std::abs(dab.functionals[face.active_index].apply(u)) < 1e-3) continue;
    bool escaped = false;
    for (int k = 0; k < 16; ++k) {
      cplx eps = std::polar(1e-3, 2 * M_PI * k / 16.0);
      if (minkowski(dab, q + eps * u) > 1.0 + 1e-7) { escaped = true; break; }
    }
    CHECK(escaped);
  }
}

TEST_CASE("minkowski equals the caratheodory metric") {
  std::mt19937_64 rng(23);
  for (const DomainSpec& spec : {make_bidisc(), make_dab(cplx(0.6), cplx(0.6))}) {
    for (int trial = 0; trial < 100; ++trial) {
      C2 p = random_point(rng, spec);
      C2 x = random_unit_vector(rng);
      IndicatrixModel ind = build_indicatrix(spec, p);
      CHECK_THAT(minkowski(ind, x),
                 Catch::Matchers::WithinAbs(caratheodory_metric(spec, p, x), 1e-12));
    }
  }
}
