#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "horocp/error.hpp"
#include "horocp/horoboundary.hpp"
#include "horocp/random.hpp"

using namespace horocp;

TEST_CASE("phi examples") {
  const GroupSpec z = parse_group("Z");
  const auto lz = LengthFunction::word_length(z);
  const auto f = phi(z.element({2}), lz.ball(6), lz);
  CHECK(f.at(z.element({5})) == 2);
  CHECK(f.at(z.identity()) == -2);

  const GroupSpec z2 = parse_group("Z2");
  const auto l2 = LengthFunction::word_length(z2);
  const auto g = phi(z2.element({1, 0}), l2.ball(5), l2);
  CHECK(g.at(z2.element({-3, 0})) == -1);
  CHECK(g.max_abs() == 1);

  const auto e = phi(z2.identity(), l2.ball(4), l2);
  CHECK(e.max_abs() == 0);
}

TEST_CASE("phi is bounded by l(g) and attains it at g") {
  const GroupSpec h3 = parse_group("H3");
  const auto len = LengthFunction::word_length(h3);
  auto ball = len.ball(5);
  for (const auto& g : len.ball(3)->elements()) {
    const auto f = phi(g, ball, len);
    CHECK(f.max_abs() <= len(g));
    CHECK(f.at(g) == len(g));
  }
}

TEST_CASE("cocycle defect vanishes") {
  const GroupSpec z2 = parse_group("Z2");
  const auto l2 = LengthFunction::word_length(z2);
  CHECK(cocycle_defect(z2.element({1, 0}), z2.element({0, 1}), *l2.ball(8), l2) == 0);
  CHECK(cocycle_defect(z2.identity(), z2.identity(), *l2.ball(8), l2) == 0);
  const GroupSpec h3 = parse_group("H3");
  const auto lh = LengthFunction::word_length(h3);
  CHECK(cocycle_defect(h3.element({1, 0, 0}), h3.element({0, 1, 0}), *lh.ball(6), lh) == 0);
}

TEST_CASE("facets of standard polytopes") {
  const auto diamond = facets(parse_group("Z2"));
  REQUIRE(diamond.size() == 4);
  bool found = false;
  for (const auto& f : diamond) {
    if (f.coefficients == RationalVector{1, 1}) {
      found = true;
      CHECK(f.facet.size() == 2);
    }
  }
  CHECK(found);

  const auto seg = facets(parse_group("Z"));
  REQUIRE(seg.size() == 2);
  CHECK(seg[0].coefficients == RationalVector{1});
  CHECK(seg[1].coefficients == RationalVector{-1});

  CHECK(facets(parse_group("H3")).size() == 4);
  CHECK(facets(with_named_generators(parse_group("Z2"), "hexagonal")).size() == 6);
  CHECK(facets(parse_group("Z^3")).size() == 8);
  CHECK(facets(parse_group("Z_5")).empty());
}

TEST_CASE("facet functionals are tight and come in pairs") {
  const GroupSpec g = with_named_generators(parse_group("Z2"), "(1,0);(0,1);(1,1);(2,-1)");
  const auto fs = facets(g);
  REQUIRE(!fs.empty());
  for (const auto& f : fs) {
    for (const auto& s : g.generators()) {
      const auto p = g.abelian_projection(s);
      const bool on_facet = std::find(f.facet.begin(), f.facet.end(), p) != f.facet.end();
      CHECK(f(p) <= 1);
      CHECK((f(p) == 1) == on_facet);
    }
  }
  for (const auto& f : facets(parse_group("Z^3"))) {
    RationalVector neg;
    for (const auto& c : f.coefficients) neg.push_back(-c);
    bool paired = false;
    for (const auto& h : facets(parse_group("Z^3"))) paired = paired || h.coefficients == neg;
    CHECK(paired);
  }
}

TEST_CASE("degenerate polytope names its hyperplane") {
  const GroupSpec g = with_named_generators(parse_group("Z2"), "(1,1)");
  try {
    facets(g);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerate);
    CHECK(std::string(e.what()).find("1*x1 + -1*x2 = 0") != std::string::npos);
  }
}

TEST_CASE("Busemann estimates") {
  const GroupSpec z = parse_group("Z");
  const auto lz = LengthFunction::word_length(z);
  const auto b = busemann_along_ray(RaySpec::lattice(z, {Rational(1)}, 32), z.element({3}), lz);
  CHECK(b.value == 3);
  CHECK(b.tail_variation == 0);

  const GroupSpec z2 = parse_group("Z2");
  const auto l2 = LengthFunction::word_length(z2);
  const auto d = busemann_along_ray(RaySpec::lattice(z2, {Rational(1), Rational(1)}, 32),
                                    z2.element({1, 0}), l2);
  CHECK(d.value == 1);
  REQUIRE(d.facet_value);
  CHECK(*d.facet_value == 1);

  const GroupSpec h3 = parse_group("H3");
  const auto lh = LengthFunction::word_length(h3);
  const Element a = h3.element({1, 0, 0});
  const Element bb = h3.element({0, 1, 0});
  const auto w = busemann_along_ray(RaySpec::word_repetition(h3, {a, bb}, 16), a, lh);
  CHECK(w.value == 1);
}

TEST_CASE("ray geodesics") {
  const GroupSpec z = parse_group("Z");
  const auto lz = LengthFunction::word_length(z);
  CHECK(check_ray_geodesic(RaySpec::lattice(z, {Rational(1)}, 20), 20, lz).defect == 0);

  const GroupSpec h3 = parse_group("H3");
  const auto lh = LengthFunction::word_length(h3);
  const Element a = h3.element({1, 0, 0});
  const Element b = h3.element({0, 1, 0});
  const auto ab = check_ray_geodesic(RaySpec::word_repetition(h3, {a, b}, 12), 12, lh);
  CHECK(ab.defect == 0);
  CHECK(ab.prefixes_geodesic);
  for (std::int64_t k = 1; k <= 6; ++k) {
    Element p = h3.identity();
    for (std::int64_t i = 0; i < k; ++i) p = h3.multiply(p, h3.multiply(a, b));
    CHECK(lh(p) == 2 * k);
  }
  const auto back = check_ray_geodesic(RaySpec::word_repetition(h3, {a, h3.inverse(a)}, 8), 8, lh);
  CHECK(back.defect > 0);
  CHECK_FALSE(back.prefixes_geodesic);
}

TEST_CASE("irrational directions approximate the ray") {
  const GroupSpec z2 = parse_group("Z2");
  const std::vector<double> v{1.0, std::sqrt(2.0)};
  const auto sched = ray_schedule(RaySpec::lattice_real(z2, v, 8));
  REQUIRE(sched.size() == 8);
  for (std::size_t i = 0; i < sched.size(); ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(std::fabs(static_cast<double>(sched[i].point.coords[j]) - sched[i].time * v[j]) <
            1.0 / static_cast<double>(i + 1));
    }
  }
  CHECK_THROWS_AS(ray_schedule(RaySpec::lattice(parse_group("H3"), {Rational(1), Rational(0)}, 4)), Error);
}
