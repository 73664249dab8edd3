#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/trigamma.hpp>

#include "horocp/error.hpp"
#include "horocp/lemmas.hpp"
#include "horocp/random.hpp"

using namespace horocp;

namespace {

Matrix random_matrix(Rng& rng, Eigen::Index d) {
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
  return m;
}

Matrix hermitian(Rng& rng, Eigen::Index d) {
  const Matrix m = random_matrix(rng, d);
  return (m + m.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("report verdicts") {
  CheckReport r;
  r.residual = 1e-13;
  r.slack = -1e-10;
  CHECK(r.finalize().pass);
  r.residual = 1e-11;
  CHECK_FALSE(r.finalize().pass);
  r.residual = 0;
  r.slack = -1e-8;
  CHECK_FALSE(r.finalize().pass);

  CheckReport a, b;
  a.residual = 1e-14;
  a.slack = 3;
  b.residual = 2e-14;
  b.slack = 1;
  a.absorb(b);
  CHECK(*a.residual == 2e-14);
  CHECK(*a.slack == 1);
  const auto j = a.finalize().to_json();
  CHECK(j.contains("pass"));
}

TEST_CASE("Ozawa-Rieffel factor matches the trigamma function") {
  // sum_{|k| > N} (k + L)^-2 = psi_1(N + 1 + L) + psi_1(N + 1 - L).
  for (std::int64_t n : {0, 1, 2, 3, 10, 100}) {
    for (double l : {0.0, 0.25, -0.5, 1.0}) {
      if (static_cast<double>(n) < std::fabs(l)) continue;
      if (n == 0 && l != 0) continue;
      const double nn = static_cast<double>(n);
      const double expect = std::sqrt(boost::math::trigamma(nn + 1 + l) +
                                      boost::math::trigamma(nn + 1 - l));
      CHECK(ozawa_rieffel_factor(l, n) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(ozawa_rieffel_factor(2, 1), Error);
}

TEST_CASE("Ozawa-Rieffel on lambda_2") {
  const GroupSpec z = parse_group("Z");
  CrossedElement x(z, 1);
  x.add(z.element({2}), Matrix::Identity(1, 1));
  OzawaRieffelParams p;
  p.phi = {1};
  p.n = 1;
  p.radius = 6;
  const auto rep = check_ozawa_rieffel(LengthFunction::word_length(z), x,
                                       ActionSpec::trivial(z, 1), p);
  CHECK(rep.pass);
  CHECK(rep.details["lhs"].get<double>() == doctest::Approx(1).epsilon(1e-10));
  CHECK(rep.details["rhs"].get<double>() == doctest::Approx(2).epsilon(1e-10));
  const double factor = std::sqrt(2 * (M_PI * M_PI / 6 - 1));
  CHECK(*rep.slack == doctest::Approx(2 * factor - 1).epsilon(1e-9));

  // Nothing beyond N = 2, so the left side vanishes.
  p.n = 2;
  const auto none = check_ozawa_rieffel(LengthFunction::word_length(z), x,
                                        ActionSpec::trivial(z, 1), p);
  CHECK(none.details["lhs"].get<double>() == 0);
}

TEST_CASE("Ozawa-Rieffel on random elements of Z2") {
  const GroupSpec z2 = parse_group("Z2");
  const auto len = LengthFunction::word_length(z2);
  Rng rng(21);
  for (int t = 0; t < 3; ++t) {
    CrossedElement x(z2, 1);
    for (int k = 0; k < 4; ++k) {
      x.add(z2.element({rng.integer(-2, 2), rng.integer(-2, 2)}), random_matrix(rng, 1));
    }
    OzawaRieffelParams p;
    p.phi = {1, -1};
    p.n = 1;
    p.l = 0.5;
    p.radius = 4;
    CHECK(check_ozawa_rieffel(len, x, ActionSpec::trivial(z2, 1), p).pass);
  }
}

TEST_CASE("commutator identity") {
  const GroupSpec h3 = parse_group("H3");
  TruncatedHilbert h(LengthFunction::word_length(h3), 5, 2);
  Rng rng(2);
  CrossedElement x(h3, 2);
  x.add(h3.element({1, 0, 0}), random_matrix(rng, 2));
  x.add(h3.element({0, -1, 0}), random_matrix(rng, 2));
  x.add(h3.element({1, 1, 1}), random_matrix(rng, 2));
  const auto rep = check_commutator_identity(h, x, ActionSpec::trivial(h3, 2));
  CHECK(rep.pass);
  CHECK(*rep.residual <= 1e-12);
}

TEST_CASE("cocycle") {
  const GroupSpec h3 = parse_group("H3");
  const auto len = LengthFunction::word_length(h3);
  const auto ball = len.ball(6);
  std::vector<std::pair<Element, Element>> pairs{
      {h3.element({1, 0, 0}), h3.element({0, 1, 0})},
      {h3.element({0, 0, 1}), h3.element({-1, 1, 0})}};
  const auto rep = check_cocycle(pairs, *ball, len);
  CHECK(rep.pass);
  CHECK(*rep.residual == 0);
}

TEST_CASE("conditional expectation contracts both norms") {
  const GroupSpec z = parse_group("Z");
  TruncatedHilbert h(LengthFunction::word_length(z), 10, 2);
  Rng rng(4);
  CrossedElement x(z, 2);
  for (int k = -2; k <= 2; ++k) x.add(z.element({k}), random_matrix(rng, 2));
  const auto rep = check_conditional_expectation(h, x, z.element({1}), SubgroupPredicate::multiples(2),
                                                 hermitian(rng, 2), ActionSpec::trivial(z, 2));
  CHECK(rep.pass);
}

TEST_CASE("isomorphism unitary") {
  const GroupSpec z = parse_group("Z");
  const auto len = LengthFunction::word_length(z);
  const double r = 4;
  const auto ball = len.ball(r);
  Rng rng(6);
  std::vector<double> f;
  for (std::size_t i = 0; i < ball->size(); ++i) f.push_back(rng.normal());
  for (std::int64_t g : {0, 1, -2}) {
    const auto rep = check_isomorphism_unitary(len, r, random_matrix(rng, 2), f, z.element({g}),
                                               ActionSpec::trivial(z, 2));
    CHECK(rep.pass);
    CHECK(*rep.residual <= 1e-12);
  }
}

TEST_CASE("coefficient bounds") {
  const GroupSpec z = parse_group("Z");
  TruncatedHilbert h(LengthFunction::word_length(z), 6, 2);
  Rng rng(9);
  CrossedElement x(z, 2);
  x.add(z.identity(), random_matrix(rng, 2));
  x.add(z.element({1}), random_matrix(rng, 2));
  x.add(z.element({-2}), random_matrix(rng, 2));
  const auto rep = check_coefficient_bounds(h, x, z.element({1}), hermitian(rng, 2),
                                            ActionSpec::trivial(z, 2));
  CHECK(rep.pass);
  CHECK(rep.details["terms"].size() == 3);

  CrossedElement far(z, 2);
  far.add(z.element({5}), random_matrix(rng, 2));
  TruncatedHilbert small(LengthFunction::word_length(z), 4, 2);
  CHECK_THROWS_AS(check_coefficient_bounds(small, far, z.identity(), hermitian(rng, 2),
                                           ActionSpec::trivial(z, 2)),
                  Error);
}

TEST_CASE("noncommutative torus") {
  NcTorusParams p;
  p.q = 3;
  p.n_min = -4;
  p.n_max = 4;
  p.radius = 8;
  const auto rep = check_equicontinuity_nctorus(p);
  CHECK(rep.pass);
  CHECK(*rep.residual < 1e-12);
  // x = u lambda_1 + u^* lambda_-1: each term contributes ||[M, lambda_±1]|| = 1.
  CHECK(rep.details["bound"].get<double>() == doctest::Approx(2).epsilon(1e-9));
  CHECK(rep.details["max_lhs"].get<double>() <= 2 + 1e-9);

  p.q = 5;
  p.p = 2;
  CHECK(check_equicontinuity_nctorus(p).pass);
}

TEST_CASE("AF triple") {
  AfParams p;
  const auto rep = check_af_triple(p);
  CHECK(rep.pass);
  const auto ranks = rep.details["rank_traces"];
  REQUIRE(ranks.size() == 6);
  CHECK(ranks[0].get<double>() == doctest::Approx(1).epsilon(1e-12));
  for (std::size_t i = 1; i < 6; ++i) {
    CHECK(ranks[i].get<double>() == doctest::Approx(std::ldexp(1.0, static_cast<int>(i) - 1)).epsilon(1e-12));
  }
  CHECK(rep.details["dimension"].get<int>() == 32);

  AfParams mixed;
  mixed.orders = {3, 2, 4};
  const auto m = check_af_triple(mixed);
  CHECK(m.pass);
  CHECK(m.details["rank_traces"][2].get<double>() == doctest::Approx(3).epsilon(1e-12));

  AfParams bad;
  bad.orders = {1};
  CHECK_THROWS_AS(check_af_triple(bad), Error);
}
