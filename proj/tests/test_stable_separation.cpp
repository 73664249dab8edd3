#include <doctest.h>

#include <cmath>

#include "horocp/error.hpp"
#include "horocp/random.hpp"
#include "horocp/separation.hpp"
#include "horocp/stable_norm.hpp"

using namespace horocp;

TEST_CASE("asymptotic lengths") {
  const GroupSpec z = parse_group("Z");
  const auto r = asymptotic_length(z.element({5}), LengthFunction::word_length(z), 40);
  CHECK(r.value == 5);
  CHECK(r.fekete_gap == 0);

  const GroupSpec h3 = parse_group("H3");
  const auto lh = LengthFunction::word_length(h3);
  const auto c9 = asymptotic_length(h3.element({0, 0, 1}), lh, 9);
  CHECK(c9.value == doctest::Approx(12.0 / 9.0).epsilon(1e-15));
  const auto c4 = asymptotic_length(h3.element({0, 0, 1}), lh, 4);
  CHECK(c9.value < c4.value);
  CHECK_THROWS_AS(asymptotic_length(h3.element({1, 0, 0}), lh, 4), Error);

  const GroupSpec hex = with_named_generators(parse_group("Z2"), "hexagonal");
  CHECK(asymptotic_length(hex.element({1, -1}), LengthFunction::word_length(hex), 40).value == 2);
}

TEST_CASE("dual polytope norm") {
  const auto diamond = facets(parse_group("Z2"));
  CHECK(stable_norm_dual(to_rational({3, -2}), diamond) == 5);
  const auto hex = facets(with_named_generators(parse_group("Z2"), "hexagonal"));
  CHECK(stable_norm_dual(to_rational({2, 1}), hex) == 2);
  CHECK(stable_norm_dual(to_rational({0, 0}), hex) == 0);
  CHECK_THROWS_AS(stable_norm_dual(to_rational({1}), {}), Error);

  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const std::vector<std::int64_t> x{rng.integer(-20, 20), rng.integer(-20, 20)};
    const std::int64_t k = rng.integer(-9, 9);
    const Rational lhs = stable_norm_dual(to_rational({k * x[0], k * x[1]}), hex);
    CHECK(lhs == stable_norm_dual(to_rational(x), hex) * (k < 0 ? -k : k));
    // Bi-Lipschitz lower bound with C_S = max_s |s|_1 = 2.
    CHECK(stable_norm_dual(to_rational(x), hex) * 2 >= std::llabs(x[0]) + std::llabs(x[1]));
  }
}

TEST_CASE("Fekete estimates meet the dual norm") {
  for (const std::string gens : {"standard", "diamond", "hexagonal"}) {
    const GroupSpec g = with_named_generators(parse_group("Z2"), gens);
    const auto len = LengthFunction::word_length(g);
    const auto fs = facets(g);
    Rng rng(derive_seed(1, gens));
    for (int i = 0; i < 10; ++i) {
      const std::vector<std::int64_t> x{rng.integer(-5, 5), rng.integer(-5, 5)};
      const auto sn = asymptotic_length(g.element(x), len, 40);
      CHECK(std::fabs(sn.value - to_double(stable_norm_dual(to_rational(x), fs))) <= sn.fekete_gap + 1e-9);
      CHECK(sn.value <= len(g.element(x)));
    }
  }
}

TEST_CASE("uniform deviation") {
  const GroupSpec z = parse_group("Z");
  const auto lz = LengthFunction::word_length(z);
  const auto fz = facets(z);
  CHECK(uniform_deviation(z.element({1}), 7, *lz.ball(10), lz, fz).deviation == 0);

  const GroupSpec hex = with_named_generators(parse_group("Z2"), "hexagonal");
  const auto lh = LengthFunction::word_length(hex);
  const auto rep = uniform_deviation(hex.element({1, 0}), 8, *lh.ball(12), lh, facets(hex));
  CHECK(rep.within_envelope);
  CHECK(rep.deviation <= 4 * rep.c / 8 + 1e-12);

  // The central length has zero asymptotic norm, so phi does not flatten out.
  const auto central = LengthFunction::central_sqrt_formula();
  const std::vector<SupportFunctional> zero{{RationalVector{Rational(0)}, {}}};
  const auto dev = uniform_deviation(z.element({1}), 4, *central.ball(12), central, zero);
  CHECK(dev.deviation >= 1);
}

TEST_CASE("separation certificates") {
  for (int m = 1; m <= 3; ++m) {
    const auto cert = separation_certificate(LengthFunction::word_length(GroupSpec::free_abelian(m)));
    CHECK(cert.separated);
    CHECK(cert.rank == static_cast<std::size_t>(m));
    CHECK(cert.invertible_rows.size() == static_cast<std::size_t>(m));
    RationalMatrix sub;
    for (auto r : cert.invertible_rows) sub.push_back(cert.functionals[r].coefficients);
    CHECK(rank(sub) == static_cast<std::size_t>(m));
  }
  const auto h3 = separation_certificate(LengthFunction::word_length(parse_group("H3")));
  CHECK(h3.separated);
  CHECK(h3.rank == 2);

  const auto norm = separation_certificate(
      LengthFunction::norm_restriction(parse_group("Z2"), NormSpec::parse("l2")));
  CHECK(norm.separated);

  const auto central = separation_certificate(LengthFunction::central_sqrt_formula());
  CHECK_FALSE(central.separated);
  CHECK(central.witness == SeparationCertificate::Witness::kSublinearityFailure);
  REQUIRE(central.sublinearity);
  CHECK(central.sublinearity->ratio == 0.04);
  CHECK(central.sublinearity->vanishing);
}

TEST_CASE("functionals are homomorphisms and scale with the length") {
  const auto cert = separation_certificate(LengthFunction::word_length(parse_group("Z2")));
  Rng rng(8);
  for (const auto& f : cert.functionals) {
    const std::vector<std::int64_t> a{rng.integer(-9, 9), rng.integer(-9, 9)};
    const std::vector<std::int64_t> b{rng.integer(-9, 9), rng.integer(-9, 9)};
    CHECK(f(std::vector<std::int64_t>{a[0] + b[0], a[1] + b[1]}) == f(a) + f(b));
  }
  const auto doubled = separation_certificate(LengthFunction::word_length(parse_group("Z2")).scaled(2));
  CHECK(doubled.rank == cert.rank);
  CHECK(doubled.separated);
  for (std::size_t i = 0; i < cert.functionals.size(); ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(doubled.functionals[i].coefficients[j] == 2 * cert.functionals[i].coefficients[j]);
    }
  }
  const auto twice = separation_certificate(LengthFunction::central_sqrt_formula().scaled(2));
  CHECK_FALSE(twice.separated);
  CHECK(twice.sublinearity->ratio == 0.08);
}

TEST_CASE("sublinearity witness") {
  const GroupSpec z = parse_group("Z");
  const auto lin = sublinearity_witness(LengthFunction::word_length(z), z.element({1}), 1000);
  CHECK(lin.ratio == 1);
  CHECK_FALSE(lin.vanishing);
  CHECK_THROWS_AS(sublinearity_witness(LengthFunction::word_length(parse_group("Z_5")),
                                       parse_group("Z_5").element({1}), 10),
                  Error);
  std::vector<std::pair<Element, double>> table;
  for (std::int64_t k = -3; k <= 3; ++k) table.emplace_back(z.element({k}), std::llabs(k));
  try {
    separation_certificate(LengthFunction::explicit_table(z, table), std::nullopt, 3);
    FAIL("expected undecidable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUndecidable);
  }
}
