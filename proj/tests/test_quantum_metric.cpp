#include <doctest.h>

#include <cmath>

#include "horocp/error.hpp"
#include "horocp/quantum_metric.hpp"

using namespace horocp;

namespace {

double expectation(const StateSpec& s, std::int64_t n, const Matrix& a) {
  return (s.rho(n) * a).trace().real();
}

}  // namespace

TEST_CASE("cyclic triple structure") {
  const CyclicTriple t(4);
  CHECK(t.order() == 4);
  CHECK(t.lengths() == std::vector<double>{0, 1, 2, 1});
  // Hermitian basis of C*(Z_4) without the identity has real dimension 3.
  CHECK(t.basis().size() == 3);
  for (const auto& b : t.basis()) CHECK(max_abs(b - b.adjoint()) < 1e-15);
  CHECK(max_abs(t.lambda(1) * t.lambda(3) - Matrix::Identity(4, 4)) < 1e-15);
  CHECK(t.seminorm({0, 0, 0}) == 0);
  CHECK(t.seminorm({2, 0, 0}) == doctest::Approx(2 * t.seminorm({1, 0, 0})).epsilon(1e-12));

  CHECK_THROWS_AS(CyclicTriple(3, {0, 0, 0}), Error);
  CHECK_THROWS_AS(CyclicTriple(1), Error);
}

TEST_CASE("states") {
  const Matrix r = StateSpec::character(1).rho(3);
  CHECK(r.trace().real() == doctest::Approx(1).epsilon(1e-14));
  CHECK(max_abs(r * r - r) < 1e-14);
  Vector v(3);
  v << 1, 0, 0;
  CHECK(StateSpec::vector_state(v).rho(3)(0, 0).real() == 1);
  Vector unnormalized(3);
  unnormalized << 1, 1, 0;
  CHECK_THROWS_AS(StateSpec::vector_state(unnormalized).rho(3), Error);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 2;
  neg(1, 1) = -1;
  CHECK_THROWS_AS(StateSpec::density_matrix(neg).rho(2), Error);
  CHECK_THROWS_AS(StateSpec::vector_state(v).rho(4), Error);
}

TEST_CASE("two point space") {
  // On Z_2 with D = M_l the only non-identity direction is lambda_1, with
  // ||[D, lambda_1]|| = 1 and chi_0 - chi_1 = 2 on it.
  const CyclicTriple t(2);
  const auto r = mk_distance(t, StateSpec::character(0), StateSpec::character(1));
  CHECK(r.converged);
  CHECK(r.lower_bound == doctest::Approx(2).epsilon(1e-9));
  const CyclicTriple scaled(2, {}, 2.0);
  CHECK(mk_distance(scaled, StateSpec::character(0), StateSpec::character(1)).lower_bound ==
        doctest::Approx(1).epsilon(1e-9));
  CHECK(mk_distance(t, StateSpec::character(1), StateSpec::character(1)).lower_bound ==
        doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("metric properties on Z_5") {
  const CyclicTriple t(5);
  const auto d01 = mk_distance(t, StateSpec::character(0), StateSpec::character(1)).lower_bound;
  const auto d10 = mk_distance(t, StateSpec::character(1), StateSpec::character(0)).lower_bound;
  const auto d12 = mk_distance(t, StateSpec::character(1), StateSpec::character(2)).lower_bound;
  const auto d02 = mk_distance(t, StateSpec::character(0), StateSpec::character(2)).lower_bound;
  CHECK(d01 == doctest::Approx(d10).epsilon(1e-8));
  CHECK(d02 <= d01 + d12 + 1e-8);
  CHECK(d01 > 0);
}

TEST_CASE("witness is feasible and attains the bound") {
  const CyclicTriple t(4, {0, 1, 3, 1});
  const auto psi = StateSpec::character(0);
  const auto psi2 = StateSpec::character(3);
  const auto r = mk_distance(t, psi, psi2);
  CHECK(r.witness_seminorm <= 1 + 1e-9);
  CHECK(t.seminorm(r.witness) == doctest::Approx(r.witness_seminorm).epsilon(1e-9));
  const double gap =
      std::fabs(expectation(psi, 4, r.witness_matrix) - expectation(psi2, 4, r.witness_matrix));
  CHECK(gap == doctest::Approx(r.lower_bound).epsilon(1e-9));
  CHECK(max_abs(r.witness_matrix - t.combine(r.witness)) < 1e-12);
}

TEST_CASE("ascent agrees with brute force") {
  for (auto [n, j] : {std::pair<std::int64_t, std::int64_t>{3, 1}, {4, 2}}) {
    const CyclicTriple t(n);
    const auto a = mk_distance(t, StateSpec::character(0), StateSpec::character(j));
    const double b = mk_brute_force(t, StateSpec::character(0), StateSpec::character(j));
    CHECK(a.lower_bound >= b - 1e-9);
    CHECK(std::fabs(a.lower_bound - b) <= 1e-4);
  }
  CHECK_THROWS_AS(mk_brute_force(CyclicTriple(9), StateSpec::character(0), StateSpec::character(1)),
                  Error);
}

TEST_CASE("determinism") {
  const CyclicTriple t(6);
  MkOptions opt;
  opt.seed = 17;
  const auto a = mk_distance(t, StateSpec::character(0), StateSpec::character(2), opt);
  const auto b = mk_distance(t, StateSpec::character(0), StateSpec::character(2), opt);
  CHECK(a.lower_bound == b.lower_bound);
  CHECK(a.witness == b.witness);
}
