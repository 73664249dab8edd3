#include <doctest.h>

#include <array>
#include <cmath>
#include <deque>
#include <map>

#include "horocp/error.hpp"
#include "horocp/group.hpp"
#include "horocp/length.hpp"
#include "horocp/random.hpp"

using namespace horocp;

namespace {

using Mat3 = std::array<std::array<std::int64_t, 3>, 3>;

Mat3 unitriangular(const Element& e) {
  return {{{1, e.coords[0], e.coords[2]}, {0, 1, e.coords[1]}, {0, 0, 1}}};
}

Mat3 mul(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Plain BFS over H3 with a std::map, independent of the library's tables.
std::map<std::array<std::int64_t, 3>, int> brute_h3(int radius) {
  using Key = std::array<std::int64_t, 3>;
  std::map<Key, int> dist{{Key{0, 0, 0}, 0}};
  std::deque<Key> q{Key{0, 0, 0}};
  const std::array<Key, 4> gens{Key{1, 0, 0}, Key{-1, 0, 0}, Key{0, 1, 0}, Key{0, -1, 0}};
  while (!q.empty()) {
    Key k = q.front();
    q.pop_front();
    if (dist[k] == radius) continue;
    for (const auto& s : gens) {
      Key n{k[0] + s[0], k[1] + s[1], k[2] + s[2] + k[0] * s[1]};
      if (!dist.count(n)) {
        dist[n] = dist[k] + 1;
        q.push_back(n);
      }
    }
  }
  return dist;
}

}  // namespace

TEST_CASE("group laws on every kind") {
  const GroupSpec h3 = GroupSpec::heisenberg3();
  CHECK(h3.multiply(h3.element({1, 0, 0}), h3.element({0, 1, 0})) == h3.element({1, 1, 1}));
  CHECK(h3.commutator(h3.element({1, 0, 0}), h3.element({0, 1, 0})) == h3.element({0, 0, 1}));

  const GroupSpec z2 = GroupSpec::free_abelian(2);
  CHECK(z2.inverse(z2.element({3, -2})) == z2.element({-3, 2}));

  const GroupSpec z4 = GroupSpec::finite_cyclic(4);
  CHECK(z4.multiply(z4.element({3}), z4.element({2})) == z4.element({1}));
  CHECK(z4.element({-1}).coords[0] == 3);

  Rng rng(11);
  for (const auto& g : {h3, z2, GroupSpec::free_abelian_times_cyclic(2, 3), z4}) {
    auto rnd = [&] {
      std::vector<std::int64_t> c(g.coordinate_count());
      for (auto& v : c) v = rng.integer(-5, 5);
      return g.element(c);
    };
    for (int i = 0; i < 50; ++i) {
      const Element a = rnd(), b = rnd(), c = rnd();
      CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
      CHECK(g.multiply(a, g.inverse(a)) == g.identity());
      CHECK(g.multiply(g.identity(), a) == a);
    }
  }
}

TEST_CASE("H3 product matches unitriangular matrices") {
  const GroupSpec h3 = GroupSpec::heisenberg3();
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const Element a = h3.element({rng.integer(-9, 9), rng.integer(-9, 9), rng.integer(-9, 9)});
    const Element b = h3.element({rng.integer(-9, 9), rng.integer(-9, 9), rng.integer(-9, 9)});
    CHECK(unitriangular(h3.multiply(a, b)) == mul(unitriangular(a), unitriangular(b)));
  }
}

TEST_CASE("abelianization ranks and generator sets") {
  CHECK(GroupSpec::free_abelian(3).abelianization_rank() == 3);
  CHECK(GroupSpec::free_abelian_times_cyclic(2, 5).abelianization_rank() == 2);
  CHECK(GroupSpec::heisenberg3().abelianization_rank() == 2);
  CHECK(GroupSpec::finite_cyclic(6).abelianization_rank() == 0);
  CHECK(with_named_generators(parse_group("Z2"), "hexagonal").generators().size() == 6);
  CHECK(with_named_generators(parse_group("Z2"), "(2,1)").generators().size() == 2);
  CHECK(parse_group("Z^3").rank() == 3);
  CHECK_THROWS_AS(parse_group("Q"), Error);
  CHECK_THROWS_AS(GroupSpec::free_abelian(2).element({1}), Error);
}

TEST_CASE("word lengths against closed forms") {
  const GroupSpec z2 = GroupSpec::free_abelian(2);
  const auto len = LengthFunction::word_length(z2);
  CHECK(len(z2.element({3, -2})) == 5);
  auto ball = len.ball(6);
  for (std::size_t i = 0; i < ball->size(); ++i) {
    const auto& c = ball->element(i).coords;
    CHECK(ball->length(i) == std::llabs(c[0]) + std::llabs(c[1]));
  }
  for (int r = 0; r <= 8; ++r) CHECK(len.ball(r)->size() == static_cast<std::size_t>(2 * r * r + 2 * r + 1));

  const auto lz = LengthFunction::word_length(parse_group("Z"));
  CHECK(lz.ball(3)->size() == 7);
  CHECK(lz.ball(3)->element(0) == parse_group("Z").identity());

  // Hexagonal: max(|x|,|y|) on same-sign points, |x|+|y| otherwise.
  const GroupSpec hex = with_named_generators(z2, "hexagonal");
  const auto lh = LengthFunction::word_length(hex);
  for (std::int64_t x = -6; x <= 6; ++x) {
    for (std::int64_t y = -6; y <= 6; ++y) {
      const double want = x * y >= 0 ? std::max(std::llabs(x), std::llabs(y)) : std::llabs(x) + std::llabs(y);
      CHECK(lh(hex.element({x, y})) == want);
    }
  }
}

TEST_CASE("H3 ball agrees with an independent BFS") {
  const GroupSpec h3 = GroupSpec::heisenberg3();
  const auto len = LengthFunction::word_length(h3);
  const auto brute = brute_h3(7);
  auto ball = len.ball(7);
  CHECK(ball->size() == brute.size());
  for (const auto& [k, d] : brute) CHECK(len(h3.element({k[0], k[1], k[2]})) == d);
  CHECK(len(h3.element({0, 0, 1})) == 4);
}

TEST_CASE("ball order is (length, coordinates)") {
  const auto len = LengthFunction::word_length(parse_group("Z"));
  auto ball = len.ball(3);
  std::vector<std::int64_t> order;
  for (const auto& e : ball->elements()) order.push_back(e.coords[0]);
  CHECK(order == std::vector<std::int64_t>{0, -1, 1, -2, 2, -3, 3});
}

TEST_CASE("ceil_sqrt is exact") {
  for (std::int64_t n = 0; n < 20000; ++n) {
    const std::int64_t r = ceil_sqrt(n);
    CHECK(r * r >= n);
    if (r > 0) CHECK((r - 1) * (r - 1) < n);
  }
  CHECK(ceil_sqrt(4'000'000'000'000'000'000LL) == 2'000'000'000LL);
}

TEST_CASE("length axioms") {
  CHECK(check_length_axioms(LengthFunction::word_length(parse_group("Z")), 10).max_violation == 0);
  CHECK(check_length_axioms(LengthFunction::norm_restriction(parse_group("Z2"), NormSpec::parse("l1")), 6)
            .max_violation == 0);
  const GroupSpec z = parse_group("Z");
  std::vector<std::pair<Element, double>> table;
  for (std::int64_t k = -6; k <= 6; ++k) table.emplace_back(z.element({k}), std::llabs(k));
  table[8].second = 9;  // corrupt l(2)
  const auto rep = check_length_axioms(LengthFunction::explicit_table(z, table), 6);
  CHECK(rep.max_violation > 0);
}

TEST_CASE("norm restrictions") {
  const GroupSpec z2 = parse_group("Z2");
  CHECK(LengthFunction::norm_restriction(z2, NormSpec::parse("linf"))(z2.element({3, -5})) == 5);
  CHECK(LengthFunction::norm_restriction(z2, NormSpec::parse("l2"))(z2.element({3, 4})) ==
        doctest::Approx(5.0).epsilon(1e-15));
  CHECK_THROWS_AS(LengthFunction::norm_restriction(parse_group("H3"), NormSpec::parse("l1")), Error);
}
