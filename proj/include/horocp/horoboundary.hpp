#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "horocp/length.hpp"
#include "horocp/rational.hpp"

namespace horocp {

// h -> l(h) - l(g^-1 h) on the elements of a ball.
struct PhiFunction {
  Element g;
  std::shared_ptr<const BallTable> ball;
  std::vector<double> values;  // indexed like ball->elements()

  double at(const Element& h) const;
  double max_abs() const;
};

PhiFunction phi(const Element& g, std::shared_ptr<const BallTable> ball,
                const LengthFunction& length);

// max_x |phi_{gh}(x) - phi_h(g^-1 x) - phi_g(x)| over the ball.
double cocycle_defect(const Element& g, const Element& h, const BallTable& ball,
                      const LengthFunction& length);

struct SupportFunctional {
  RationalVector coefficients;
  std::vector<std::vector<std::int64_t>> facet;  // p_G(s) with sigma = 1, sorted

  Rational operator()(const RationalVector& x) const { return dot(coefficients, x); }
  Rational operator()(const std::vector<std::int64_t>& x) const {
    return dot(coefficients, to_rational(x));
  }
};

// Facets of conv(p_G(S)), each normalized to {sigma = 1}. Empty when the
// abelianization rank is 0. Throws kDegenerate if p_G(S) lies in a hyperplane.
std::vector<SupportFunctional> facets(const GroupSpec& group);

struct RaySpec {
  enum class Kind { kLatticeDirection, kWordRepetition };
  Kind kind = Kind::kLatticeDirection;
  GroupSpec group = GroupSpec::free_abelian(1);
  // Lattice direction: rational v (or approximate real v when `real_direction`
  // is set), sampled at `steps` times.
  RationalVector direction;
  std::vector<double> real_direction;
  // Word repetition: letters of w, each a generator of the group.
  std::vector<Element> word;
  std::size_t steps = 32;

  static RaySpec lattice(const GroupSpec& group, RationalVector v, std::size_t steps);
  static RaySpec lattice_real(const GroupSpec& group, std::vector<double> v, std::size_t steps);
  static RaySpec word_repetition(const GroupSpec& group, std::vector<Element> word,
                                 std::size_t prefixes);
};

struct RayPoint {
  double time = 0;
  Element point;
};

// For lattice rays x_i approximates t_i v with |x_i - t_i v|_inf < 1/i; for
// word rays the schedule is the prefixes of w w w ... of length 1..steps.
std::vector<RayPoint> ray_schedule(const RaySpec& ray);

struct BusemannEstimate {
  Element g;
  double value = 0;
  double tail_variation = 0;
  std::vector<double> trace;
  // Lattice rays whose direction lies in the open cone over exactly one facet.
  std::optional<RationalVector> facet_functional;
  std::optional<Rational> facet_value;  // sigma_F(p_G(g))
};

BusemannEstimate busemann_along_ray(const RaySpec& ray, const Element& g,
                                    const LengthFunction& length);

struct GeodesicReport {
  double defect = 0;          // max |d(x_t, x_s) + d(x_s, x_0) - t|
  bool prefixes_geodesic = true;  // word rays: l(prefix of length n) = n
  std::size_t pairs = 0;
};

// Word rays use the prefix length as time; lattice rays use l(x_i).
GeodesicReport check_ray_geodesic(const RaySpec& ray, std::size_t horizon,
                                  const LengthFunction& length);

}  // namespace horocp
