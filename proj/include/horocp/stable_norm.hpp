#pragma once

#include <cstdint>
#include <vector>

#include "horocp/horoboundary.hpp"
#include "horocp/length.hpp"

namespace horocp {

struct StableNormResult {
  double value = 0;       // min_{i <= I} l(i g) / i
  double fekete_gap = 0;  // l(I g) / I - value
  std::int64_t horizon = 0;
  std::vector<double> ratios;  // l(i g) / i for i = 1..I
};

// g must lie in an abelian group or be central in H3.
StableNormResult asymptotic_length(const Element& g, const LengthFunction& length,
                                   std::int64_t horizon = 40);

// max_F sigma_F(x): the polytope norm whose unit ball is conv(p_G(S)).
Rational stable_norm_dual(const RationalVector& x, const std::vector<SupportFunctional>& functionals);

struct DeviationReport {
  double deviation = 0;  // max_h |phi^l_{ig}(h) - phi^as_{ig}(h)| / i
  double c = 0;          // max |l - l^as| over every point evaluated
  double envelope = 0;   // 4 C / i
  bool within_envelope = true;
  std::size_t points = 0;
};

// l^as(h) := stable_norm_dual(p_G(h)). Certified only over the given ball.
DeviationReport uniform_deviation(const Element& g, std::int64_t i, const BallTable& ball,
                                  const LengthFunction& length,
                                  const std::vector<SupportFunctional>& functionals);

}  // namespace horocp
