#include "horocp/stable_norm.hpp"

#include <algorithm>
#include <cmath>

#include "horocp/error.hpp"

namespace horocp {

StableNormResult asymptotic_length(const Element& g, const LengthFunction& length,
                                   std::int64_t horizon) {
  const GroupSpec& group = length.group();
  require(horizon >= 1, "Fekete horizon must be positive");
  if (!group.is_abelian() && !group.is_central(g)) {
    fail(ErrorCode::kGroupMismatch,
         "asymptotic length needs an abelian group or a central element; " + group.format(g) +
             " is not central in " + group.name());
  }
  StableNormResult res;
  res.horizon = horizon;
  Element cur = group.identity();
  for (std::int64_t i = 1; i <= horizon; ++i) {
    cur = group.multiply(cur, g);
    res.ratios.push_back(length(cur) / static_cast<double>(i));
  }
  res.value = *std::min_element(res.ratios.begin(), res.ratios.end());
  res.fekete_gap = res.ratios.back() - res.value;
  return res;
}

Rational stable_norm_dual(const RationalVector& x, const std::vector<SupportFunctional>& functionals) {
  require(!functionals.empty(), "stable norm needs at least one support functional");
  Rational best = functionals.front()(x);
  for (const auto& f : functionals) best = std::max(best, f(x));
  return best;
}

DeviationReport uniform_deviation(const Element& g, std::int64_t i, const BallTable& ball,
                                  const LengthFunction& length,
                                  const std::vector<SupportFunctional>& functionals) {
  const GroupSpec& group = length.group();
  require(i >= 1, "deviation index must be positive");
  if (!group.is_abelian() && !group.is_central(g)) {
    fail(ErrorCode::kGroupMismatch, "uniform deviation needs an abelian group or central g");
  }
  const Rational scale = length.scale();
  auto las = [&](const Element& h) {
    return to_double(stable_norm_dual(to_rational(group.abelian_projection(h)), functionals) * scale);
  };
  const Element shift = group.inverse(group.power(g, i));
  DeviationReport rep;
  for (std::size_t k = 0; k < ball.size(); ++k) {
    const Element& h = ball.element(k);
    const Element s = group.multiply(shift, h);
    const double lh = ball.length(k);
    const double ls = length(s);
    const double ah = las(h);
    const double as = las(s);
    rep.c = std::max({rep.c, std::fabs(lh - ah), std::fabs(ls - as)});
    const double d = std::fabs((lh - ls) - (ah - as)) / static_cast<double>(i);
    rep.deviation = std::max(rep.deviation, d);
    ++rep.points;
  }
  rep.envelope = 4.0 * rep.c / static_cast<double>(i);
  rep.within_envelope = rep.deviation <= rep.envelope + 1e-12;
  return rep;
}

}  // namespace horocp
