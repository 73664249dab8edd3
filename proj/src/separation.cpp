#include "horocp/separation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "horocp/error.hpp"

namespace horocp {

std::string to_string(SeparationCertificate::Witness w) {
  return w == SeparationCertificate::Witness::kFacetSpan ? "FacetSpan" : "SublinearityFailure";
}

namespace {

bool has_infinite_order(const GroupSpec& group, const Element& g) {
  if (group.is_finite()) return false;
  if (group.kind() == GroupKind::kHeisenberg3) return g != group.identity();
  auto p = group.abelian_projection(g);
  return std::any_of(p.begin(), p.end(), [](std::int64_t v) { return v != 0; });
}

std::vector<SupportFunctional> norm_functionals(const NormSpec& norm, std::size_t m) {
  std::vector<SupportFunctional> out;
  auto unit = [&](std::size_t i, int sign) {
    RationalVector v(m, Rational(0));
    v[i] = sign;
    return v;
  };
  switch (norm.kind) {
    case NormSpec::Kind::kL1:
      for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        RationalVector v(m);
        for (std::size_t i = 0; i < m; ++i) v[i] = (mask >> i) & 1U ? -1 : 1;
        out.push_back({v, {}});
      }
      break;
    case NormSpec::Kind::kL2:
    case NormSpec::Kind::kLinf:
      // For l2 these are the Busemann functionals of the coordinate directions.
      for (std::size_t i = 0; i < m; ++i) {
        out.push_back({unit(i, 1), {}});
        out.push_back({unit(i, -1), {}});
      }
      break;
    case NormSpec::Kind::kPolytope:
      for (const auto& f : norm.functionals) out.push_back({f, {}});
      break;
  }
  return out;
}

}  // namespace

SublinearityReport sublinearity_witness(const LengthFunction& length, const Element& g,
                                        std::int64_t horizon, double tolerance) {
  const GroupSpec& group = length.group();
  require(horizon >= 1, "sublinearity horizon must be positive");
  if (!has_infinite_order(group, g)) {
    fail(ErrorCode::kInvalidArgument,
         "sublinearity witness needs an element of infinite order, got " + group.format(g));
  }
  SublinearityReport rep;
  rep.g = g;
  rep.horizon = horizon;
  Element cur = group.identity();
  double sample = 0;
  const std::int64_t sample_at = std::max<std::int64_t>(1, horizon / 10);
  rep.fekete_value = INFINITY;
  for (std::int64_t i = 1; i <= horizon; ++i) {
    cur = group.multiply(cur, g);
    const double r = length(cur) / static_cast<double>(i);
    rep.fekete_value = std::min(rep.fekete_value, r);
    if (i == sample_at) sample = r;
    if (i == horizon) rep.ratio = r;
  }

  if (length.kind() == LengthFunction::Kind::kFormula) {
    // The closed form is cheap at any horizon, so follow it geometrically.
    double prev = rep.ratio;
    rep.decreasing = true;
    std::int64_t j = horizon;
    double last = rep.ratio;
    while (last >= tolerance && j <= std::int64_t{100'000'000'000'000'000} / 10) {
      j *= 10;
      last = length(group.power(g, j)) / static_cast<double>(j);
      rep.extended_horizons.push_back(j);
      rep.extended_ratios.push_back(last);
      if (!(last < prev)) rep.decreasing = false;
      prev = last;
    }
    rep.vanishing = rep.decreasing && last < tolerance;
  } else {
    rep.decreasing = horizon > 1 && rep.ratio < sample;
    rep.vanishing = rep.decreasing && rep.fekete_value < tolerance;
  }
  return rep;
}

SeparationCertificate separation_certificate(const LengthFunction& length,
                                             std::optional<Element> direction,
                                             std::int64_t horizon) {
  const GroupSpec& group = length.group();
  SeparationCertificate cert;
  cert.m = static_cast<std::size_t>(group.abelianization_rank());

  switch (length.kind()) {
    case LengthFunction::Kind::kWordLength:
      cert.functionals = facets(group);
      break;
    case LengthFunction::Kind::kNormRestriction:
      cert.functionals = norm_functionals(*length.norm(), cert.m);
      break;
    case LengthFunction::Kind::kExplicitTable:
    case LengthFunction::Kind::kFormula: {
      if (cert.m == 0) break;
      Element g = direction ? *direction : group.generators().front();
      if (!direction) {
        std::vector<std::int64_t> e1(group.coordinate_count(), 0);
        e1[0] = 1;
        g = group.element(e1);
      }
      SublinearityReport rep = sublinearity_witness(length, g, horizon);
      if (!rep.vanishing) {
        std::ostringstream os;
        os << "separatedness of a " << length.describe()
           << " length is not decidable from finite data: l(g^I)/I = " << rep.ratio
           << " at I = " << rep.horizon << " gives no sublinearity witness";
        fail(ErrorCode::kUndecidable, os.str());
      }
      cert.witness = SeparationCertificate::Witness::kSublinearityFailure;
      cert.sublinearity = rep;
      cert.separated = false;
      return cert;
    }
  }
  if (length.scale() != 1) {
    for (auto& f : cert.functionals) {
      for (auto& c : f.coefficients) c *= length.scale();
    }
  }

  RationalMatrix chosen;
  for (std::size_t i = 0; i < cert.functionals.size() && chosen.size() < cert.m; ++i) {
    chosen.push_back(cert.functionals[i].coefficients);
    if (rank(chosen) == chosen.size()) {
      cert.invertible_rows.push_back(i);
    } else {
      chosen.pop_back();
    }
  }
  cert.rank = chosen.size();
  cert.separated = cert.rank == cert.m;
  cert.witness = SeparationCertificate::Witness::kFacetSpan;
  return cert;
}

}  // namespace horocp
