#include "horocp/horoboundary.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "horocp/error.hpp"

namespace horocp {

double PhiFunction::at(const Element& h) const {
  auto i = ball->index_of(h);
  if (!i) fail(ErrorCode::kOutOfBall, "phi evaluated outside its ball");
  return values[*i];
}

double PhiFunction::max_abs() const {
  double m = 0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return m;
}

PhiFunction phi(const Element& g, std::shared_ptr<const BallTable> ball,
                const LengthFunction& length) {
  const GroupSpec& group = length.group();
  const Element ginv = group.inverse(g);
  PhiFunction out{g, ball, {}};
  out.values.reserve(ball->size());
  for (std::size_t i = 0; i < ball->size(); ++i) {
    out.values.push_back(ball->length(i) - length(group.multiply(ginv, ball->element(i))));
  }
  return out;
}

double cocycle_defect(const Element& g, const Element& h, const BallTable& ball,
                      const LengthFunction& length) {
  const GroupSpec& group = length.group();
  const Element ginv = group.inverse(g);
  const Element ghinv = group.inverse(group.multiply(g, h));
  const Element hinv = group.inverse(h);
  double defect = 0;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const Element& x = ball.element(i);
    const double lx = ball.length(i);
    const Element gx = group.multiply(ginv, x);
    const double lgx = length(gx);
    const double phi_gh = lx - length(group.multiply(ghinv, x));
    const double phi_h_shift = lgx - length(group.multiply(hinv, gx));
    const double phi_g = lx - lgx;
    defect = std::max(defect, std::fabs(phi_gh - phi_h_shift - phi_g));
  }
  return defect;
}

std::vector<SupportFunctional> facets(const GroupSpec& group) {
  const auto m = static_cast<std::size_t>(group.abelianization_rank());
  if (m == 0) return {};
  require(m <= 4, "facet enumeration supports abelianization rank <= 4");

  std::set<std::vector<std::int64_t>> unique;
  for (const auto& s : group.generators()) {
    auto p = group.abelian_projection(s);
    if (std::any_of(p.begin(), p.end(), [](std::int64_t v) { return v != 0; })) unique.insert(p);
  }
  std::vector<std::vector<std::int64_t>> points(unique.begin(), unique.end());

  RationalMatrix pm;
  for (const auto& p : points) pm.push_back(to_rational(p));
  if (rank(pm) < m) {
    RationalMatrix ns = null_space(pm, m);
    auto n = primitive_integer(ns.front());
    std::ostringstream os;
    os << "degenerate generator polytope: p_G(S) lies in the hyperplane ";
    for (std::size_t i = 0; i < m; ++i) os << (i ? " + " : "") << n[i] << "*x" << (i + 1);
    os << " = 0";
    fail(ErrorCode::kDegenerate, os.str());
  }

  std::set<RationalVector> found;
  std::vector<std::size_t> pick(m);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == m) {
      RationalMatrix a;
      for (auto i : pick) a.push_back(pm[i]);
      RationalVector sigma = solve_square(a, RationalVector(m, Rational(1)));
      if (sigma.empty()) return;
      for (const auto& p : pm) {
        if (dot(sigma, p) > 1) return;
      }
      found.insert(sigma);
      return;
    }
    for (std::size_t i = start; i < points.size(); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);

  std::vector<SupportFunctional> out;
  for (auto it = found.rbegin(); it != found.rend(); ++it) {
    SupportFunctional f{*it, {}};
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (dot(f.coefficients, pm[i]) == 1) f.facet.push_back(points[i]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

// ------------------------------------------------------------------- rays

RaySpec RaySpec::lattice(const GroupSpec& group, RationalVector v, std::size_t steps) {
  RaySpec r;
  r.kind = Kind::kLatticeDirection;
  r.group = group;
  r.direction = std::move(v);
  r.steps = steps;
  return r;
}

RaySpec RaySpec::lattice_real(const GroupSpec& group, std::vector<double> v, std::size_t steps) {
  RaySpec r;
  r.kind = Kind::kLatticeDirection;
  r.group = group;
  r.real_direction = std::move(v);
  r.steps = steps;
  return r;
}

RaySpec RaySpec::word_repetition(const GroupSpec& group, std::vector<Element> word,
                                 std::size_t prefixes) {
  RaySpec r;
  r.kind = Kind::kWordRepetition;
  r.group = group;
  r.word = std::move(word);
  r.steps = prefixes;
  return r;
}

namespace {

Element lattice_element(const GroupSpec& group, const std::vector<std::int64_t>& x) {
  std::vector<std::int64_t> c = x;
  if (group.kind() == GroupKind::kFreeAbelianTimesCyclic) c.push_back(0);
  return group.element(c);
}

}  // namespace

std::vector<RayPoint> ray_schedule(const RaySpec& ray) {
  const GroupSpec& group = ray.group;
  std::vector<RayPoint> out;
  if (ray.kind == RaySpec::Kind::kWordRepetition) {
    require(!ray.word.empty(), "word ray needs a non-empty word");
    const auto& gens = group.generators();
    for (const auto& letter : ray.word) {
      require(std::find(gens.begin(), gens.end(), letter) != gens.end(),
              "word letter " + group.format(letter) + " is not a generator");
    }
    Element cur = group.identity();
    for (std::size_t n = 1; n <= ray.steps; ++n) {
      cur = group.multiply(cur, ray.word[(n - 1) % ray.word.size()]);
      out.push_back({static_cast<double>(n), cur});
    }
    return out;
  }

  if (group.kind() != GroupKind::kFreeAbelian &&
      group.kind() != GroupKind::kFreeAbelianTimesCyclic) {
    fail(ErrorCode::kGroupMismatch, "lattice rays need a free abelian factor, got " + group.name());
  }
  const auto m = static_cast<std::size_t>(group.rank());
  if (!ray.real_direction.empty()) {
    require(ray.real_direction.size() == m, "ray direction has the wrong dimension");
    // Bounded search for integer times t with |round(t v) - t v| < 1/i.
    const std::int64_t budget = 10'000'000;
    std::int64_t t = 0;
    std::int64_t spent = 0;
    for (std::size_t i = 1; i <= ray.steps; ++i) {
      const double tol = 1.0 / static_cast<double>(i);
      for (;;) {
        ++t;
        if (++spent > budget) {
          fail(ErrorCode::kCapExceeded, "no lattice approximation found within the search cap");
        }
        std::vector<std::int64_t> x(m);
        bool ok = true;
        for (std::size_t j = 0; j < m; ++j) {
          const double target = static_cast<double>(t) * ray.real_direction[j];
          x[j] = static_cast<std::int64_t>(std::llround(target));
          if (std::fabs(static_cast<double>(x[j]) - target) >= tol) ok = false;
        }
        if (ok) {
          out.push_back({static_cast<double>(t), lattice_element(group, x)});
          break;
        }
      }
    }
    return out;
  }

  require(ray.direction.size() == m, "ray direction has the wrong dimension");
  namespace mp = boost::multiprecision;
  mp::cpp_int den = 1;
  for (const auto& q : ray.direction) {
    const mp::cpp_int d = mp::denominator(q);
    den = den / mp::gcd(den, d) * d;
  }
  for (std::size_t i = 1; i <= ray.steps; ++i) {
    const Rational t = Rational(den) * static_cast<long long>(i);
    std::vector<std::int64_t> x(m);
    for (std::size_t j = 0; j < m; ++j) {
      Rational c = t * ray.direction[j];
      x[j] = static_cast<std::int64_t>(mp::numerator(c));
    }
    out.push_back({to_double(t), lattice_element(group, x)});
  }
  return out;
}

BusemannEstimate busemann_along_ray(const RaySpec& ray, const Element& g,
                                    const LengthFunction& length) {
  const GroupSpec& group = length.group();
  const auto schedule = ray_schedule(ray);
  require(!schedule.empty(), "empty ray schedule");
  const Element ginv = group.inverse(g);
  BusemannEstimate est;
  est.g = g;
  for (const auto& p : schedule) {
    est.trace.push_back(length(p.point) - length(group.multiply(ginv, p.point)));
  }
  est.value = est.trace.back();
  const std::size_t n = est.trace.size();
  const std::size_t window = std::max<std::size_t>(1, (n + 3) / 4);
  auto first = est.trace.end() - static_cast<std::ptrdiff_t>(window);
  est.tail_variation = *std::max_element(first, est.trace.end()) -
                       *std::min_element(first, est.trace.end());

  if (ray.kind == RaySpec::Kind::kLatticeDirection && ray.real_direction.empty() &&
      length.kind() == LengthFunction::Kind::kWordLength) {
    auto fs = facets(ray.group);
    std::optional<Rational> best;
    std::size_t hits = 0;
    const SupportFunctional* arg = nullptr;
    for (const auto& f : fs) {
      Rational v = f(ray.direction);
      if (!best || v > *best) {
        best = v;
        hits = 1;
        arg = &f;
      } else if (v == *best) {
        ++hits;
      }
    }
    if (arg && hits == 1) {
      est.facet_functional = arg->coefficients;
      est.facet_value = (*arg)(group.abelian_projection(g)) * length.scale();
    }
  }
  return est;
}

GeodesicReport check_ray_geodesic(const RaySpec& ray, std::size_t horizon,
                                  const LengthFunction& length) {
  const GroupSpec& group = length.group();
  RaySpec limited = ray;
  limited.steps = std::min(ray.steps, horizon);
  if (ray.kind == RaySpec::Kind::kWordRepetition) limited.steps = horizon;
  std::vector<RayPoint> pts{{0.0, group.identity()}};
  for (auto& p : ray_schedule(limited)) pts.push_back(std::move(p));
  if (ray.kind == RaySpec::Kind::kLatticeDirection) {
    for (auto& p : pts) p.time = length(p.point);
  }

  GeodesicReport rep;
  for (std::size_t t = 1; t < pts.size(); ++t) {
    if (ray.kind == RaySpec::Kind::kWordRepetition && length(pts[t].point) != pts[t].time) {
      rep.prefixes_geodesic = false;
    }
    for (std::size_t s = 0; s < t; ++s) {
      const double dts = length(group.multiply(group.inverse(pts[t].point), pts[s].point));
      const double ds0 = length(pts[s].point);
      rep.defect = std::max(rep.defect, std::fabs(dts + ds0 - pts[t].time));
      ++rep.pairs;
    }
  }
  return rep;
}

}  // namespace horocp
