#include "horocp/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "horocp/error.hpp"
#include "horocp/horoboundary.hpp"
#include "horocp/quantum_metric.hpp"
#include "horocp/random.hpp"
#include "horocp/separation.hpp"
#include "horocp/stable_norm.hpp"

namespace horocp {

namespace {

Matrix random_matrix(std::size_t d, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  Matrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
  }
  return a;
}

Matrix random_hermitian(std::size_t d, Rng& rng) {
  Matrix a = random_matrix(d, rng);
  return (a + a.adjoint()) / 2.0;
}

const Element& pick(const BallTable& ball, Rng& rng) {
  return ball.element(static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(ball.size()) - 1)));
}

CrossedElement random_crossed(const LengthFunction& len, double radius, std::size_t d,
                              int max_terms, Rng& rng) {
  auto ball = len.ball(radius);
  CrossedElement x(len.group(), d);
  const auto terms = rng.integer(1, max_terms);
  for (std::int64_t t = 0; t < terms; ++t) x.add(pick(*ball, rng), random_matrix(d, rng));
  return x;
}

Json instance_summary(const CheckReport& r) {
  Json j = {{"parameters", r.parameters}};
  j["residual"] = r.residual ? Json(*r.residual) : Json(nullptr);
  j["slack"] = r.slack ? Json(*r.slack) : Json(nullptr);
  return j;
}

// Folds instance reports into one suite-level report.
struct Aggregate {
  CheckReport report;
  Json instances = Json::array();

  Aggregate(std::string name, std::string anchor) {
    report.name = std::move(name);
    report.anchor = std::move(anchor);
  }
  void add(const CheckReport& r) {
    if (instances.empty()) report.anchor = r.anchor;
    if (r.residual) report.residual = report.residual ? std::max(*report.residual, *r.residual) : *r.residual;
    if (r.slack) report.slack = report.slack ? std::min(*report.slack, *r.slack) : *r.slack;
    instances.push_back(instance_summary(r));
  }
  CheckReport finish(double residual_tol, double slack_tol) {
    report.residual_tol = residual_tol;
    report.slack_tol = slack_tol;
    report.details["instances"] = instances;
    report.details["instance_count"] = instances.size();
    return report.finalize();
  }
};

// ------------------------------------------------------------------ checks

CheckReport central_length(const SuiteOptions& opt) {
  CheckReport rep;
  rep.name = "central-length";
  rep.anchor = "l(c^i) = 2 ceil(2 sqrt|i|) in H3 with S = {a^+-1, b^+-1}";
  rep.residual_tol = 0;
  const double radius = opt.radius.value_or(12);
  const GroupSpec h3 = GroupSpec::heisenberg3();
  const LengthFunction len = LengthFunction::word_length(h3);
  auto ball = len.ball(radius);
  double worst = 0;
  Json values = Json::array();
  for (std::int64_t i = 1; i <= 9; ++i) {
    const Element c = h3.element({0, 0, i});
    const double expected = 2.0 * static_cast<double>(ceil_sqrt(4 * i));
    const double got = ball->contains(c) ? len(c) : INFINITY;
    worst = std::max(worst, std::fabs(got - expected));
    values.push_back({{"i", i}, {"bfs", got}, {"formula", expected}});
  }
  rep.residual = worst;
  rep.parameters = {{"group", "H3"}, {"radius", radius}};
  rep.details = {{"values", values}, {"ball_size", ball->size()}};
  return rep.finalize();
}

CheckReport cocycle(const SuiteOptions& opt) {
  Rng rng(derive_seed(opt.seed, "cocycle"));
  Aggregate agg("cocycle", "");
  std::vector<std::pair<std::string, double>> cases;
  if (opt.group) {
    const GroupSpec g = parse_group(*opt.group);
    cases.emplace_back(*opt.group, opt.radius.value_or(g.kind() == GroupKind::kHeisenberg3 ? 8 : 10));
  } else {
    cases = {{"Z2", 10}, {"H3", 8}};
  }
  for (const auto& [name, radius] : cases) {
    const GroupSpec g = parse_group(name);
    const LengthFunction len = LengthFunction::word_length(g);
    // Pair factors come from B_4 on abelian groups and B_2 on H3.
    auto small = len.ball(g.kind() == GroupKind::kHeisenberg3 ? 2 : 4);
    std::vector<std::pair<Element, Element>> pairs;
    for (int i = 0; i < 100; ++i) pairs.emplace_back(pick(*small, rng), pick(*small, rng));
    agg.add(check_cocycle(pairs, *len.ball(radius), len));
  }
  return agg.finish(0, opt.slack_tol);
}

CheckReport commutator(const SuiteOptions& opt) {
  Rng rng(derive_seed(opt.seed, "commutator"));
  Aggregate agg("commutator", "");
  for (int i = 0; i < 20; ++i) {
    const GroupSpec g = opt.group ? parse_group(*opt.group) : parse_group(i % 2 == 0 ? "Z" : "Z2");
    const LengthFunction len = LengthFunction::word_length(g);
    const std::size_t d = 1 + static_cast<std::size_t>(i % 3);
    const double radius = opt.radius.value_or(g.rank() >= 2 ? 6 : 8);
    const CrossedElement x = random_crossed(len, 2, d, 3, rng);
    const TruncatedHilbert h(len, radius, d);
    agg.add(check_commutator_identity(h, x, ActionSpec::trivial(g, d)));
  }
  return agg.finish(opt.residual_tol, opt.slack_tol);
}

CheckReport conditional_expectation_suite(const SuiteOptions& opt) {
  Rng rng(derive_seed(opt.seed, "conditional-expectation"));
  Aggregate agg("conditional-expectation", "");
  for (int i = 0; i < 20; ++i) {
    const bool on_z = i % 2 == 0;
    const GroupSpec g = parse_group(on_z ? "Z" : "Z2");
    const LengthFunction len = LengthFunction::word_length(g);
    const SubgroupPredicate sub =
        on_z ? SubgroupPredicate::multiples(2) : SubgroupPredicate::kernel({1, 0}, g);
    const std::size_t d = 2;
    const CrossedElement x = random_crossed(len, 2, d, 4, rng);
    const Element shift = pick(*len.ball(1), rng);
    const double radius = on_z ? 10 : 7;
    const TruncatedHilbert h(len, radius, d);
    agg.add(check_conditional_expectation(h, x, shift, sub, random_hermitian(d, rng),
                                          ActionSpec::trivial(g, d)));
  }
  return agg.finish(opt.residual_tol, kEqualityTol);
}

CheckReport ozawa_rieffel(const SuiteOptions& opt) {
  Rng rng(derive_seed(opt.seed, "ozawa-rieffel"));
  Aggregate agg("ozawa-rieffel", "");
  const GroupSpec g = parse_group("Z2");
  const LengthFunction len = LengthFunction::word_length(g);
  const std::vector<std::vector<std::int64_t>> homs{{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = 1 + static_cast<std::size_t>(i % 2);
    const CrossedElement x = random_crossed(len, 4, d, 4, rng);
    OzawaRieffelParams p;
    p.phi = homs[static_cast<std::size_t>(rng.integer(0, 3))];
    p.n = rng.integer(1, 3);
    p.radius = 4;
    if (i % 2 == 1) {
      // L from the coefficient-weighted mean of phi, clamped to [-N, N].
      double num = 0;
      double den = 0;
      for (const auto& [e, a] : x.coefficients) {
        auto pg = g.abelian_projection(e);
        const double w = a.squaredNorm();
        num += w * static_cast<double>(p.phi[0] * pg[0] + p.phi[1] * pg[1]);
        den += w;
      }
      const double mean = den > 0 ? num / den : 0;
      p.l = std::clamp(-mean, -static_cast<double>(p.n), static_cast<double>(p.n));
    }
    agg.add(check_ozawa_rieffel(len, x, ActionSpec::trivial(g, d), p));
  }
  const double factor = ozawa_rieffel_factor(0, 1);
  const double closed = std::sqrt(2 * (M_PI * M_PI / 6 - 1));
  agg.report.details["factor_N1_L0"] = factor;
  agg.report.details["factor_closed_form"] = closed;
  CheckReport out = agg.finish(1e-9, opt.slack_tol);
  out.residual = std::fabs(factor - closed);
  return out.finalize();
}

CheckReport isomorphism(const SuiteOptions& opt) {
  Rng rng(derive_seed(opt.seed, "isomorphism"));
  Aggregate agg("isomorphism", "");
  const GroupSpec g = parse_group("Z");
  const LengthFunction len = LengthFunction::word_length(g);
  const double radius = 4;
  auto ball = len.ball(radius);
  for (int i = 0; i < 10; ++i) {
    const Matrix a = random_matrix(2, rng);
    std::vector<double> f(ball->size());
    for (auto& v : f) v = rng.normal();
    const Element shift = pick(*len.ball(2), rng);
    agg.add(check_isomorphism_unitary(len, radius, a, f, shift, ActionSpec::trivial(g, 2)));
  }
  return agg.finish(opt.residual_tol, opt.slack_tol);
}

CheckReport coefficient_bounds(const SuiteOptions& opt) {
  Rng rng(derive_seed(opt.seed, "coefficient-bounds"));
  Aggregate agg("coefficient-bounds", "");
  for (int i = 0; i < 10; ++i) {
    const GroupSpec g = parse_group(i % 2 == 0 ? "Z" : "Z2");
    const LengthFunction len = LengthFunction::word_length(g);
    const std::size_t d = 2;
    const CrossedElement x = random_crossed(len, 2, d, 3, rng);
    const Element shift = pick(*len.ball(1), rng);
    const TruncatedHilbert h(len, 6, d);
    agg.add(check_coefficient_bounds(h, x, shift, random_hermitian(d, rng), ActionSpec::trivial(g, d)));
  }
  return agg.finish(opt.residual_tol, opt.slack_tol);
}

CheckReport nctorus(const SuiteOptions& opt) {
  Aggregate agg("nctorus", "");
  for (std::int64_t q : {3, 5, 8}) {
    NcTorusParams p;
    p.p = 1;
    p.q = q;
    if (q != 3) p.n_min = p.n_max = 1;  // relation check plus one step
    agg.add(check_equicontinuity_nctorus(p));
  }
  return agg.finish(opt.residual_tol, opt.slack_tol);
}

CheckReport af_triple(const SuiteOptions& opt) {
  AfParams p;
  p.seed = opt.seed;
  CheckReport r = check_af_triple(p);
  r.residual_tol = opt.residual_tol;
  r.slack_tol = opt.slack_tol;
  return r.finalize();
}

CheckReport stable_norm_oracle(const SuiteOptions& opt) {
  Rng rng(derive_seed(opt.seed, "stable-norm-oracle"));
  CheckReport rep;
  rep.name = "stable-norm-oracle";
  rep.anchor =
      "|min_{i <= I} l(i g)/i - max_F sigma_F(g)| <= fekete gap; "
      "max_F sigma_F(k x) = |k| max_F sigma_F(x)";
  double slack = INFINITY;
  double homogeneity = 0;
  Json sets = Json::array();
  for (const std::string gens : {"diamond", "hexagonal"}) {
    const GroupSpec g = with_named_generators(parse_group("Z2"), gens);
    const LengthFunction len = LengthFunction::word_length(g);
    const auto fs = facets(g);
    double worst_gap = 0;
    for (int i = 0; i < 20; ++i) {
      std::vector<std::int64_t> x;
      do {
        const std::int64_t a = rng.integer(-10, 10);
        const std::int64_t rest = 10 - std::llabs(a);
        x = {a, rng.integer(-rest, rest)};
      } while (x[0] == 0 && x[1] == 0);
      const StableNormResult sn = asymptotic_length(g.element(x), len, 40);
      const double dual = to_double(stable_norm_dual(to_rational(x), fs));
      slack = std::min(slack, sn.fekete_gap - std::fabs(sn.value - dual));
      worst_gap = std::max(worst_gap, sn.fekete_gap);
      const std::int64_t k = rng.integer(-7, 7);
      const RationalVector kx = to_rational({k * x[0], k * x[1]});
      const Rational lhs = stable_norm_dual(kx, fs);
      const Rational rhs = stable_norm_dual(to_rational(x), fs) * (k < 0 ? -k : k);
      if (lhs != rhs) homogeneity = std::max(homogeneity, std::fabs(to_double(lhs - rhs)));
    }
    sets.push_back({{"generators", gens}, {"facets", fs.size()}, {"max_fekete_gap", worst_gap}});
  }
  rep.slack = slack;
  rep.residual = homogeneity;
  rep.residual_tol = 0;
  rep.slack_tol = opt.slack_tol;
  rep.parameters = {{"group", "Z2"}, {"horizon", 40}, {"points", 20}, {"ball_radius", 10}};
  rep.details = {{"generating_sets", sets}};
  return rep.finalize();
}

CheckReport separation(const SuiteOptions& opt) {
  CheckReport rep;
  rep.name = "separation";
  rep.anchor =
      "facet functionals of conv(p_G(S)) span Hom(Z^m, R); l(k) = 2 ceil(2 sqrt|k|) gives "
      "l(g^I)/I -> 0";
  double residual = 0;
  Json certs = Json::array();
  for (int m = 1; m <= 3; ++m) {
    const GroupSpec g = GroupSpec::free_abelian(m);
    const auto cert = separation_certificate(LengthFunction::word_length(g));
    if (!cert.separated || cert.rank != static_cast<std::size_t>(m)) residual = 1;
    certs.push_back({{"group", g.name()}, {"rank", cert.rank}, {"separated", cert.separated},
                     {"functionals", cert.functionals.size()}});
  }
  const auto formula = LengthFunction::central_sqrt_formula();
  const auto cert = separation_certificate(formula);
  double ratio = NAN;
  if (cert.sublinearity) ratio = cert.sublinearity->ratio;
  if (cert.separated || cert.witness != SeparationCertificate::Witness::kSublinearityFailure) residual = 1;
  residual = std::max(residual, std::fabs(ratio - 0.04));
  if (std::isnan(residual)) residual = 1;
  certs.push_back({{"length", formula.describe()},
                   {"separated", cert.separated},
                   {"witness", to_string(cert.witness)},
                   {"ratio_at_10000", ratio}});
  rep.residual = residual;
  rep.residual_tol = opt.residual_tol;
  rep.parameters = {{"ranks", {1, 2, 3}}, {"horizon", 10000}};
  rep.details = {{"certificates", certs}};
  return rep.finalize();
}

CheckReport mk(const SuiteOptions& opt) {
  CheckReport rep;
  rep.name = "mk-distance";
  rep.anchor = "d(psi, psi') = sup {|psi(a) - psi'(a)| : ||[D, a]|| <= 1}";
  MkOptions mo;
  mo.seed = opt.seed;
  const auto chi0 = StateSpec::character(0);
  const auto chi1 = StateSpec::character(1);
  const CyclicTriple z2(2);
  const CyclicTriple z2s(2, {}, 2.0);
  const CyclicTriple z3(3);
  const MkResult d1 = mk_distance(z2, chi0, chi1, mo);
  const MkResult d2 = mk_distance(z2s, chi0, chi1, mo);
  const MkResult d3 = mk_distance(z3, chi0, chi1, mo);
  const double b1 = mk_brute_force(z2, chi0, chi1);
  const double b3 = mk_brute_force(z3, chi0, chi1);
  double residual = std::max(std::fabs(d1.lower_bound - 2.0), std::fabs(2 * d2.lower_bound - d1.lower_bound));
  if (!d1.converged || !d2.converged || !d3.converged) residual = std::max(residual, 1.0);
  rep.residual = residual;
  rep.residual_tol = 1e-6;
  rep.slack = 1e-4 - std::max(std::fabs(d1.lower_bound - b1), std::fabs(d3.lower_bound - b3));
  rep.slack_tol = 0;
  rep.parameters = {{"restarts", mo.restarts}, {"iterations", mo.iterations}, {"step", mo.step}};
  rep.details = {{"z2", d1.lower_bound},          {"z2_scaled", d2.lower_bound},
                 {"z3", d3.lower_bound},          {"z2_brute_force", b1},
                 {"z3_brute_force", b3},          {"converged", d1.converged && d2.converged && d3.converged},
                 {"z2_witness_seminorm", d1.witness_seminorm}};
  return rep.finalize();
}

CheckReport op_norm_suite(const SuiteOptions& opt) {
  CheckReport rep;
  rep.name = "op-norm";
  rep.anchor = "||P_R (lambda_1 + lambda_-1) P_R|| increases to 2; ||[M_l, lambda_1]|| = 1";
  const GroupSpec z = parse_group("Z");
  const LengthFunction len = LengthFunction::word_length(z);
  CrossedElement x(z, 1);
  x.add(z.element({1}), Matrix::Identity(1, 1));
  x.add(z.element({-1}), Matrix::Identity(1, 1));
  const ActionSpec triv = ActionSpec::trivial(z, 1);
  double monotone = 0;
  double prev = 0;
  Json seq = Json::array();
  for (int r = 5; r <= 40; r += 5) {
    const TruncatedHilbert h(len, r, 1);
    const double v = op_norm(realize(h, x, triv).matrix);
    monotone = std::max(monotone, prev - v);
    prev = v;
    seq.push_back({{"radius", r}, {"norm", v}});
  }
  double comm = 0;
  for (int r = 2; r <= 12; ++r) {
    const TruncatedHilbert h(len, r, 1);
    const Matrix l1 = lambda(h, z.element({1})).matrix;
    const Matrix m = m_ell(h).matrix;
    comm = std::max(comm, std::fabs(op_norm(m * l1 - l1 * m) - 1.0));
  }
  rep.residual = std::max(monotone, comm);
  rep.residual_tol = opt.residual_tol;
  rep.slack = prev - 1.95;
  rep.slack_tol = opt.slack_tol;
  rep.parameters = {{"radii", "5..40"}, {"threshold", 1.95}};
  rep.details = {{"norms", seq}, {"monotonicity_violation", monotone}, {"commutator_residual", comm}};
  return rep.finalize();
}

CheckReport length_axioms(const SuiteOptions& opt) {
  CheckReport rep;
  rep.name = "length-axioms";
  rep.anchor = "l(e) = 0, l(g^-1) = l(g), l(gh) <= l(g) + l(h)";
  rep.residual_tol = 0;
  std::vector<std::pair<LengthFunction, double>> cases;
  if (opt.group) {
    cases.emplace_back(LengthFunction::word_length(parse_group(*opt.group)), opt.radius.value_or(8));
  } else {
    cases.emplace_back(LengthFunction::word_length(parse_group("Z")), 10);
    cases.emplace_back(LengthFunction::norm_restriction(parse_group("Z2"), NormSpec::parse("l1")), 6);
    cases.emplace_back(LengthFunction::word_length(parse_group("H3")), 6);
    cases.emplace_back(LengthFunction::word_length(parse_group("Z2xZ_3")), 6);
  }
  double worst = 0;
  Json out = Json::array();
  for (const auto& [len, r] : cases) {
    const auto ax = check_length_axioms(len, r);
    worst = std::max(worst, ax.max_violation);
    out.push_back({{"length", len.describe()}, {"radius", r}, {"max_violation", ax.max_violation},
                   {"pairs", ax.pairs}});
  }
  rep.residual = worst;
  rep.details = {{"cases", out}};
  return rep.finalize();
}

CheckReport busemann(const SuiteOptions& opt) {
  CheckReport rep;
  rep.name = "busemann";
  rep.anchor = "phi_h(xi_F) = sigma_F(p_G(h)) along almost geodesic rays";
  double residual = 0;
  Json cases = Json::array();

  const GroupSpec z = parse_group("Z");
  const auto lz = LengthFunction::word_length(z);
  const auto b1 = busemann_along_ray(RaySpec::lattice(z, {Rational(1)}, 32), z.element({3}), lz);
  residual = std::max({residual, std::fabs(b1.value - 3), b1.tail_variation});
  cases.push_back({{"case", "Z t -> t, g = 3"}, {"value", b1.value}});

  const GroupSpec z2 = parse_group("Z2");
  const auto lz2 = LengthFunction::word_length(z2);
  const auto b2 = busemann_along_ray(RaySpec::lattice(z2, {Rational(1), Rational(1)}, 32),
                                     z2.element({1, 0}), lz2);
  const double f2 = b2.facet_value ? to_double(*b2.facet_value) : NAN;
  residual = std::max({residual, std::fabs(b2.value - 1), std::fabs(f2 - 1), b2.tail_variation});
  cases.push_back({{"case", "Z2 v = (1,1), g = (1,0)"}, {"value", b2.value}, {"sigma_F", f2}});

  const GroupSpec h3 = parse_group("H3");
  const auto lh = LengthFunction::word_length(h3);
  const Element a = h3.element({1, 0, 0});
  const Element b = h3.element({0, 1, 0});
  const RaySpec walsh = RaySpec::word_repetition(h3, {a, b}, 16);
  const auto b3 = busemann_along_ray(walsh, a, lh);
  residual = std::max({residual, std::fabs(b3.value - 1), b3.tail_variation});
  const auto geo = check_ray_geodesic(walsh, 12, lh);
  residual = std::max(residual, geo.defect);
  if (!geo.prefixes_geodesic) residual = std::max(residual, 1.0);
  cases.push_back({{"case", "H3 word ab, g = a"}, {"value", b3.value}, {"geodesic_defect", geo.defect}});

  rep.residual = residual;
  rep.residual_tol = opt.residual_tol;
  rep.details = {{"cases", cases}};
  return rep.finalize();
}

using CheckFn = std::function<CheckReport(const SuiteOptions&)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r{
      {"central-length", central_length},
      {"cocycle", cocycle},
      {"commutator", commutator},
      {"conditional-expectation", conditional_expectation_suite},
      {"ozawa-rieffel", ozawa_rieffel},
      {"isomorphism", isomorphism},
      {"coefficient-bounds", coefficient_bounds},
      {"nctorus", nctorus},
      {"af-triple", af_triple},
      {"stable-norm-oracle", stable_norm_oracle},
      {"separation", separation},
      {"mk-distance", mk},
      {"op-norm", op_norm_suite},
      {"length-axioms", length_axioms},
      {"busemann", busemann},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, f] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

CheckReport run_suite_check(const std::string& name, const SuiteOptions& opt) {
  for (const auto& [k, f] : registry()) {
    if (k == name) return f(opt);
  }
  fail(ErrorCode::kInvalidArgument, "unknown check '" + name + "'");
}

}  // namespace horocp
