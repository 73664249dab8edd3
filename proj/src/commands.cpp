#include "horocp/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "horocp/error.hpp"
#include "horocp/horoboundary.hpp"
#include "horocp/quantum_metric.hpp"
#include "horocp/separation.hpp"
#include "horocp/stable_norm.hpp"
#include "horocp/suite.hpp"

namespace horocp {

namespace {

const OptionInfo kGroup{"group", "Z2", "group: Z, Z2, Z^3, H3, Z_4, Z2xZ_3"};
const OptionInfo kGens{"gens", "standard", "generating set: standard, diamond, hexagonal or (a,b);(c,d)"};
const OptionInfo kLength{"length", "word", "length: word, l1, l2, linf, central-sqrt"};
const OptionInfo kScale{"scale", "1", "positive rational multiplier of the length"};

}  // namespace

const std::vector<CommandInfo>& command_table() {
  static const std::vector<CommandInfo> table{
      {"group-ball",
       "enumerate the metric ball B_R",
       {kGroup, kGens, kLength, kScale, {"radius", "3", "ball radius"},
        {"list", "64", "list elements when the ball has at most this many"}}},
      {"phi",
       "phi_g(h) = l(h) - l(g^-1 h) on a ball",
       {kGroup, kGens, kLength, kScale, {"g", "", "group element, e.g. (1,0)"},
        {"radius", "4", "ball radius"}}},
      {"facets", "support functionals of conv(p_G(S))", {kGroup, kGens}},
      {"busemann",
       "phi_g along a lattice or word ray",
       {kGroup, kGens, kLength, kScale, {"g", "", "group element"},
        {"direction", "", "rational lattice direction, e.g. (1,1) or (1/2,1)"},
        {"word", "", "generator word, e.g. a,b (H3) or (1,0);(0,1)"},
        {"steps", "32", "schedule length"},
        {"horizon", "12", "geodesic check horizon"}}},
      {"stable-norm",
       "Fekete estimate of the asymptotic length",
       {kGroup, kGens, kLength, kScale, {"g", "", "group element"},
        {"horizon", "40", "Fekete horizon I"},
        {"deviation-i", "0", "when > 0, uniform deviation at this i"},
        {"radius", "8", "ball radius for the deviation"}}},
      {"separate",
       "separation certificate",
       {kGroup, kGens, kLength, kScale, {"direction", "", "element for the sublinearity witness"},
        {"horizon", "10000", "sublinearity horizon"}}},
      {"verify",
       "named lemma checks",
       {{"check", "all", "check name or all"},
        {"seed", "0", "64-bit seed"},
        {"residual-tol", "1e-12", "equality tolerance"},
        {"slack-tol", "1e-9", "inequality tolerance"},
        {"group", "", "group override for single-group checks"},
        {"radius", "", "radius override for single-group checks"}}},
      {"nctorus",
       "rotation algebra equicontinuity sweep",
       {{"p", "1", "theta numerator"},
        {"q", "3", "theta denominator"},
        {"theta-lambda", "", "angle for lambda_g as p/q (default theta)"},
        {"n-min", "-50", "first power"},
        {"n-max", "50", "last power"},
        {"radius", "20", "ball radius"}}},
      {"af-triple",
       "finite-depth odometer triple",
       {{"orders", "2,2,2,2,2", "odometer orders n_1..n_k"},
        {"eigenvalues", "", "lambda_1..lambda_k (default N_i)"},
        {"seed", "0", "64-bit seed"},
        {"samples", "4", "random elements per level"}}},
      {"mk-distance",
       "Monge-Kantorovich distance on C*(Z_n)",
       {{"n", "2", "order of the cyclic group"},
        {"lengths", "", "l(0),...,l(n-1) (default min(k, n-k))"},
        {"scale", "1", "D = scale * M_l"},
        {"psi", "chi:0", "state: chi:j or vec:x0,x1,..."},
        {"psi2", "chi:1", "second state"},
        {"restarts", "32", "ascent restarts"},
        {"iterations", "2000", "iterations per restart"},
        {"step", "0.1", "initial step"},
        {"seed", "0", "64-bit seed"},
        {"brute-force", "false", "also run the grid oracle (dimension <= 6)"}}},
  };
  return table;
}

Config parse_config_text(const std::string& text) {
  Config out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::kInvalidArgument, "config line " + std::to_string(lineno) + " lacks '='");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

namespace {

// ----------------------------------------------------------------- parsing

std::int64_t parse_int(const std::string& key, const std::string& s) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    fail(ErrorCode::kInvalidArgument, key + ": expected an integer, got '" + s + "'");
  }
  return v;
}

std::uint64_t parse_seed(const std::string& s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    fail(ErrorCode::kInvalidArgument, "seed: expected an unsigned 64-bit integer, got '" + s + "'");
  }
  return v;
}

double parse_real(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::kInvalidArgument, key + ": expected a number, got '" + s + "'");
}

bool parse_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  fail(ErrorCode::kInvalidArgument, key + ": expected true or false, got '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::string strip_parens(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::int64_t> parse_int_list(const std::string& key, const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& part : split(strip_parens(s), ',')) out.push_back(parse_int(key, part));
  return out;
}

Element parse_element(const GroupSpec& g, const std::string& key, const std::string& s) {
  if (s.empty()) fail(ErrorCode::kInvalidArgument, key + " is required");
  return g.element(parse_int_list(key, s));
}

class Options {
 public:
  Options(const CommandInfo& info, const Config& given) {
    for (const auto& [k, v] : given) {
      const bool known = std::any_of(info.options.begin(), info.options.end(),
                                     [&](const OptionInfo& o) { return o.key == k; });
      if (!known) fail(ErrorCode::kInvalidArgument, "unknown option '" + k + "' for " + info.name);
    }
    for (const auto& o : info.options) {
      auto it = given.find(o.key);
      values_[o.key] = it != given.end() ? it->second : o.fallback;
    }
  }
  const std::string& str(const std::string& k) const { return values_.at(k); }
  bool has(const std::string& k) const { return !values_.at(k).empty(); }
  std::int64_t integer(const std::string& k) const { return parse_int(k, str(k)); }
  double real(const std::string& k) const { return parse_real(k, str(k)); }
  nlohmann::json json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : values_) j[k] = v;
    return j;
  }

 private:
  std::map<std::string, std::string> values_;
};

GroupSpec build_group(const Options& o) {
  return with_named_generators(parse_group(o.str("group")), o.str("gens"));
}

LengthFunction build_length(const Options& o, const GroupSpec& g) {
  const std::string& kind = o.str("length");
  LengthFunction len = [&] {
    if (kind == "word") return LengthFunction::word_length(g);
    if (kind == "central-sqrt") {
      if (g.kind() != GroupKind::kFreeAbelian || g.rank() != 1) {
        fail(ErrorCode::kGroupMismatch, "central-sqrt length lives on Z");
      }
      return LengthFunction::central_sqrt_formula();
    }
    return LengthFunction::norm_restriction(g, NormSpec::parse(kind));
  }();
  const Rational s = parse_rational(o.str("scale"));
  return s == 1 ? len : len.scaled(s);
}

nlohmann::json rational_json(const RationalVector& v) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& q : v) j.push_back(to_string(q));
  return j;
}

nlohmann::json functional_json(const GroupSpec& g, const SupportFunctional& f) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : f.facet) pts.push_back(p);
  (void)g;
  return {{"sigma", rational_json(f.coefficients)}, {"facet", pts}};
}

nlohmann::json report_json(const CheckReport& r) { return r.to_json(); }

// ---------------------------------------------------------------- commands

struct Output {
  nlohmann::json result = nlohmann::json::object();
  nlohmann::json diagnostics = nlohmann::json::object();
  int exit_code = kExitOk;
};

Output cmd_group_ball(const Options& o) {
  const GroupSpec g = build_group(o);
  const LengthFunction len = build_length(o, g);
  auto ball = len.ball(o.real("radius"));
  Output out;
  std::map<double, std::size_t> spheres;
  for (double l : ball->lengths()) ++spheres[l];
  nlohmann::json sph = nlohmann::json::array();
  for (const auto& [l, c] : spheres) sph.push_back({{"length", l}, {"count", c}});
  out.result = {{"group", g.name()}, {"length", len.describe()}, {"size", ball->size()},
                {"spheres", sph}, {"anchor", "B_r = {g : l(g) <= r}"}};
  if (ball->size() <= static_cast<std::size_t>(o.integer("list"))) {
    nlohmann::json el = nlohmann::json::array();
    for (std::size_t i = 0; i < ball->size(); ++i) {
      el.push_back({{"element", g.format(ball->element(i))}, {"length", ball->length(i)}});
    }
    out.result["elements"] = el;
  }
  out.diagnostics["ball_cap"] = ball_cap();
  return out;
}

Output cmd_phi(const Options& o) {
  const GroupSpec g = build_group(o);
  const LengthFunction len = build_length(o, g);
  const Element e = parse_element(g, "g", o.str("g"));
  auto ball = len.ball(o.real("radius"));
  const PhiFunction f = phi(e, ball, len);
  Output out;
  nlohmann::json vals = nlohmann::json::array();
  for (std::size_t i = 0; i < ball->size(); ++i) {
    vals.push_back({{"h", g.format(ball->element(i))}, {"value", f.values[i]}});
  }
  out.result = {{"g", g.format(e)},          {"length_g", len(e)},
                {"max_abs", f.max_abs()},   {"values", vals},
                {"anchor", "phi_g(h) = l(h) - l(g^-1 h)"}};
  return out;
}

Output cmd_facets(const Options& o) {
  const GroupSpec g = build_group(o);
  const auto fs = facets(g);
  Output out;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : fs) arr.push_back(functional_json(g, f));
  out.result = {{"group", g.name()}, {"count", fs.size()}, {"functionals", arr},
                {"anchor", "sigma_F = 1 exactly on the facet F of conv(p_G(S))"}};
  return out;
}

RationalVector parse_direction(const std::string& s) {
  RationalVector v;
  for (const auto& part : split(strip_parens(s), ',')) v.push_back(parse_rational(part));
  return v;
}

std::vector<Element> parse_word(const GroupSpec& g, const std::string& s) {
  std::vector<Element> w;
  const bool letters = s.find('(') == std::string::npos;
  if (letters) {
    for (const auto& tok : split(s, ',')) {
      if (g.kind() == GroupKind::kHeisenberg3) {
        if (tok == "a") w.push_back(g.element({1, 0, 0}));
        else if (tok == "A") w.push_back(g.element({-1, 0, 0}));
        else if (tok == "b") w.push_back(g.element({0, 1, 0}));
        else if (tok == "B") w.push_back(g.element({0, -1, 0}));
        else fail(ErrorCode::kInvalidArgument, "unknown H3 letter '" + tok + "' (use a, A, b, B)");
      } else {
        w.push_back(g.element({parse_int("word", tok)}));
      }
    }
  } else {
    for (const auto& tok : split(s, ';')) w.push_back(parse_element(g, "word", tok));
  }
  return w;
}

Output cmd_busemann(const Options& o) {
  const GroupSpec g = build_group(o);
  const LengthFunction len = build_length(o, g);
  const Element e = parse_element(g, "g", o.str("g"));
  const auto steps = static_cast<std::size_t>(o.integer("steps"));
  RaySpec ray;
  if (o.has("word") == o.has("direction")) {
    fail(ErrorCode::kInvalidArgument, "give exactly one of direction or word");
  }
  if (o.has("word")) {
    ray = RaySpec::word_repetition(g, parse_word(g, o.str("word")), steps);
  } else {
    ray = RaySpec::lattice(g, parse_direction(o.str("direction")), steps);
  }
  const auto est = busemann_along_ray(ray, e, len);
  const auto geo = check_ray_geodesic(ray, static_cast<std::size_t>(o.integer("horizon")), len);
  Output out;
  out.result = {{"g", g.format(e)},
                {"value", est.value},
                {"tail_variation", est.tail_variation},
                {"trace", est.trace},
                {"geodesic_defect", geo.defect},
                {"prefixes_geodesic", geo.prefixes_geodesic},
                {"anchor", "chi_gamma(phi_g) = lim_t phi_g(gamma(t))"}};
  if (est.facet_functional) {
    out.result["facet_functional"] = rational_json(*est.facet_functional);
    out.result["facet_value"] = to_string(*est.facet_value);
  }
  return out;
}

Output cmd_stable_norm(const Options& o) {
  const GroupSpec g = build_group(o);
  const LengthFunction len = build_length(o, g);
  const Element e = parse_element(g, "g", o.str("g"));
  const auto sn = asymptotic_length(e, len, o.integer("horizon"));
  Output out;
  out.result = {{"g", g.format(e)},
                {"value", sn.value},
                {"fekete_gap", sn.fekete_gap},
                {"horizon", sn.horizon},
                {"anchor", "l^as(g) = lim l(i g)/i = inf l(i g)/i"}};
  if (len.kind() == LengthFunction::Kind::kWordLength && g.abelianization_rank() > 0 &&
      g.is_abelian()) {
    const auto fs = facets(g);
    const Rational dual = stable_norm_dual(to_rational(g.abelian_projection(e)), fs) * len.scale();
    out.result["dual_norm"] = to_string(dual);
    out.result["dual_norm_value"] = to_double(dual);
    const std::int64_t i = o.integer("deviation-i");
    if (i > 0) {
      const auto dev = uniform_deviation(e, i, *len.ball(o.real("radius")), len, fs);
      out.result["deviation"] = {{"i", i},
                                 {"deviation", dev.deviation},
                                 {"c", dev.c},
                                 {"envelope", dev.envelope},
                                 {"within_envelope", dev.within_envelope},
                                 {"points", dev.points}};
      out.diagnostics["note"] = "uniform convergence certified only over the computed ball";
    }
  }
  return out;
}

Output cmd_separate(const Options& o) {
  const GroupSpec g = build_group(o);
  const LengthFunction len = build_length(o, g);
  std::optional<Element> dir;
  if (o.has("direction")) dir = parse_element(g, "direction", o.str("direction"));
  const auto cert = separation_certificate(len, dir, o.integer("horizon"));
  Output out;
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : cert.functionals) fs.push_back(functional_json(g, f));
  out.result = {{"separated", cert.separated},
                {"rank", cert.rank},
                {"m", cert.m},
                {"witness", to_string(cert.witness)},
                {"functionals", fs},
                {"invertible_rows", cert.invertible_rows},
                {"anchor", "separated iff the induced homomorphisms span Hom(im p_G, R)"}};
  if (cert.sublinearity) {
    const auto& s = *cert.sublinearity;
    out.result["sublinearity"] = {{"g", g.format(s.g)},
                                  {"horizon", s.horizon},
                                  {"ratio", s.ratio},
                                  {"fekete_value", s.fekete_value},
                                  {"extended_horizons", s.extended_horizons},
                                  {"extended_ratios", s.extended_ratios},
                                  {"decreasing", s.decreasing},
                                  {"vanishing", s.vanishing}};
  }
  return out;
}

Output cmd_verify(const Options& o) {
  SuiteOptions so;
  so.seed = parse_seed(o.str("seed"));
  so.residual_tol = o.real("residual-tol");
  so.slack_tol = o.real("slack-tol");
  if (o.has("group")) so.group = o.str("group");
  if (o.has("radius")) so.radius = o.real("radius");
  std::vector<std::string> names;
  if (o.str("check") == "all") {
    names = suite_check_names();
  } else {
    names = {o.str("check")};
  }
  Output out;
  nlohmann::json checks = nlohmann::json::array();
  std::size_t passed = 0;
  for (const auto& n : names) {
    const CheckReport r = run_suite_check(n, so);
    if (r.pass) ++passed;
    checks.push_back(report_json(r));
  }
  out.result = {{"checks", checks}, {"passed", passed}, {"failed", names.size() - passed}};
  out.exit_code = passed == names.size() ? kExitOk : kExitCheckFailed;
  return out;
}

Output single_report(const CheckReport& r) {
  Output out;
  out.result = report_json(r);
  out.exit_code = r.pass ? kExitOk : kExitCheckFailed;
  return out;
}

Output cmd_nctorus(const Options& o) {
  NcTorusParams p;
  p.p = o.integer("p");
  p.q = o.integer("q");
  if (o.has("theta-lambda")) {
    const Rational t = parse_rational(o.str("theta-lambda"));
    p.theta_lambda = std::make_pair(static_cast<std::int64_t>(boost::multiprecision::numerator(t)),
                                    static_cast<std::int64_t>(boost::multiprecision::denominator(t)));
  }
  p.n_min = o.integer("n-min");
  p.n_max = o.integer("n-max");
  p.radius = o.real("radius");
  return single_report(check_equicontinuity_nctorus(p));
}

Output cmd_af(const Options& o) {
  AfParams p;
  p.orders = parse_int_list("orders", o.str("orders"));
  if (o.has("eigenvalues")) {
    for (const auto& s : split(o.str("eigenvalues"), ',')) p.eigenvalues.push_back(parse_real("eigenvalues", s));
  }
  p.seed = parse_seed(o.str("seed"));
  p.samples = static_cast<int>(o.integer("samples"));
  return single_report(check_af_triple(p));
}

StateSpec parse_state(const std::string& key, const std::string& s, std::int64_t n) {
  if (s.rfind("chi:", 0) == 0) return StateSpec::character(parse_int(key, s.substr(4)));
  if (s.rfind("vec:", 0) == 0) {
    const auto parts = split(s.substr(4), ',');
    if (static_cast<std::int64_t>(parts.size()) != n) {
      fail(ErrorCode::kInvalidArgument, key + ": vector state needs n entries");
    }
    Vector v(n);
    for (std::int64_t i = 0; i < n; ++i) v(i) = parse_real(key, parts[static_cast<std::size_t>(i)]);
    return StateSpec::vector_state(v);
  }
  fail(ErrorCode::kInvalidArgument, key + ": expected chi:j or vec:x0,...");
}

Output cmd_mk(const Options& o) {
  const std::int64_t n = o.integer("n");
  std::vector<double> lengths;
  if (o.has("lengths")) {
    for (const auto& s : split(o.str("lengths"), ',')) lengths.push_back(parse_real("lengths", s));
  }
  const CyclicTriple triple(n, lengths, o.real("scale"));
  const StateSpec a = parse_state("psi", o.str("psi"), n);
  const StateSpec b = parse_state("psi2", o.str("psi2"), n);
  MkOptions mo;
  mo.restarts = static_cast<int>(o.integer("restarts"));
  mo.iterations = static_cast<int>(o.integer("iterations"));
  mo.step = o.real("step");
  mo.seed = parse_seed(o.str("seed"));
  const MkResult r = mk_distance(triple, a, b, mo);
  Output out;
  out.result = {{"lower_bound", r.lower_bound},
                {"converged", r.converged},
                {"witness", r.witness},
                {"witness_seminorm", r.witness_seminorm},
                {"agreeing_restarts", r.agreeing_restarts},
                {"anchor", "d(psi, psi') = sup {|psi(a) - psi'(a)| : L_D(a) <= 1}"}};
  if (parse_bool("brute-force", o.str("brute-force"))) {
    out.result["brute_force"] = mk_brute_force(triple, a, b);
  }
  out.diagnostics["semantics"] = "lower bound from the best feasible witness";
  return out;
}

std::string code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kGroupMismatch: return "group_mismatch";
    case ErrorCode::kCapExceeded: return "cap";
    case ErrorCode::kOutOfBall: return "out_of_ball";
    case ErrorCode::kDegenerate: return "degenerate";
    case ErrorCode::kNotConverged: return "not_converged";
    case ErrorCode::kUndecidable: return "undecidable";
  }
  return "error";
}

}  // namespace

CommandOutcome run_command(const std::string& name, const Config& config) {
  CommandOutcome oc;
  oc.document = {{"command", name}, {"inputs", nlohmann::json::object()},
                 {"result", nullptr}, {"diagnostics", nlohmann::json::object()}};
  const auto& table = command_table();
  auto info = std::find_if(table.begin(), table.end(), [&](const CommandInfo& c) { return c.name == name; });
  try {
    if (info == table.end()) fail(ErrorCode::kInvalidArgument, "unknown command '" + name + "'");
    const Options o(*info, config);
    oc.document["inputs"] = o.json();
    Output out;
    if (name == "group-ball") out = cmd_group_ball(o);
    else if (name == "phi") out = cmd_phi(o);
    else if (name == "facets") out = cmd_facets(o);
    else if (name == "busemann") out = cmd_busemann(o);
    else if (name == "stable-norm") out = cmd_stable_norm(o);
    else if (name == "separate") out = cmd_separate(o);
    else if (name == "verify") out = cmd_verify(o);
    else if (name == "nctorus") out = cmd_nctorus(o);
    else if (name == "af-triple") out = cmd_af(o);
    else out = cmd_mk(o);
    oc.document["result"] = out.result;
    oc.document["diagnostics"] = out.diagnostics;
    oc.exit_code = out.exit_code;
  } catch (const Error& e) {
    oc.document["diagnostics"]["error"] = {{"code", code_name(e.code())}, {"message", e.what()}};
    oc.exit_code = kExitUsage;
  }
  return oc;
}

}  // namespace horocp
