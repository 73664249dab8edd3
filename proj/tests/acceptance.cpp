// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "horocp/error.hpp"
#include "horocp/lemmas.hpp"
#include "horocp/quantum_metric.hpp"
#include "horocp/separation.hpp"
#include "horocp/suite.hpp"

using namespace horocp;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

SuiteOptions defaults() { return SuiteOptions{}; }

Outcome c1() {
  const auto t0 = Clock::now();
  const GroupSpec h3 = parse_group("H3");
  const auto len = LengthFunction::word_length(h3);
  const auto ball = len.ball(12);
  bool ok = true;
  for (std::int64_t i = 1; i <= 9; ++i) {
    const double expect = 2 * std::ceil(2 * std::sqrt(static_cast<double>(i)));
    ok = ok && len(h3.element({0, 0, i})) == expect && len(h3.element({0, 0, -i})) == expect;
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 60, "|B_12| = " + std::to_string(ball->size()) + ", " + fmt(secs) + " s"};
}

Outcome c2() {
  const auto r = run_suite_check("cocycle", defaults());
  return {r.residual && *r.residual == 0, "max defect " + fmt(r.residual.value_or(NAN))};
}

Outcome c3() {
  const auto r = run_suite_check("commutator", defaults());
  return {r.residual && *r.residual < 1e-12, "max residual " + fmt(r.residual.value_or(NAN))};
}

Outcome c4() {
  const auto r = run_suite_check("conditional-expectation", defaults());
  const bool ok = r.residual && *r.residual <= 1e-12 && r.slack && *r.slack >= -1e-12;
  return {ok, "residual " + fmt(r.residual.value_or(NAN)) + ", slack " + fmt(r.slack.value_or(NAN))};
}

Outcome c5() {
  const auto r = run_suite_check("ozawa-rieffel", defaults());
  const double factor = ozawa_rieffel_factor(0, 1);
  const double expect = std::sqrt(2 * (M_PI * M_PI / 6 - 1));
  const bool ok = r.slack && *r.slack >= -1e-9 && std::fabs(factor - expect) <= 1e-9;
  return {ok, "min slack " + fmt(r.slack.value_or(NAN)) + ", factor(1,0) " + fmt(factor)};
}

Outcome c6() {
  const auto r = run_suite_check("isomorphism", defaults());
  return {r.residual && *r.residual <= 1e-12, "max residual " + fmt(r.residual.value_or(NAN))};
}

Outcome c7() {
  const auto r = run_suite_check("stable-norm-oracle", defaults());
  const bool ok = r.slack && *r.slack >= -1e-9 && r.residual && *r.residual == 0;
  return {ok, "min(gap - |diff|) " + fmt(r.slack.value_or(NAN)) + ", homogeneity " +
                  fmt(r.residual.value_or(NAN))};
}

Outcome c8() {
  bool ok = true;
  for (int m = 1; m <= 3; ++m) {
    const auto cert = separation_certificate(LengthFunction::word_length(GroupSpec::free_abelian(m)));
    ok = ok && cert.separated && cert.rank == static_cast<std::size_t>(m);
  }
  const auto central = separation_certificate(LengthFunction::central_sqrt_formula());
  const double ratio = central.sublinearity ? central.sublinearity->ratio : NAN;
  ok = ok && !central.separated && central.sublinearity && central.sublinearity->horizon == 10000 &&
       std::fabs(ratio - 0.04) <= 1e-15;
  return {ok, "Z^1..3 separated; central ratio " + fmt(ratio) + " at I = 10000"};
}

Outcome c9() {
  double rel = 0;
  for (std::int64_t q : {3, 5, 8}) {
    const Matrix u = clock_matrix(1, q), v = shift_matrix(q);
    const Complex w = std::polar(1.0, 2 * M_PI / static_cast<double>(q));
    rel = std::max(rel, max_abs(u * v - w * v * u));
  }
  NcTorusParams p;  // q = 3, n in [-50, 50], R = 20
  const auto r = check_equicontinuity_nctorus(p);
  const bool ok = rel < 1e-12 && r.residual && *r.residual < 1e-12 && r.slack && *r.slack >= -1e-9;
  return {ok, "relation residual " + fmt(rel) + ", min slack " + fmt(r.slack.value_or(NAN))};
}

Outcome c10() {
  const auto r = check_af_triple(AfParams{});
  bool ranks = true;
  const auto& tr = r.details["rank_traces"];
  for (std::size_t i = 1; i < tr.size(); ++i) {
    ranks = ranks && std::fabs(tr[i].get<double>() - std::ldexp(1.0, static_cast<int>(i) - 1)) < 1e-12;
  }
  const bool ok = ranks && tr.size() == 6 && r.residual && *r.residual < 1e-12;
  return {ok, "max residual " + fmt(r.residual.value_or(NAN))};
}

Outcome c11() {
  const auto a = StateSpec::character(0), b = StateSpec::character(1);
  const auto d = mk_distance(CyclicTriple(2), a, b);
  const double bf = mk_brute_force(CyclicTriple(2), a, b);
  const auto d2 = mk_distance(CyclicTriple(2, {}, 2.0), a, b);
  const bool ok = d.converged && std::fabs(d.lower_bound - 2) <= 1e-6 &&
                  std::fabs(d.lower_bound - bf) <= 1e-4 &&
                  std::fabs(d2.lower_bound - d.lower_bound / 2) <= 1e-6;
  return {ok, "d = " + fmt(d.lower_bound) + ", brute force " + fmt(bf) + ", d(2D) = " +
                  fmt(d2.lower_bound)};
}

Outcome c12() {
  const GroupSpec z = parse_group("Z");
  const auto len = LengthFunction::word_length(z);
  bool monotone = true;
  double prev = 0;
  for (int r = 1; r <= 40; ++r) {
    const TruncatedHilbert h(len, r, 1);
    const double v = op_norm(lambda(h, z.element({1})).matrix + lambda(h, z.element({-1})).matrix);
    monotone = monotone && v >= prev;
    prev = v;
  }
  double comm = 0;
  for (int r = 2; r <= 40; ++r) {
    const TruncatedHilbert h(len, r, 1);
    const Matrix l1 = lambda(h, z.element({1})).matrix;
    const Matrix m = m_ell(h).matrix;
    comm = std::max(comm, std::fabs(op_norm(m * l1 - l1 * m) - 1.0));
  }
  return {monotone && prev >= 1.95 && comm == 0,
          "norm at R=40 " + fmt(prev) + ", |[M, lambda_1]| - 1 up to " + fmt(comm)};
}

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(HOROCP_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  pclose(pipe);
  return out;
}

Outcome c13() {
  const auto t0 = Clock::now();
  const std::string a = run_cli("verify all --seed 7");
  const double first = seconds_since(t0);
  const std::string b = run_cli("verify all --seed 7");
  const bool ok = !a.empty() && a == b && first < 600 &&
                  a.find("\"failed\": 0") != std::string::npos;
  return {ok, std::to_string(a.size()) + " bytes, identical " + (a == b ? "yes" : "no") +
                  ", first run " + fmt(first) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"heisenberg central length", c1},   {"cocycle identity", c2},
      {"commutator identity", c3},         {"conditional expectation", c4},
      {"ozawa-rieffel bound", c5},         {"isomorphism conjugations", c6},
      {"stable norm oracle", c7},          {"separation certificates", c8},
      {"noncommutative torus", c9},        {"af triple", c10},
      {"monge-kantorovich on Z_2", c11},   {"operator norm engine", c12},
      {"cli determinism", c13},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
