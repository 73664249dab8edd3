#include "horocp/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "horocp/error.hpp"
#include "horocp/horoboundary.hpp"
#include "horocp/random.hpp"

namespace horocp {

// ------------------------------------------------------------ CheckReport

CheckReport& CheckReport::finalize() {
  pass = true;
  if (residual && !(*residual <= residual_tol)) pass = false;
  if (slack && !(*slack >= -slack_tol)) pass = false;
  return *this;
}

void CheckReport::absorb(const CheckReport& other) {
  if (other.residual) residual = residual ? std::max(*residual, *other.residual) : *other.residual;
  if (other.slack) slack = slack ? std::min(*slack, *other.slack) : *other.slack;
  finalize();
}

Json CheckReport::to_json() const {
  Json j;
  j["check"] = name;
  j["anchor"] = anchor;
  j["parameters"] = parameters;
  j["residual"] = residual ? Json(*residual) : Json(nullptr);
  j["slack"] = slack ? Json(*slack) : Json(nullptr);
  j["residual_tol"] = residual_tol;
  j["slack_tol"] = slack_tol;
  j["pass"] = pass;
  j["details"] = details;
  return j;
}

namespace {

Json support_json(const CrossedElement& x) {
  Json s = Json::array();
  for (const auto& [g, a] : x.coefficients) s.push_back(x.group.format(g));
  return s;
}

CrossedElement single(const CrossedElement& x, const Element& g, const Matrix& a) {
  CrossedElement y(x.group, x.d);
  y.coefficients.emplace(g, a);
  return y;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// Multiplies by a diagonal matrix given as a vector of real entries.
Matrix diag_times(const Eigen::VectorXd& d, const Matrix& m) {
  return d.cast<Complex>().asDiagonal() * m;
}

Matrix times_diag(const Matrix& m, const Eigen::VectorXd& d) {
  return m * d.cast<Complex>().asDiagonal();
}

Eigen::VectorXd real_diagonal(const Matrix& m) { return m.diagonal().real(); }

}  // namespace

// ------------------------------------------------------- commutator identity

CheckReport check_commutator_identity(const TruncatedHilbert& h, const CrossedElement& x,
                                      const ActionSpec& action) {
  CheckReport rep;
  rep.name = "commutator";
  rep.anchor = "[1 (x) M_l, x] = sum_g (1 (x) phi_g) a_g lambda_g";
  const double r = x.support_radius(h.length());
  if (!h.exact() && h.radius() - r < 1) {
    fail(ErrorCode::kInvalidArgument, "commutator identity needs a window radius R - r >= 1");
  }
  const Matrix xm = realize(h, x, action).matrix;
  const Eigen::VectorXd ml = real_diagonal(m_ell(h).matrix);
  const Matrix lhs = diag_times(ml, xm) - times_diag(xm, ml);
  Matrix rhs = Matrix::Zero(lhs.rows(), lhs.cols());
  for (const auto& [g, a] : x.coefficients) {
    const Eigen::VectorXd phi = real_diagonal(m_phi_g(h, g).matrix);
    rhs += diag_times(phi, realize(h, single(x, g, a), action).matrix);
  }
  rep.residual = max_abs(restrict_columns(h, lhs - rhs, r));
  rep.parameters = {{"group", h.group().name()},
                    {"radius", h.radius()},
                    {"d", h.d()},
                    {"support", support_json(x)}};
  rep.details = {{"window_radius", h.exact() ? h.radius() : h.radius() - r},
                 {"lhs_norm_window", max_abs(restrict_columns(h, lhs, r))}};
  return rep.finalize();
}

// ----------------------------------------------------------------- cocycle

CheckReport check_cocycle(const std::vector<std::pair<Element, Element>>& pairs,
                          const BallTable& ball, const LengthFunction& length) {
  CheckReport rep;
  rep.name = "cocycle";
  rep.anchor = "phi_{gh} = g.phi_h + phi_g";
  rep.residual_tol = 0;
  double defect = 0;
  for (const auto& [g, h] : pairs) defect = std::max(defect, cocycle_defect(g, h, ball, length));
  rep.residual = defect;
  rep.parameters = {{"group", length.group().name()},
                    {"radius", ball.radius()},
                    {"pairs", pairs.size()}};
  rep.details = {{"ball_size", ball.size()}};
  return rep.finalize();
}

// -------------------------------------------------- conditional expectation

CheckReport check_conditional_expectation(const TruncatedHilbert& h, const CrossedElement& x,
                                          const Element& g, const SubgroupPredicate& sub,
                                          const Matrix& d_a, const ActionSpec& action) {
  CheckReport rep;
  rep.name = "conditional-expectation";
  rep.anchor =
      "E_H([T, x] lambda_{g^-1}) lambda_g = [T, E_H(x lambda_{g^-1}) lambda_g] for "
      "T in {D_A (x) 1, 1 (x) M_l}; ||E_H(y)|| <= ||y||";
  rep.slack_tol = kEqualityTol;
  if (!sub.contains(h.group().identity())) {
    fail(ErrorCode::kInvalidArgument, "predicate " + sub.name + " rejects the identity");
  }
  const GroupSpec& group = h.group();
  const double r = x.support_radius(h.length());
  const double lg = h.length()(g);
  const double window = r + 2 * lg;
  if (!h.exact() && window > h.radius()) {
    fail(ErrorCode::kInvalidArgument, "conditional expectation window R - r - 2 l(g) is empty");
  }
  const Element ginv = group.inverse(g);

  const Matrix xm = realize(h, x, action).matrix;
  const Matrix lam = lambda(h, g).matrix;
  const Matrix lam_inv = lambda(h, ginv).matrix;

  // E_H(x lambda_{g^-1}) lambda_g keeps the coefficients a_k with k g^-1 in H.
  CrossedElement y(x.group, x.d);
  for (const auto& [k, a] : x.coefficients) {
    if (sub.contains(group.multiply(k, ginv))) y.coefficients.emplace(k, a);
  }
  const Matrix ym = realize(h, y, action).matrix;

  const Matrix ml = m_ell(h).matrix;
  const Matrix da = coefficient_lift(h, d_a);
  double residual = 0;
  double norm_comm_m = 0;
  double norm_comp_m = 0;
  for (int which = 0; which < 2; ++which) {
    const Matrix& t = which == 0 ? da : ml;
    const Matrix comm = commutator(t, xm);
    const Matrix lhs = mask_expectation(h, comm * lam_inv, sub) * lam;
    const Matrix rhs = commutator(t, ym);
    residual = std::max(residual, max_abs(restrict_columns(h, lhs - rhs, window)));
    if (which == 1) {
      norm_comm_m = op_norm(comm);
      norm_comp_m = op_norm(lhs);
    }
  }

  // Contractivity of the coefficient restriction and of the coset compression.
  const Matrix ex = realize(h, conditional_expectation(x, sub), action).matrix;
  const double nx = op_norm(xm);
  const double nex = op_norm(ex);
  const double mask_residual = max_abs(ex - mask_expectation(h, xm, sub));
  residual = std::max(residual, mask_residual);

  rep.residual = residual;
  rep.slack = std::min(nx - nex, norm_comm_m - norm_comp_m);
  rep.parameters = {{"group", group.name()},   {"radius", h.radius()},
                    {"d", h.d()},              {"g", group.format(g)},
                    {"subgroup", sub.name},    {"support", support_json(x)}};
  rep.details = {{"window_radius", h.exact() ? h.radius() : h.radius() - window},
                 {"norm_x", nx},
                 {"norm_E_x", nex},
                 {"norm_comm", norm_comm_m},
                 {"norm_coset_compression", norm_comp_m},
                 {"mask_residual", mask_residual}};
  return rep.finalize();
}

// ------------------------------------------------------------ Ozawa-Rieffel

double ozawa_rieffel_factor(double l, std::int64_t n) {
  require(n >= 0 && static_cast<double>(n) >= std::fabs(l), "factor needs N >= |L|");
  // sum_{k > N} (k + c)^-2 by partial sums plus the Euler-Maclaurin tail.
  auto side = [n](double c) {
    const std::int64_t cut = n + 4000;
    double s = 0;
    for (std::int64_t k = cut; k > n; --k) {
      const double v = static_cast<double>(k) + c;
      s += 1.0 / (v * v);
    }
    const double x = static_cast<double>(cut) + c;
    return s + 1.0 / x - 1.0 / (2 * x * x) + 1.0 / (6 * x * x * x) - 1.0 / (30 * std::pow(x, 5));
  };
  const double total = side(l) + side(-l);
  return std::sqrt(total);
}

CheckReport check_ozawa_rieffel(const LengthFunction& length, const CrossedElement& x,
                                const ActionSpec& action, const OzawaRieffelParams& p) {
  CheckReport rep;
  rep.name = "ozawa-rieffel";
  rep.anchor =
      "||sum_{|phi(g)| > N} a_g lambda_g|| <= (sum_{|k| > N} (k + L)^-2)^(1/2) "
      "||[1 (x) M_phi, x] + L x||";
  const GroupSpec& group = length.group();
  require(static_cast<double>(p.n) >= std::fabs(p.l), "Ozawa-Rieffel check needs N >= |L|");
  const double factor = ozawa_rieffel_factor(p.l, p.n);

  auto phi_of = [&](const Element& g) {
    auto pg = group.abelian_projection(g);
    require(pg.size() == p.phi.size(), "homomorphism has the wrong dimension");
    std::int64_t v = 0;
    for (std::size_t i = 0; i < pg.size(); ++i) v += p.phi[i] * pg[i];
    return v;
  };

  CrossedElement tail(x.group, x.d);
  for (const auto& [g, a] : x.coefficients) {
    if (std::llabs(phi_of(g)) > p.n) tail.coefficients.emplace(g, a);
  }
  const TruncatedHilbert h_lhs(length, p.radius, x.d);
  const double lhs = tail.empty() ? 0.0 : op_norm(realize(h_lhs, tail, action).matrix);

  const double margin = p.margin < 0 ? p.radius : p.margin;
  double rhs_radius = p.radius + margin;
  double rhs = 0;
  int used = 0;
  double slack = 0;
  for (;;) {
    const TruncatedHilbert h_rhs(length, rhs_radius, x.d);
    const Matrix xm = realize(h_rhs, x, action).matrix;
    const Eigen::VectorXd mphi = real_diagonal(m_phi(h_rhs, p.phi).matrix);
    const Matrix z = diag_times(mphi, xm) - times_diag(xm, mphi) + p.l * xm;
    rhs = op_norm(z);
    slack = factor * rhs - lhs;
    if (slack >= -rep.slack_tol || used >= p.escalations) break;
    ++used;
    rhs_radius += margin;
  }
  rep.slack = slack;
  Json phi_json = p.phi;
  rep.parameters = {{"group", group.name()}, {"radius", p.radius}, {"margin", margin},
                    {"N", p.n},              {"L", p.l},          {"phi", phi_json},
                    {"support", support_json(x)}};
  rep.details = {{"factor", factor},
                 {"lhs", lhs},
                 {"rhs", rhs},
                 {"rhs_radius", rhs_radius},
                 {"escalations", used}};
  return rep.finalize();
}

// ------------------------------------------------------ isomorphism unitary

CheckReport check_isomorphism_unitary(const LengthFunction& length, double radius,
                                      const Matrix& a, const std::vector<double>& f,
                                      const Element& g, const ActionSpec& action) {
  CheckReport rep;
  rep.name = "isomorphism";
  rep.anchor =
      "U(xi (x) delta_k) = lambda_k xi (x) delta_k: U pi(a) U* = pi(a) (x) 1, "
      "U nu(f) U* = 1 (x) nu(f), U lambda_g U* = lambda_g (x) lambda_g";
  const auto d = static_cast<std::size_t>(a.rows());
  const TruncatedHilbert h(length, radius, d);
  const GroupSpec& group = h.group();
  const BallTable& ball = h.ball();
  const std::size_t nb = ball.size();
  require(f.size() == nb, "f needs one value per ball element");
  const auto n = static_cast<Eigen::Index>(h.dim());
  const auto big = n * static_cast<Eigen::Index>(nb);
  if (static_cast<std::size_t>(big) > kDimCap) {
    fail(ErrorCode::kCapExceeded, "doubled truncation exceeds the dense cap");
  }
  const auto di = static_cast<Eigen::Index>(d);
  auto at = [&](std::size_t k, std::size_t hp) {
    return (static_cast<Eigen::Index>(k) * static_cast<Eigen::Index>(nb) +
            static_cast<Eigen::Index>(hp)) * di;
  };

  Matrix u = Matrix::Zero(big, big);
  for (std::size_t k = 0; k < nb; ++k) {
    for (std::size_t hp = 0; hp < nb; ++hp) {
      auto t = ball.index_of(group.multiply(ball.element(k), ball.element(hp)));
      if (t) u.block(at(k, *t), at(k, hp), di, di) = Matrix::Identity(di, di);
    }
  }
  const Matrix pi = pi_tilde(h, a, action).matrix;
  Matrix nu = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < nb; ++i) {
    for (Eigen::Index al = 0; al < di; ++al) {
      nu(static_cast<Eigen::Index>(i) * di + al, static_cast<Eigen::Index>(i) * di + al) = f[i];
    }
  }
  const Matrix lam_g = lambda(h, g).matrix;

  Matrix iota_pi = Matrix::Zero(big, big);
  Matrix iota_nu = Matrix::Zero(big, big);
  Matrix iota_lam = Matrix::Zero(big, big);
  Matrix rhs_pi = Matrix::Zero(big, big);
  Matrix rhs_nu = Matrix::Zero(big, big);
  Matrix rhs_lam = Matrix::Zero(big, big);
  for (std::size_t k = 0; k < nb; ++k) {
    const Element& ke = ball.element(k);
    const Matrix lk = lambda(h, ke).matrix;
    const Matrix lk_inv = lambda(h, group.inverse(ke)).matrix;
    const Eigen::Index off = at(k, 0);
    iota_pi.block(off, off, n, n) = lk_inv * pi * lk;
    iota_nu.block(off, off, n, n) = lk_inv * nu * lk;
    rhs_pi.block(off, off, n, n) = pi;
    rhs_nu.block(off, off, n, n) = nu;
    if (auto gk = ball.index_of(group.multiply(g, ke))) {
      iota_lam.block(at(*gk, 0), off, n, n) = Matrix::Identity(n, n);
      rhs_lam.block(at(*gk, 0), off, n, n) = lam_g;
    }
  }

  // Columns (k, h') with l(h') + l(k) + l(g) <= R.
  const double lg = length(g);
  std::vector<Eigen::Index> cols;
  for (std::size_t k = 0; k < nb; ++k) {
    for (std::size_t hp = 0; hp < nb; ++hp) {
      if (ball.length(k) + ball.length(hp) + lg <= radius + 1e-12) {
        for (Eigen::Index al = 0; al < di; ++al) cols.push_back(at(k, hp) + al);
      }
    }
  }
  const Matrix ud = u.adjoint();
  auto window_residual = [&](const Matrix& iota, const Matrix& rhs) {
    const Matrix diff = u * iota * ud - rhs;
    double m = 0;
    for (auto c : cols) m = std::max(m, diff.col(c).cwiseAbs().maxCoeff());
    return m;
  };
  const double r_pi = window_residual(iota_pi, rhs_pi);
  const double r_nu = window_residual(iota_nu, rhs_nu);
  const double r_lam = window_residual(iota_lam, rhs_lam);
  rep.residual = std::max({r_pi, r_nu, r_lam});
  rep.parameters = {{"group", group.name()}, {"radius", radius}, {"d", d},
                    {"g", group.format(g)}};
  rep.details = {{"residual_pi", r_pi},
                 {"residual_nu", r_nu},
                 {"residual_lambda", r_lam},
                 {"window_columns", cols.size()},
                 {"dimension", big}};
  if (cols.empty()) fail(ErrorCode::kInvalidArgument, "isomorphism window is empty");
  return rep.finalize();
}

// ------------------------------------------------------------------ NC torus

CheckReport check_equicontinuity_nctorus(const NcTorusParams& p, std::optional<CrossedElement> x_in) {
  CheckReport rep;
  rep.name = "nctorus";
  rep.anchor =
      "uv = e^{2 pi i theta} vu; ||[1 (x) M_l, alpha^n(x)]|| <= "
      "sum_{g in supp x} ||a_g|| ||[1 (x) M_l, lambda_g]||";
  require(p.q >= 1 && p.n_min <= p.n_max, "bad torus parameters");
  const Matrix u = clock_matrix(p.p, p.q);
  const Matrix v = shift_matrix(p.q);
  const double theta = static_cast<double>(p.p) / static_cast<double>(p.q);
  const Complex phase = std::polar(1.0, 2 * M_PI * theta);
  const auto qi = static_cast<Eigen::Index>(p.q);
  const Matrix id = Matrix::Identity(qi, qi);
  const double rel = std::max(max_abs(u * v - phase * v * u),
                              max_abs(u * v * u.adjoint() * v.adjoint() - phase * id));
  const double alpha_res = max_abs(v * u * v.adjoint() - std::conj(phase) * u);

  const GroupSpec z = GroupSpec::free_abelian(1);
  const LengthFunction len = LengthFunction::word_length(z);
  const ActionSpec action = ActionSpec::inner(z, {v});
  const TruncatedHilbert h(len, p.radius, static_cast<std::size_t>(p.q));
  CrossedElement x(z, static_cast<std::size_t>(p.q));
  if (x_in) {
    x = *x_in;
  } else {
    x.add(z.element({1}), u);
    x.add(z.element({-1}), u.adjoint());
  }
  const auto [tp, tq] = p.theta_lambda.value_or(std::make_pair(p.p, p.q));

  const Eigen::VectorXd ml = real_diagonal(m_ell(h).matrix);
  double bound = 0;
  for (const auto& [g, a] : x.coefficients) {
    const Matrix lg = lambda(h, g).matrix;
    bound += op_norm(a) * op_norm(diag_times(ml, lg) - times_diag(lg, ml));
  }
  double worst = INFINITY;
  double max_lhs = 0;
  for (std::int64_t n = p.n_min; n <= p.n_max; ++n) {
    const Matrix vn = action.unitary(z.element({n}));
    CrossedElement xn(z, x.d);
    for (const auto& [g, a] : x.coefficients) {
      // lambda_g picks up exp(-2 pi i n g theta_lambda); reduce n g tq first.
      const std::int64_t num = ((-n * g.coords[0] * tp) % tq + tq) % tq;
      const Complex ph = std::polar(1.0, 2 * M_PI * static_cast<double>(num) / static_cast<double>(tq));
      xn.coefficients.emplace(g, ph * (vn * a * vn.adjoint()));
    }
    const Matrix xm = realize(h, xn, action).matrix;
    const double lhs = op_norm(diag_times(ml, xm) - times_diag(xm, ml));
    max_lhs = std::max(max_lhs, lhs);
    worst = std::min(worst, bound - lhs);
  }
  rep.residual = std::max(rel, alpha_res);
  rep.slack = worst;
  rep.parameters = {{"theta", std::to_string(p.p) + "/" + std::to_string(p.q)},
                    {"theta_lambda", std::to_string(tp) + "/" + std::to_string(tq)},
                    {"n_min", p.n_min},
                    {"n_max", p.n_max},
                    {"radius", p.radius},
                    {"support", support_json(x)}};
  rep.details = {{"relation_residual", rel},
                 {"alpha_residual", alpha_res},
                 {"bound", bound},
                 {"max_lhs", max_lhs}};
  return rep.finalize();
}

// ---------------------------------------------------------------- AF triple

CheckReport check_af_triple(const AfParams& p) {
  CheckReport rep;
  rep.name = "af-triple";
  rep.anchor =
      "D = sum_i lambda_i Q_i; rank Q_i = |G/G_i| - |G/G_{i-1}|; [Q_j, a] = 0 for a in A_i, j > i; "
      "||[D, g.a]|| <= sum_{j <= i} 2 |lambda_j| ||a||";
  require(!p.orders.empty(), "AF triple needs at least one odometer order");
  const std::size_t depth = p.orders.size();
  std::vector<std::int64_t> big_n{1};
  for (auto o : p.orders) {
    require(o >= 2, "odometer orders must be at least 2");
    big_n.push_back(big_n.back() * o);
    require(big_n.back() <= 4096, "AF depth too large for dense matrices");
  }
  std::vector<double> lam = p.eigenvalues;
  if (lam.empty()) {
    for (std::size_t i = 1; i <= depth; ++i) lam.push_back(static_cast<double>(big_n[i]));
  }
  require(lam.size() == depth, "need one eigenvalue per level");
  const auto dim = static_cast<Eigen::Index>(big_n.back());

  // P_i projects onto the N_i-periodic vectors; the indicators of the
  // residue classes mod N_i are orthogonal with norm^2 = dim / N_i.
  std::vector<Matrix> proj;
  for (std::size_t i = 0; i <= depth; ++i) {
    const std::int64_t ni = big_n[i];
    Matrix pm = Matrix::Zero(dim, dim);
    const double w = static_cast<double>(ni) / static_cast<double>(dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) {
        if ((r - c) % ni == 0) pm(r, c) = w;
      }
    }
    proj.push_back(pm);
  }
  std::vector<Matrix> q{proj[0]};
  for (std::size_t i = 1; i <= depth; ++i) q.push_back(proj[i] - proj[i - 1]);

  double residual = 0;
  Json ranks = Json::array();
  for (std::size_t i = 0; i <= depth; ++i) {
    const double tr = q[i].trace().real();
    const double expected = i == 0 ? 1.0 : static_cast<double>(big_n[i] - big_n[i - 1]);
    ranks.push_back(tr);
    residual = std::max(residual, std::fabs(tr - expected));
    residual = std::max(residual, max_abs(q[i] * q[i] - q[i]));
    residual = std::max(residual, max_abs(q[i] - q[i].adjoint()));
  }
  double ortho = 0;
  for (std::size_t i = 0; i <= depth; ++i) {
    for (std::size_t j = i + 1; j <= depth; ++j) ortho = std::max(ortho, max_abs(q[i] * q[j]));
  }
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& m : q) sum += m;
  const double completeness = max_abs(sum - Matrix::Identity(dim, dim));
  const double const_res =
      max_abs(q[0] - Matrix::Constant(dim, dim, Complex(1.0 / static_cast<double>(dim), 0)));

  Matrix dirac = Matrix::Zero(dim, dim);
  for (std::size_t i = 1; i <= depth; ++i) dirac += lam[i - 1] * q[i];

  Rng rng(derive_seed(p.seed, "af-triple"));
  double comm = 0;
  double slack = INFINITY;
  for (std::size_t i = 0; i <= depth; ++i) {
    double bound = 0;
    for (std::size_t j = 1; j <= i; ++j) bound += 2 * std::fabs(lam[j - 1]);
    for (int s = 0; s < p.samples; ++s) {
      std::vector<Complex> vals(static_cast<std::size_t>(big_n[i]));
      for (auto& c : vals) c = Complex(rng.normal(), rng.normal());
      const std::int64_t shift = rng.integer(0, big_n.back() - 1);
      Matrix a = Matrix::Zero(dim, dim);
      double norm_a = 0;
      for (Eigen::Index k = 0; k < dim; ++k) {
        a(k, k) = vals[static_cast<std::size_t>(((k - shift) % big_n[i] + big_n[i]) % big_n[i])];
        norm_a = std::max(norm_a, std::abs(a(k, k)));
      }
      for (std::size_t j = i + 1; j <= depth; ++j) comm = std::max(comm, max_abs(commutator(q[j], a)));
      slack = std::min(slack, bound * norm_a - op_norm(commutator(dirac, a)));
    }
  }
  rep.residual = std::max({residual, ortho, completeness, const_res, comm});
  rep.slack = slack;
  Json orders = p.orders;
  Json eig = lam;
  rep.parameters = {{"orders", orders}, {"eigenvalues", eig}, {"samples", p.samples}};
  rep.details = {{"rank_traces", ranks},
                 {"orthogonality_residual", ortho},
                 {"completeness_residual", completeness},
                 {"constants_residual", const_res},
                 {"commutation_residual", comm},
                 {"dimension", dim}};
  return rep.finalize();
}

// -------------------------------------------------------- coefficient bounds

CheckReport check_coefficient_bounds(const TruncatedHilbert& h, const CrossedElement& x,
                                     const Element& g, const Matrix& d_a,
                                     const ActionSpec& action) {
  CheckReport rep;
  rep.name = "coefficient-bounds";
  rep.anchor = "||[D_A, a_h]|| <= ||[D_A (x) 1, x]||, ||a_h|| <= l(hg)^-1 ||[1 (x) M_l, x]||";
  const GroupSpec& group = h.group();
  const BallTable& ball = h.ball();
  const Matrix xm = realize(h, x, action).matrix;
  const Eigen::VectorXd ml = real_diagonal(m_ell(h).matrix);
  const double norm_m = op_norm(diag_times(ml, xm) - times_diag(xm, ml));
  const Matrix da = coefficient_lift(h, d_a);
  const double norm_d = op_norm(commutator(da, xm));
  const Element ginv = group.inverse(g);
  double slack = INFINITY;
  Json per = Json::array();
  for (const auto& [k, b] : x.coefficients) {
    if (!ball.contains(group.inverse(k))) {
      fail(ErrorCode::kOutOfBall, "coefficient bound needs k^-1 inside the ball");
    }
    const Element hh = group.multiply(k, ginv);
    const double sd = norm_d - op_norm(commutator(d_a, b));
    slack = std::min(slack, sd);
    Json entry = {{"h", group.format(hh)}, {"k", group.format(k)}, {"slack_dirac", sd}};
    if (k != group.identity()) {
      const double sm = norm_m / h.length()(k) - op_norm(b);
      slack = std::min(slack, sm);
      entry["slack_length"] = sm;
    }
    per.push_back(entry);
  }
  rep.slack = slack;
  rep.parameters = {{"group", group.name()}, {"radius", h.radius()}, {"d", h.d()},
                    {"g", group.format(g)}, {"support", support_json(x)}};
  rep.details = {{"norm_comm_length", norm_m}, {"norm_comm_dirac", norm_d}, {"terms", per}};
  return rep.finalize();
}

}  // namespace horocp
