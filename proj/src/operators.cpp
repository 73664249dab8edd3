#include "horocp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "horocp/error.hpp"
#include "horocp/random.hpp"

namespace horocp {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// ------------------------------------------------------------- ActionSpec

ActionSpec ActionSpec::trivial(const GroupSpec& group, std::size_t d) {
  require(d >= 1, "coefficient dimension must be positive");
  return ActionSpec(group, d);
}

namespace {

std::size_t basis_count(const GroupSpec& g) {
  switch (g.kind()) {
    case GroupKind::kFreeAbelian: return static_cast<std::size_t>(g.rank());
    case GroupKind::kFreeAbelianTimesCyclic: return static_cast<std::size_t>(g.rank()) + 1;
    case GroupKind::kHeisenberg3: return 2;
    case GroupKind::kFiniteCyclic: return 1;
  }
  return 0;
}

RelatorScalar projective_match(std::string name, const Matrix& lhs, const Matrix& rhs) {
  const auto d = static_cast<double>(lhs.rows());
  Complex k = (lhs * rhs.adjoint()).trace() / d;
  RelatorScalar r{std::move(name), k, max_abs(lhs - k * rhs)};
  if (r.residual > 1e-10 || std::fabs(std::abs(k) - 1.0) > 1e-10) {
    fail(ErrorCode::kInvalidArgument,
         "action unitaries are not projectively consistent on relator " + r.relator);
  }
  return r;
}

}  // namespace

ActionSpec ActionSpec::inner(const GroupSpec& group, std::vector<Matrix> basis_unitaries) {
  require(basis_unitaries.size() == basis_count(group),
          "action on " + group.name() + " needs " + std::to_string(basis_count(group)) +
              " generator unitaries");
  require(!basis_unitaries.empty(), "inner action needs generator unitaries");
  const auto d = static_cast<std::size_t>(basis_unitaries.front().rows());
  ActionSpec act(group, d);
  act.trivial_ = false;
  for (const auto& w : basis_unitaries) {
    require(static_cast<std::size_t>(w.rows()) == d && static_cast<std::size_t>(w.cols()) == d,
            "action unitaries must all be square of the same size");
    const double res = max_abs(w * w.adjoint() - Matrix::Identity(w.rows(), w.cols()));
    act.unitarity_residual_ = std::max(act.unitarity_residual_, res);
  }
  if (act.unitarity_residual_ > 1e-12) {
    fail(ErrorCode::kInvalidArgument, "action generator is not unitary");
  }
  act.basis_ = std::move(basis_unitaries);
  const auto& w = act.basis_;
  const Matrix id = Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  switch (group.kind()) {
    case GroupKind::kFreeAbelian:
    case GroupKind::kFreeAbelianTimesCyclic:
      for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = i + 1; j < w.size(); ++j) {
          act.scalars_.push_back(projective_match(
              "W" + std::to_string(i + 1) + "W" + std::to_string(j + 1) + "=W" +
                  std::to_string(j + 1) + "W" + std::to_string(i + 1),
              w[i] * w[j], w[j] * w[i]));
        }
      }
      if (group.kind() == GroupKind::kFreeAbelianTimesCyclic) {
        act.scalars_.push_back(
            projective_match("Wt^n=1", act.power(w.size() - 1, group.torsion_order()), id));
      }
      break;
    case GroupKind::kHeisenberg3: {
      act.basis_.push_back(w[0].adjoint() * w[1].adjoint() * w[0] * w[1]);
      const Matrix& wc = act.basis_[2];
      act.scalars_.push_back(projective_match("WaWc=WcWa", w[0] * wc, wc * w[0]));
      act.scalars_.push_back(projective_match("WbWc=WcWb", w[1] * wc, wc * w[1]));
      break;
    }
    case GroupKind::kFiniteCyclic:
      act.scalars_.push_back(projective_match("W^n=1", act.power(0, group.torsion_order()), id));
      break;
  }
  return act;
}

Matrix ActionSpec::power(std::size_t i, std::int64_t k) const {
  Matrix base = k < 0 ? Matrix(basis_[i].adjoint()) : basis_[i];
  auto n = static_cast<std::uint64_t>(k < 0 ? -k : k);
  Matrix acc = Matrix::Identity(static_cast<Eigen::Index>(d_), static_cast<Eigen::Index>(d_));
  while (n > 0) {
    if (n & 1U) acc = acc * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return acc;
}

Matrix ActionSpec::unitary(const Element& g) const {
  const auto n = static_cast<Eigen::Index>(d_);
  if (trivial_) return Matrix::Identity(n, n);
  const auto& c = g.coords;
  switch (group_.kind()) {
    case GroupKind::kFreeAbelian:
    case GroupKind::kFreeAbelianTimesCyclic: {
      Matrix w = Matrix::Identity(n, n);
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 0) w = w * power(i, c[i]);
      }
      return w;
    }
    case GroupKind::kHeisenberg3:
      // (x, y, z) = a^x b^y c^(z - xy)
      return power(0, c[0]) * power(1, c[1]) * power(2, c[2] - c[0] * c[1]);
    case GroupKind::kFiniteCyclic:
      return power(0, c[0]);
  }
  return Matrix::Identity(n, n);
}

Matrix ActionSpec::act(const Element& g, const Matrix& a) const {
  if (trivial_) return a;
  const Matrix w = unitary(g);
  return w * a * w.adjoint();
}

// --------------------------------------------------------- CrossedElement

CrossedElement& CrossedElement::add(const Element& g, const Matrix& a) {
  require(static_cast<std::size_t>(a.rows()) == d && static_cast<std::size_t>(a.cols()) == d,
          "coefficient has the wrong size");
  Element key = group.element(g.coords);
  auto it = coefficients.find(key);
  if (it == coefficients.end()) {
    coefficients.emplace(key, a);
  } else {
    it->second += a;
  }
  it = coefficients.find(key);
  if (max_abs(it->second) == 0) coefficients.erase(it);
  return *this;
}

double CrossedElement::support_radius(const LengthFunction& length) const {
  double r = 0;
  for (const auto& [g, a] : coefficients) r = std::max(r, length(g));
  return r;
}

// ------------------------------------------------------- TruncatedHilbert

TruncatedHilbert::TruncatedHilbert(LengthFunction length, double radius, std::size_t d)
    : length_(std::move(length)), radius_(radius), d_(d) {
  require(d >= 1, "coefficient dimension must be positive");
  ball_ = length_.ball(radius);
  if (d_ * ball_->size() > kDimCap) {
    fail(ErrorCode::kCapExceeded, "operator dimension " + std::to_string(d_ * ball_->size()) +
                                      " exceeds the dense cap " + std::to_string(kDimCap));
  }
  const GroupSpec& g = length_.group();
  exact_ = g.is_finite() && ball_->size() == static_cast<std::size_t>(g.torsion_order());
}

std::vector<std::size_t> TruncatedHilbert::window(double r) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ball_->size(); ++i) {
    if (exact_ || ball_->length(i) <= radius_ - r + 1e-12) out.push_back(i);
  }
  return out;
}

// ------------------------------------------------------------- operators

namespace {

Matrix zeros(const TruncatedHilbert& h) {
  const auto n = static_cast<Eigen::Index>(h.dim());
  return Matrix::Zero(n, n);
}

Matrix diagonal(const TruncatedHilbert& h, const std::vector<double>& per_element) {
  Matrix m = zeros(h);
  const auto d = static_cast<Eigen::Index>(h.d());
  for (std::size_t i = 0; i < per_element.size(); ++i) {
    for (Eigen::Index a = 0; a < d; ++a) {
      const auto k = static_cast<Eigen::Index>(i) * d + a;
      m(k, k) = per_element[i];
    }
  }
  return m;
}

}  // namespace

TruncatedOperator lambda(const TruncatedHilbert& h, const Element& g) {
  const GroupSpec& group = h.group();
  const BallTable& ball = h.ball();
  const auto d = static_cast<Eigen::Index>(h.d());
  TruncatedOperator op{zeros(h), "lambda(" + group.format(g) + ")", -1, false};
  bool any = false;
  for (std::size_t j = 0; j < ball.size(); ++j) {
    auto i = ball.index_of(group.multiply(g, ball.element(j)));
    if (!i) continue;
    any = true;
    op.matrix.block(static_cast<Eigen::Index>(*i) * d, static_cast<Eigen::Index>(j) * d, d, d) =
        Matrix::Identity(d, d);
  }
  op.empty_compression = !any;
  return op;
}

TruncatedOperator pi_tilde(const TruncatedHilbert& h, const Matrix& a, const ActionSpec& action) {
  require(static_cast<std::size_t>(a.rows()) == h.d(), "pi_tilde coefficient has the wrong size");
  const GroupSpec& group = h.group();
  const BallTable& ball = h.ball();
  const auto d = static_cast<Eigen::Index>(h.d());
  TruncatedOperator op{zeros(h), "pi_tilde", -1, false};
  for (std::size_t j = 0; j < ball.size(); ++j) {
    const auto k = static_cast<Eigen::Index>(j) * d;
    op.matrix.block(k, k, d, d) = action.act(group.inverse(ball.element(j)), a);
  }
  return op;
}

TruncatedOperator m_ell(const TruncatedHilbert& h) {
  return {diagonal(h, h.ball().lengths()), "m_ell", -1, false};
}

TruncatedOperator m_phi(const TruncatedHilbert& h, const std::vector<std::int64_t>& phi) {
  const GroupSpec& group = h.group();
  require(phi.size() == static_cast<std::size_t>(group.abelianization_rank()),
          "homomorphism needs one coefficient per abelianization coordinate");
  std::vector<double> vals;
  for (const auto& g : h.ball().elements()) {
    auto p = group.abelian_projection(g);
    std::int64_t v = 0;
    for (std::size_t i = 0; i < p.size(); ++i) v += phi[i] * p[i];
    vals.push_back(static_cast<double>(v));
  }
  return {diagonal(h, vals), "m_phi", -1, false};
}

TruncatedOperator m_phi_g(const TruncatedHilbert& h, const Element& g) {
  const GroupSpec& group = h.group();
  const Element ginv = group.inverse(g);
  std::vector<double> vals;
  const BallTable& ball = h.ball();
  for (std::size_t i = 0; i < ball.size(); ++i) {
    vals.push_back(ball.length(i) - h.length()(group.multiply(ginv, ball.element(i))));
  }
  return {diagonal(h, vals), "m_phi_g(" + group.format(g) + ")", -1, false};
}

TruncatedOperator realize(const TruncatedHilbert& h, const CrossedElement& x,
                          const ActionSpec& action) {
  require(x.d == h.d(), "crossed element and Hilbert space disagree on the coefficient dimension");
  const GroupSpec& group = h.group();
  const BallTable& ball = h.ball();
  const double r = x.support_radius(h.length());
  if (!h.exact() && r > h.radius() + 1e-12) {
    fail(ErrorCode::kOutOfBall, "support radius " + std::to_string(r) + " exceeds ball radius " +
                                    std::to_string(h.radius()));
  }
  const auto d = static_cast<Eigen::Index>(h.d());
  TruncatedOperator op{zeros(h), "realize", h.exact() ? h.radius() : h.radius() - r, false};
  std::vector<Matrix> winv;
  if (!action.is_trivial()) {
    winv.reserve(ball.size());
    for (const auto& e : ball.elements()) winv.push_back(action.unitary(group.inverse(e)));
  }
  for (const auto& [g, a] : x.coefficients) {
    for (std::size_t j = 0; j < ball.size(); ++j) {
      auto i = ball.index_of(group.multiply(g, ball.element(j)));
      if (!i) continue;
      auto blk = op.matrix.block(static_cast<Eigen::Index>(*i) * d, static_cast<Eigen::Index>(j) * d,
                                 d, d);
      if (winv.empty()) {
        blk += a;
      } else {
        blk += winv[*i] * a * winv[*i].adjoint();
      }
    }
  }
  return op;
}

Matrix coefficient_lift(const TruncatedHilbert& h, const Matrix& a) {
  require(static_cast<std::size_t>(a.rows()) == h.d() && static_cast<std::size_t>(a.cols()) == h.d(),
          "coefficient has the wrong size");
  Matrix m = zeros(h);
  const auto d = static_cast<Eigen::Index>(h.d());
  for (std::size_t j = 0; j < h.ball().size(); ++j) {
    const auto k = static_cast<Eigen::Index>(j) * d;
    m.block(k, k, d, d) = a;
  }
  return m;
}

TruncatedOperator build_even_dirac(const TruncatedHilbert& h, const Matrix& d_a) {
  if (max_abs(d_a - d_a.adjoint()) > 1e-12) {
    fail(ErrorCode::kInvalidArgument, "even Dirac operator needs a hermitian D_A");
  }
  const Matrix da = coefficient_lift(h, d_a);
  const Matrix ml = m_ell(h).matrix;
  const auto n = static_cast<Eigen::Index>(h.dim());
  const Complex i(0, 1);
  Matrix dirac = Matrix::Zero(2 * n, 2 * n);
  dirac.block(0, n, n, n) = da - i * ml;
  dirac.block(n, 0, n, n) = da + i * ml;
  return {dirac, "even_dirac", -1, false};
}

TruncatedOperator build_odd_dirac(const TruncatedHilbert& h, const Matrix& d_a) {
  const Matrix da = coefficient_lift(h, d_a);
  const Matrix ml = m_ell(h).matrix;
  const auto n = static_cast<Eigen::Index>(h.dim());
  Matrix dirac = Matrix::Zero(2 * n, 2 * n);
  dirac.block(0, 0, n, n) = ml;
  dirac.block(0, n, n, n) = da;
  dirac.block(n, 0, n, n) = da.adjoint();
  dirac.block(n, n, n, n) = -ml;
  return {dirac, "odd_dirac", -1, false};
}

// ---------------------------------------------------------------- op_norm

namespace {

NormResult power_iteration(const Matrix& t, Vector v, double tol, std::size_t max_iterations) {
  NormResult res;
  res.method = "power";
  v.normalize();
  double mu = 0;
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    const Vector w = t * v;
    const Vector u = t.adjoint() * w;
    mu = w.squaredNorm();
    res.iterations = it;
    if (mu == 0) {
      res.value = 0;
      res.residual = 0;
      res.converged = true;
      return res;
    }
    res.residual = (u - mu * v).norm();
    res.value = std::sqrt(mu);
    if (res.residual <= tol * mu) {
      res.converged = true;
      return res;
    }
    v = u / u.norm();
  }
  return res;
}

constexpr std::size_t kQuickIterations = 2000;
constexpr std::size_t kMaxIterations = 100000;
// Below this size a stalled power iteration hands over to a dense eigensolver.
constexpr Eigen::Index kDenseFallback = 3000;

NormResult dense_norm(const Matrix& t) {
  const Matrix g = t.rows() < t.cols() ? Matrix(t * t.adjoint()) : Matrix(t.adjoint() * t);
  Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
  NormResult r;
  r.value = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  r.converged = es.info() == Eigen::Success;
  r.method = "dense";
  return r;
}

}  // namespace

namespace {

// At most one nonzero per row and per column: T^* T is diagonal, so the norm
// is the largest entry modulus, with no rounding.
std::optional<double> monomial_norm(const Matrix& t) {
  std::vector<char> row_used(static_cast<std::size_t>(t.rows()), 0);
  double best = 0;
  for (Eigen::Index c = 0; c < t.cols(); ++c) {
    bool col_used = false;
    for (Eigen::Index r = 0; r < t.rows(); ++r) {
      if (t(r, c) == Complex(0, 0)) continue;
      auto& ru = row_used[static_cast<std::size_t>(r)];
      if (col_used || ru) return std::nullopt;
      col_used = true;
      ru = 1;
      best = std::max(best, std::abs(t(r, c)));
    }
  }
  return best;
}

}  // namespace

NormResult op_norm_report(const Matrix& t, double tol) {
  require(tol > 0, "operator norm tolerance must be positive");
  if (t.size() == 0) return {0, 0, 0, true, "empty"};
  if (!t.allFinite()) fail(ErrorCode::kInvalidArgument, "operator has non-finite entries");
  if (auto m = monomial_norm(t)) return {*m, 0, 0, true, "monomial"};
  const auto n = t.cols();
  Rng rng(0x6f70e5a2d1c3b479ULL ^ static_cast<std::uint64_t>(n));
  Vector start(n);
  for (Eigen::Index i = 0; i < n; ++i) start(i) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));

  const bool small = std::min(t.rows(), t.cols()) <= kDenseFallback;
  const std::size_t cap = small ? kQuickIterations : kMaxIterations;
  NormResult a = power_iteration(t, Vector::Ones(n), tol, cap);
  if (!a.converged && small) {
    NormResult d = dense_norm(t);
    d.iterations = a.iterations;
    d.residual = a.residual;
    if (d.converged) return d;
  }
  NormResult b = power_iteration(t, start, tol, cap);
  if (!a.converged && !b.converged) {
    std::ostringstream os;
    os << "power iteration did not converge: residual " << std::min(a.residual, b.residual)
       << " after " << a.iterations + b.iterations << " iterations";
    fail(ErrorCode::kNotConverged, os.str());
  }
  NormResult best = a.value >= b.value ? a : b;
  best.iterations = a.iterations + b.iterations;
  best.converged = true;
  return best;
}

double op_norm(const Matrix& t, double tol) { return op_norm_report(t, tol).value; }

// ---------------------------------------------------- conditional expectation

SubgroupPredicate SubgroupPredicate::whole(const GroupSpec& g) {
  return {"G=" + g.name(), [](const Element&) { return true; }};
}

SubgroupPredicate SubgroupPredicate::multiples(std::int64_t n) {
  require(n >= 1, "subgroup index must be positive");
  return {std::to_string(n) + "Z",
          [n](const Element& e) { return !e.coords.empty() && e.coords[0] % n == 0; }};
}

SubgroupPredicate SubgroupPredicate::kernel(std::vector<std::int64_t> phi, const GroupSpec& g) {
  require(phi.size() == static_cast<std::size_t>(g.abelianization_rank()),
          "kernel homomorphism has the wrong dimension");
  std::ostringstream os;
  os << "ker(";
  for (std::size_t i = 0; i < phi.size(); ++i) os << (i ? "," : "") << phi[i];
  os << ")";
  return {os.str(), [phi, g](const Element& e) {
            auto p = g.abelian_projection(e);
            std::int64_t v = 0;
            for (std::size_t i = 0; i < p.size(); ++i) v += phi[i] * p[i];
            return v == 0;
          }};
}

SubgroupPredicate SubgroupPredicate::center_h3() {
  return {"<c>", [](const Element& e) {
            return e.kind == GroupKind::kHeisenberg3 && e.coords[0] == 0 && e.coords[1] == 0;
          }};
}

CrossedElement conditional_expectation(const CrossedElement& x, const SubgroupPredicate& h) {
  if (!h.contains(x.group.identity())) {
    fail(ErrorCode::kInvalidArgument, "predicate " + h.name + " rejects the identity");
  }
  CrossedElement out(x.group, x.d);
  for (const auto& [g, a] : x.coefficients) {
    if (h.contains(g)) out.coefficients.emplace(g, a);
  }
  return out;
}

Matrix mask_expectation(const TruncatedHilbert& h, const Matrix& x, const SubgroupPredicate& sub) {
  const GroupSpec& group = h.group();
  const BallTable& ball = h.ball();
  const auto d = static_cast<Eigen::Index>(h.d());
  require(x.rows() == static_cast<Eigen::Index>(h.dim()) && x.cols() == x.rows(),
          "mask_expectation needs an operator on H");
  Matrix out = x;
  std::vector<Element> inv;
  inv.reserve(ball.size());
  for (const auto& e : ball.elements()) inv.push_back(group.inverse(e));
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (std::size_t j = 0; j < ball.size(); ++j) {
      if (!sub.contains(group.multiply(ball.element(i), inv[j]))) {
        out.block(static_cast<Eigen::Index>(i) * d, static_cast<Eigen::Index>(j) * d, d, d)
            .setZero();
      }
    }
  }
  return out;
}

Matrix restrict_columns(const TruncatedHilbert& h, const Matrix& x, double r) {
  const auto n = static_cast<Eigen::Index>(h.dim());
  require(x.cols() == n || x.cols() == 2 * n, "operator size does not match the truncation");
  std::vector<bool> keep(h.ball().size(), false);
  for (auto i : h.window(r)) keep[i] = true;
  Matrix out = x;
  const auto d = static_cast<Eigen::Index>(h.d());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const auto elem = static_cast<std::size_t>((c % n) / d);
    if (!keep[elem]) out.col(c).setZero();
  }
  return out;
}

SeminormResult lipschitz_seminorm(const TruncatedHilbert& h, const CrossedElement& x,
                                  const Matrix& dirac, const ActionSpec& action) {
  const double r = x.support_radius(h.length());
  if (!h.exact() && r >= h.radius()) {
    fail(ErrorCode::kOutOfBall, "empty exactness window: support radius " + std::to_string(r) +
                                    " >= ball radius " + std::to_string(h.radius()));
  }
  const Matrix xm = realize(h, x, action).matrix;
  const auto n = static_cast<Eigen::Index>(h.dim());
  Matrix lifted;
  if (dirac.rows() == n) {
    lifted = xm;
  } else {
    require(dirac.rows() == 2 * n, "Dirac operator size does not match the truncation");
    lifted = Matrix::Zero(2 * n, 2 * n);
    lifted.block(0, 0, n, n) = xm;
    lifted.block(n, n, n, n) = xm;
  }
  const Matrix comm = dirac * lifted - lifted * dirac;
  SeminormResult res;
  res.exact = h.exact();
  res.window_radius = h.exact() ? h.radius() : h.radius() - r;
  res.value = op_norm(restrict_columns(h, comm, r));
  return res;
}

// ------------------------------------------------------------ clock/shift

Matrix clock_matrix(std::int64_t p, std::int64_t q) {
  require(q >= 1, "clock matrix needs q >= 1");
  Matrix u = Matrix::Zero(q, q);
  for (std::int64_t k = 0; k < q; ++k) {
    // Reduce p k mod q first so the phase argument stays exact.
    const std::int64_t r = ((p * k) % q + q) % q;
    const double angle = 2.0 * M_PI * static_cast<double>(r) / static_cast<double>(q);
    u(k, k) = Complex(std::cos(angle), std::sin(angle));
  }
  return u;
}

Matrix shift_matrix(std::int64_t q) {
  require(q >= 1, "shift matrix needs q >= 1");
  Matrix v = Matrix::Zero(q, q);
  for (std::int64_t k = 0; k < q; ++k) v((k + 1) % q, k) = 1.0;
  return v;
}

}  // namespace horocp
