#include "horocp/quantum_metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "horocp/error.hpp"
#include "horocp/random.hpp"

namespace horocp {

CyclicTriple::CyclicTriple(std::int64_t n, std::vector<double> lengths, double scale)
    : n_(n), scale_(scale), lengths_(std::move(lengths)) {
  require(n >= 2, "cyclic triple needs n >= 2");
  require(n <= 64, "cyclic triple limited to n <= 64");
  require(scale > 0, "Dirac scale must be positive");
  if (lengths_.empty()) {
    for (std::int64_t k = 0; k < n; ++k) lengths_.push_back(static_cast<double>(std::min(k, n - k)));
  }
  require(lengths_.size() == static_cast<std::size_t>(n), "need one length per element of Z_n");
  require(lengths_[0] == 0, "length of the identity must be 0");

  dirac_ = Matrix::Zero(n, n);
  for (std::int64_t k = 0; k < n; ++k) dirac_(k, k) = scale * lengths_[static_cast<std::size_t>(k)];

  const Complex i(0, 1);
  for (std::int64_t k = 1; 2 * k <= n; ++k) {
    if (2 * k == n) {
      basis_.push_back(lambda(k));
    } else {
      basis_.push_back(lambda(k) + lambda(n - k));
      basis_.push_back(i * (lambda(k) - lambda(n - k)));
    }
  }
  for (const auto& h : basis_) commutators_.push_back(dirac_ * h - h * dirac_);

  // The supremum is infinite when some non-scalar a has [D, a] = 0.
  const auto m = static_cast<Eigen::Index>(commutators_.size());
  Eigen::MatrixXd gram(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      gram(a, b) = (commutators_[static_cast<std::size_t>(a)].adjoint() *
                    commutators_[static_cast<std::size_t>(b)]).trace().real();
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const double top = es.eigenvalues().maxCoeff();
  if (!(top > 0) || es.eigenvalues().minCoeff() <= 1e-12 * top) {
    fail(ErrorCode::kDegenerate, "degenerate triple: [D, a] = 0 for some non-scalar a");
  }
}

Matrix CyclicTriple::lambda(std::int64_t k) const {
  Matrix l = Matrix::Zero(n_, n_);
  for (std::int64_t h = 0; h < n_; ++h) l(((h + k) % n_ + n_) % n_, h) = 1.0;
  return l;
}

Matrix CyclicTriple::combine(const std::vector<double>& t) const {
  Matrix a = Matrix::Zero(n_, n_);
  for (std::size_t j = 0; j < basis_.size(); ++j) a += t[j] * basis_[j];
  return a;
}

namespace {

Matrix comm_combination(const CyclicTriple& tr, const std::vector<double>& t) {
  const auto& c = tr.commutators();
  Matrix k = Matrix::Zero(c.front().rows(), c.front().cols());
  for (std::size_t j = 0; j < c.size(); ++j) k += t[j] * c[j];
  return k;
}

double top_singular(const Matrix& k) {
  Eigen::JacobiSVD<Matrix> svd(k);
  return svd.singularValues()(0);
}

}  // namespace

double CyclicTriple::seminorm(const std::vector<double>& t) const {
  return top_singular(comm_combination(*this, t));
}

// ------------------------------------------------------------------ states

StateSpec StateSpec::character(std::int64_t j) {
  StateSpec s;
  s.kind = Kind::kCharacter;
  s.index = j;
  return s;
}

StateSpec StateSpec::vector_state(Vector v) {
  StateSpec s;
  s.kind = Kind::kVectorState;
  s.vector = std::move(v);
  return s;
}

StateSpec StateSpec::density_matrix(Matrix rho) {
  StateSpec s;
  s.kind = Kind::kDensityMatrix;
  s.density = std::move(rho);
  return s;
}

Matrix StateSpec::rho(std::int64_t n) const {
  switch (kind) {
    case Kind::kCharacter: {
      // xi_j(h) = exp(-2 pi i j h / n) / sqrt(n) satisfies lambda_k xi_j = chi_j(k) xi_j.
      Vector xi(n);
      for (std::int64_t h = 0; h < n; ++h) {
        const std::int64_t r = (((-index * h) % n) + n) % n;
        xi(h) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                           2 * M_PI * static_cast<double>(r) / static_cast<double>(n));
      }
      return xi * xi.adjoint();
    }
    case Kind::kVectorState: {
      require(vector.size() == n, "state vector has the wrong dimension");
      if (std::fabs(vector.squaredNorm() - 1) > 1e-12) {
        fail(ErrorCode::kInvalidArgument, "vector state is not a unit vector");
      }
      return vector * vector.adjoint();
    }
    case Kind::kDensityMatrix: {
      require(density.rows() == n && density.cols() == n, "density matrix has the wrong size");
      if (std::abs(density.trace() - Complex(1, 0)) > 1e-12) {
        fail(ErrorCode::kInvalidArgument, "density matrix does not have trace 1");
      }
      if (max_abs(density - density.adjoint()) > 1e-12) {
        fail(ErrorCode::kInvalidArgument, "density matrix is not hermitian");
      }
      Eigen::SelfAdjointEigenSolver<Matrix> es(density);
      if (es.eigenvalues().minCoeff() < -1e-12) {
        fail(ErrorCode::kInvalidArgument, "density matrix is not positive");
      }
      return density;
    }
  }
  return {};
}

std::string StateSpec::describe() const {
  switch (kind) {
    case Kind::kCharacter: return "chi_" + std::to_string(index);
    case Kind::kVectorState: return "vector";
    case Kind::kDensityMatrix: return "density";
  }
  return "";
}

// -------------------------------------------------------------- MK distance

namespace {

std::vector<double> objective_weights(const CyclicTriple& tr, const StateSpec& a,
                                      const StateSpec& b) {
  const Matrix diff = a.rho(tr.order()) - b.rho(tr.order());
  std::vector<double> w;
  for (const auto& h : tr.basis()) w.push_back((diff * h).trace().real());
  return w;
}

double dotv(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct Eval {
  double value = 0;  // |w.t| / L(t)
  double seminorm = 0;
  std::vector<double> grad;
};

Eval evaluate(const CyclicTriple& tr, const std::vector<double>& w, const std::vector<double>& t,
              bool with_grad) {
  Eval e;
  const Matrix k = comm_combination(tr, t);
  Eigen::JacobiSVD<Matrix> svd(k, with_grad ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : 0);
  e.seminorm = svd.singularValues()(0);
  const double wt = dotv(w, t);
  if (e.seminorm <= 0) return e;
  e.value = std::fabs(wt) / e.seminorm;
  if (with_grad) {
    const Vector u = svd.matrixU().col(0);
    const Vector v = svd.matrixV().col(0);
    const double sgn = wt >= 0 ? 1.0 : -1.0;
    const auto& c = tr.commutators();
    e.grad.resize(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) {
      const double dl = (u.adjoint() * c[j] * v)(0).real();
      e.grad[j] = sgn * w[j] / e.seminorm - std::fabs(wt) * dl / (e.seminorm * e.seminorm);
    }
  }
  return e;
}

void normalize(const CyclicTriple& tr, std::vector<double>& t) {
  const double l = tr.seminorm(t);
  if (l > 0) {
    for (auto& x : t) x /= l;
  }
}

}  // namespace

MkResult mk_distance(const CyclicTriple& triple, const StateSpec& psi, const StateSpec& psi2,
                     const MkOptions& opt) {
  require(opt.restarts >= 1 && opt.iterations >= 1 && opt.step > 0, "bad ascent options");
  const std::vector<double> w = objective_weights(triple, psi, psi2);
  const std::size_t dim = w.size();
  MkResult res;
  res.witness.assign(dim, 0.0);
  res.witness_matrix = Matrix::Zero(triple.order(), triple.order());

  double wnorm = 0;
  for (double x : w) wnorm = std::max(wnorm, std::fabs(x));
  if (wnorm <= 1e-15) {
    res.converged = true;
    res.agreeing_restarts = opt.restarts;
    return res;
  }

  std::vector<double> finals;
  std::vector<bool> settled;
  Rng rng(derive_seed(opt.seed, "mk-distance"));
  for (int r = 0; r < opt.restarts; ++r) {
    std::vector<double> t(dim);
    if (r == 0) {
      t = w;  // first start along the objective itself
    } else {
      for (auto& x : t) x = rng.normal();
    }
    normalize(triple, t);
    Eval cur = evaluate(triple, w, t, true);
    double step = opt.step;
    bool done = false;
    for (int it = 0; it < opt.iterations && !done; ++it) {
      double gn = 0;
      for (double g : cur.grad) gn += g * g;
      gn = std::sqrt(gn);
      if (gn < 1e-13) {
        done = true;
        break;
      }
      std::vector<double> trial(dim);
      for (std::size_t j = 0; j < dim; ++j) trial[j] = t[j] + step * cur.grad[j] / gn;
      normalize(triple, trial);
      Eval next = evaluate(triple, w, trial, true);
      if (next.value > cur.value) {
        t = std::move(trial);
        cur = std::move(next);
      } else {
        step *= 0.5;
        if (step < 1e-13) done = true;
      }
    }
    finals.push_back(cur.value);
    settled.push_back(done);
    if (cur.value > res.lower_bound) {
      res.lower_bound = cur.value;
      res.witness = t;
    }
  }

  // Orient the witness so that psi(a) - psi'(a) is the reported value.
  if (dotv(w, res.witness) < 0) {
    for (auto& x : res.witness) x = -x;
  }
  res.witness_matrix = triple.combine(res.witness);
  res.witness_seminorm = triple.seminorm(res.witness);
  res.lower_bound = dotv(w, res.witness);

  int agree = 0;
  bool best_settled = false;
  for (std::size_t r = 0; r < finals.size(); ++r) {
    if (std::fabs(finals[r] - res.lower_bound) <= 1e-9 * std::max(1.0, res.lower_bound)) {
      ++agree;
      best_settled = best_settled || settled[r];
    }
  }
  res.agreeing_restarts = agree;
  res.converged = best_settled && (agree >= 2 || opt.restarts == 1);
  return res;
}

double mk_brute_force(const CyclicTriple& triple, const StateSpec& psi, const StateSpec& psi2,
                      int grid) {
  const std::vector<double> w = objective_weights(triple, psi, psi2);
  const std::size_t k = w.size();
  if (k > 6) fail(ErrorCode::kInvalidArgument, "brute force limited to dimension <= 6");
  if (grid <= 0) {
    if (k == 1) {
      grid = 1;
    } else {
      const double budget = 200000.0 / (2.0 * static_cast<double>(k));
      grid = std::max(3, static_cast<int>(std::floor(std::pow(budget, 1.0 / static_cast<double>(k - 1)))));
      grid = std::min(grid, 401);
    }
  }

  auto value = [&](const std::vector<double>& t) {
    const double l = triple.seminorm(t);
    return l > 0 ? std::fabs(dotv(w, t)) / l : 0.0;
  };

  // Points on the faces x_f = +-1 of the cube, other coordinates on a grid.
  std::vector<std::pair<double, std::vector<double>>> best;
  const std::size_t keep = 8;
  std::vector<int> idx(k > 0 ? k - 1 : 0, 0);
  for (std::size_t face = 0; face < k; ++face) {
    for (double sign : {-1.0, 1.0}) {
      std::fill(idx.begin(), idx.end(), 0);
      for (;;) {
        std::vector<double> t(k);
        std::size_t q = 0;
        for (std::size_t j = 0; j < k; ++j) {
          if (j == face) {
            t[j] = sign;
          } else {
            t[j] = grid == 1 ? 0.0 : -1.0 + 2.0 * idx[q] / (grid - 1);
            ++q;
          }
        }
        const double v = value(t);
        if (best.size() < keep || v > best.back().first) {
          best.emplace_back(v, t);
          std::sort(best.begin(), best.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
          if (best.size() > keep) best.pop_back();
        }
        std::size_t p = 0;
        while (p < idx.size() && ++idx[p] == grid) idx[p++] = 0;
        if (p == idx.size()) break;
      }
    }
  }

  // Coordinate pattern search from the best grid points.
  double answer = 0;
  for (auto& [v0, t] : best) {
    double v = v0;
    double h = grid > 1 ? 2.0 / (grid - 1) : 0.5;
    while (h > 1e-10) {
      bool improved = false;
      for (std::size_t j = 0; j < k; ++j) {
        for (double s : {-1.0, 1.0}) {
          std::vector<double> trial = t;
          trial[j] += s * h;
          const double tv = value(trial);
          if (tv > v) {
            v = tv;
            t = std::move(trial);
            improved = true;
          }
        }
      }
      if (!improved) h *= 0.5;
    }
    answer = std::max(answer, v);
  }
  return answer;
}

}  // namespace horocp
