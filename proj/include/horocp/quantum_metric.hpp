#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "horocp/operators.hpp"

namespace horocp {

// Exact finite triple: C*(Z_n) acting on l^2(Z_n) with D = s M_l.
// The hermitian basis skips the identity, so L_D is a norm on its span.
class CyclicTriple {
 public:
  // lengths[k] = l(k); empty means l(k) = min(k, n - k).
  CyclicTriple(std::int64_t n, std::vector<double> lengths = {}, double scale = 1.0);

  std::int64_t order() const { return n_; }
  double scale() const { return scale_; }
  const std::vector<double>& lengths() const { return lengths_; }
  const Matrix& dirac() const { return dirac_; }
  const std::vector<Matrix>& basis() const { return basis_; }
  const std::vector<Matrix>& commutators() const { return commutators_; }
  Matrix combine(const std::vector<double>& t) const;  // sum t_j H_j
  double seminorm(const std::vector<double>& t) const;  // ||[D, sum t_j H_j]||
  Matrix lambda(std::int64_t k) const;

 private:
  std::int64_t n_;
  double scale_;
  std::vector<double> lengths_;
  Matrix dirac_;
  std::vector<Matrix> basis_;
  std::vector<Matrix> commutators_;
};

struct StateSpec {
  enum class Kind { kCharacter, kVectorState, kDensityMatrix };
  Kind kind = Kind::kCharacter;
  std::int64_t index = 0;  // character chi_j(lambda_k) = exp(2 pi i j k / n)
  Vector vector;
  Matrix density;

  static StateSpec character(std::int64_t j);
  static StateSpec vector_state(Vector v);
  static StateSpec density_matrix(Matrix rho);

  // Density matrix on l^2(Z_n); checks normalization and positivity.
  Matrix rho(std::int64_t n) const;
  std::string describe() const;
};

struct MkOptions {
  int restarts = 32;
  int iterations = 2000;
  double step = 0.1;
  std::uint64_t seed = 0;
};

struct MkResult {
  double lower_bound = 0;
  bool converged = false;
  std::vector<double> witness;  // coordinates in the hermitian basis
  Matrix witness_matrix;
  double witness_seminorm = 0;
  int agreeing_restarts = 0;
};

// sup |psi(a) - psi'(a)| over hermitian a with L_D(a) <= 1, as a lower bound.
MkResult mk_distance(const CyclicTriple& triple, const StateSpec& psi, const StateSpec& psi2,
                     const MkOptions& opt = {});

// Grid over the surface of the coordinate cube plus pattern-search polish.
// Only for basis dimension <= 6.
double mk_brute_force(const CyclicTriple& triple, const StateSpec& psi, const StateSpec& psi2,
                      int grid = 0);

}  // namespace horocp
