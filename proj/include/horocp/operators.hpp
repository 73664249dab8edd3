#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "horocp/length.hpp"

namespace horocp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Largest admissible d * |B_R| for dense operators.
constexpr std::size_t kDimCap = 20000;

struct RelatorScalar {
  std::string relator;
  Complex scalar;
  double residual = 0;
};

// Inner action alpha_g = Ad W_g on M_d. The unitaries are given for the basis
// generators of the group kind: e_1..e_m (then t for Z^m x Z_n), a and b for
// H3, 1 for Z_n. W on a general element follows its normal form.
class ActionSpec {
 public:
  static ActionSpec trivial(const GroupSpec& group, std::size_t d);
  static ActionSpec inner(const GroupSpec& group, std::vector<Matrix> basis_unitaries);

  std::size_t dim() const { return d_; }
  bool is_trivial() const { return trivial_; }
  const GroupSpec& group() const { return group_; }
  Matrix unitary(const Element& g) const;
  Matrix act(const Element& g, const Matrix& a) const;  // W_g a W_g^*
  const std::vector<RelatorScalar>& relator_scalars() const { return scalars_; }
  double unitarity_residual() const { return unitarity_residual_; }

 private:
  ActionSpec(GroupSpec group, std::size_t d) : group_(std::move(group)), d_(d) {}
  Matrix power(std::size_t i, std::int64_t k) const;

  GroupSpec group_;
  std::size_t d_;
  bool trivial_ = true;
  std::vector<Matrix> basis_;
  std::vector<RelatorScalar> scalars_;
  double unitarity_residual_ = 0;
};

// Finitely supported sum of a_g lambda_g with d x d coefficients.
struct CrossedElement {
  GroupSpec group;
  std::size_t d = 1;
  std::map<Element, Matrix> coefficients;

  CrossedElement(GroupSpec g, std::size_t dim) : group(std::move(g)), d(dim) {}
  CrossedElement& add(const Element& g, const Matrix& a);
  double support_radius(const LengthFunction& length) const;
  bool empty() const { return coefficients.empty(); }
};

// H_A (x) l^2(B_R) with basis index h * d + alpha (h in ball order).
class TruncatedHilbert {
 public:
  TruncatedHilbert(LengthFunction length, double radius, std::size_t d);

  std::size_t d() const { return d_; }
  std::size_t dim() const { return d_ * ball_->size(); }
  double radius() const { return radius_; }
  const LengthFunction& length() const { return length_; }
  const GroupSpec& group() const { return length_.group(); }
  const BallTable& ball() const { return *ball_; }
  // True when the ball is the whole (finite) group, so nothing is truncated.
  bool exact() const { return exact_; }
  // Ball indices h with l(h) <= radius - r; everything when exact().
  std::vector<std::size_t> window(double r) const;

 private:
  LengthFunction length_;
  double radius_;
  std::size_t d_;
  std::shared_ptr<const BallTable> ball_;
  bool exact_ = false;
};

struct TruncatedOperator {
  Matrix matrix;
  std::string provenance;
  double window_radius = -1;  // columns in B_window are exact; < 0 means n/a
  bool empty_compression = false;
};

TruncatedOperator lambda(const TruncatedHilbert& h, const Element& g);
TruncatedOperator pi_tilde(const TruncatedHilbert& h, const Matrix& a, const ActionSpec& action);
TruncatedOperator m_ell(const TruncatedHilbert& h);
// Diagonal phi(p_G(h)) for the homomorphism with integer coefficients phi.
TruncatedOperator m_phi(const TruncatedHilbert& h, const std::vector<std::int64_t>& phi);
TruncatedOperator m_phi_g(const TruncatedHilbert& h, const Element& g);
TruncatedOperator realize(const TruncatedHilbert& h, const CrossedElement& x,
                          const ActionSpec& action);

// D_A (x) 1 on H.
Matrix coefficient_lift(const TruncatedHilbert& h, const Matrix& a);

TruncatedOperator build_even_dirac(const TruncatedHilbert& h, const Matrix& d_a);
TruncatedOperator build_odd_dirac(const TruncatedHilbert& h, const Matrix& d_a);

struct NormResult {
  double value = 0;
  double residual = 0;
  std::size_t iterations = 0;
  bool converged = false;
  std::string method;  // "power", "dense", "monomial" or "empty"
};

// Largest singular value by power iteration on T^* T, started from the
// normalized all-ones vector plus one seeded random restart. When the first
// run stalls on a matrix of side <= 3000, the top eigenvalue of T^* T comes
// from a dense Hermitian eigensolver instead. Monomial matrices (one nonzero
// per row and column at most) are read off exactly.
NormResult op_norm_report(const Matrix& t, double tol = 1e-10);
double op_norm(const Matrix& t, double tol = 1e-10);

struct SubgroupPredicate {
  std::string name;
  std::function<bool(const Element&)> contains;

  static SubgroupPredicate whole(const GroupSpec& g);
  static SubgroupPredicate multiples(std::int64_t n);  // n Z in the first coordinate
  static SubgroupPredicate kernel(std::vector<std::int64_t> phi, const GroupSpec& g);
  static SubgroupPredicate center_h3();
};

CrossedElement conditional_expectation(const CrossedElement& x, const SubgroupPredicate& h);

// Matrix-level E_H: keeps block (h1, h2) iff h1 h2^-1 lies in H.
Matrix mask_expectation(const TruncatedHilbert& h, const Matrix& x, const SubgroupPredicate& sub);

// Zeroes the columns outside B_{R - r}; also handles operators on H + H.
Matrix restrict_columns(const TruncatedHilbert& h, const Matrix& x, double r);

struct SeminormResult {
  double value = 0;
  double window_radius = 0;
  bool exact = false;
};

// ||[D, x]|| with x lifted to x + x when D acts on H + H. A lower bound unless
// the truncation is exact.
SeminormResult lipschitz_seminorm(const TruncatedHilbert& h, const CrossedElement& x,
                                  const Matrix& dirac, const ActionSpec& action);

// Clock U = diag(exp(2 pi i p k / q)) and shift V e_k = e_{k+1}.
Matrix clock_matrix(std::int64_t p, std::int64_t q);
Matrix shift_matrix(std::int64_t q);

double max_abs(const Matrix& m);

}  // namespace horocp
