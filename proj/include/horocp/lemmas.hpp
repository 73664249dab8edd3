#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "horocp/operators.hpp"

namespace horocp {

using Json = nlohmann::json;

constexpr double kEqualityTol = 1e-12;
constexpr double kSlackTol = 1e-9;

struct CheckReport {
  std::string name;
  std::string anchor;  // the identity or inequality being checked, as a formula
  Json parameters = Json::object();
  std::optional<double> residual;  // equality part
  std::optional<double> slack;     // inequality part
  double residual_tol = kEqualityTol;
  double slack_tol = kSlackTol;
  bool pass = false;
  Json details = Json::object();

  // pass <=> residual <= residual_tol and slack >= -slack_tol.
  CheckReport& finalize();
  // Folds another instance of the same check into this one (max residual, min slack).
  void absorb(const CheckReport& other);
  Json to_json() const;
};

CheckReport check_commutator_identity(const TruncatedHilbert& h, const CrossedElement& x,
                                      const ActionSpec& action);

CheckReport check_cocycle(const std::vector<std::pair<Element, Element>>& pairs,
                          const BallTable& ball, const LengthFunction& length);

CheckReport check_conditional_expectation(const TruncatedHilbert& h, const CrossedElement& x,
                                          const Element& g, const SubgroupPredicate& sub,
                                          const Matrix& d_a, const ActionSpec& action);

// (sum_{|k| > N} (k + L)^-2)^(1/2) for N >= |L|.
double ozawa_rieffel_factor(double l, std::int64_t n);

struct OzawaRieffelParams {
  std::vector<std::int64_t> phi;  // homomorphism on p_G
  double l = 0;
  std::int64_t n = 1;
  double radius = 4;
  double margin = -1;  // delta R; negative means delta R = R
  int escalations = 2;
};

CheckReport check_ozawa_rieffel(const LengthFunction& length, const CrossedElement& x,
                                const ActionSpec& action, const OzawaRieffelParams& p);

// f holds one value per element of the ball of radius R.
CheckReport check_isomorphism_unitary(const LengthFunction& length, double radius,
                                      const Matrix& a, const std::vector<double>& f,
                                      const Element& g, const ActionSpec& action);

struct NcTorusParams {
  std::int64_t p = 1;
  std::int64_t q = 3;
  std::optional<std::pair<std::int64_t, std::int64_t>> theta_lambda;  // defaults to p/q
  std::int64_t n_min = -50;
  std::int64_t n_max = 50;
  double radius = 20;
};

// x = u lambda_1 + u^* lambda_-1 unless coefficients are given (keys in Z).
CheckReport check_equicontinuity_nctorus(const NcTorusParams& p,
                                         std::optional<CrossedElement> x = std::nullopt);

struct AfParams {
  std::vector<std::int64_t> orders{2, 2, 2, 2, 2};
  std::vector<double> eigenvalues;  // defaults to lambda_i = N_i
  std::uint64_t seed = 0;
  int samples = 4;
};

CheckReport check_af_triple(const AfParams& p);

// x = sum_k b_k lambda_k read as sum_h a_h lambda_{hg}; needs k^-1 and e in
// the ball for every k in the support.
CheckReport check_coefficient_bounds(const TruncatedHilbert& h, const CrossedElement& x,
                                     const Element& g, const Matrix& d_a,
                                     const ActionSpec& action);

}  // namespace horocp
