#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "horocp/group.hpp"
#include "horocp/rational.hpp"

namespace horocp {

// Ball element cap; HOROCP_CAP overrides the default of 5e6.
std::size_t ball_cap();

struct NormSpec {
  enum class Kind { kL1, kL2, kLinf, kPolytope };
  Kind kind = Kind::kL1;
  RationalMatrix functionals;  // only for kPolytope: |x| = max_F sigma_F(x)

  static NormSpec parse(const std::string& name);
  double operator()(const std::vector<std::int64_t>& x) const;
  // Largest |x_i| over the unit ball, used to bound enumeration boxes.
  double unit_ball_extent(std::size_t dim) const;
  std::string name() const;
};

// Metric ball {g : l(g) <= radius}, sorted by (length, coordinates).
class BallTable {
 public:
  BallTable(double radius, std::vector<Element> elements, std::vector<double> lengths);

  double radius() const { return radius_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<double>& lengths() const { return lengths_; }
  const Element& element(std::size_t i) const { return elements_[i]; }
  double length(std::size_t i) const { return lengths_[i]; }
  std::optional<std::size_t> index_of(const Element& g) const;
  bool contains(const Element& g) const { return index_of(g).has_value(); }

 private:
  double radius_;
  std::vector<Element> elements_;
  std::vector<double> lengths_;
  std::unordered_map<Element, std::size_t, ElementHash> index_;
};

class LengthFunction {
 public:
  enum class Kind { kWordLength, kNormRestriction, kExplicitTable, kFormula };

  using Formula = std::function<double(const Element&)>;
  // Coordinate box half-width that contains the ball of a given radius.
  using Extent = std::function<std::int64_t(double radius)>;

  static LengthFunction word_length(const GroupSpec& group);
  static LengthFunction norm_restriction(const GroupSpec& group, NormSpec norm);
  static LengthFunction explicit_table(const GroupSpec& group,
                                       std::vector<std::pair<Element, double>> table,
                                       bool pseudo = false);
  static LengthFunction formula(const GroupSpec& group, std::string name, Formula f,
                                Extent extent, bool pseudo = false);
  // k -> 2 ceil(2 sqrt|k|) on Z, the restriction of the H3 word length to the center.
  static LengthFunction central_sqrt_formula();

  // Returns s * l sharing the same memoized data.
  LengthFunction scaled(const Rational& s) const;

  Kind kind() const;
  const GroupSpec& group() const;
  bool pseudo() const;
  const Rational& scale() const { return scale_; }
  const NormSpec* norm() const;
  bool integer_valued() const;
  std::string describe() const;

  double operator()(const Element& g) const;
  // False only for explicit tables queried outside their domain.
  bool defined_at(const Element& g) const;

  std::shared_ptr<const BallTable> ball(double radius) const;

  struct Impl;

 private:
  explicit LengthFunction(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
  Rational scale_ = 1;
};

struct LengthAxiomReport {
  double identity_value = 0;
  double symmetry_violation = 0;
  double subadditivity_violation = 0;
  double max_violation = 0;
  std::size_t elements = 0;
  std::size_t pairs = 0;
  std::size_t skipped = 0;  // lookups outside an explicit table
};

LengthAxiomReport check_length_axioms(const LengthFunction& length, double radius);

// Exact ceil(sqrt(n)) for n >= 0.
std::int64_t ceil_sqrt(std::int64_t n);

}  // namespace horocp
