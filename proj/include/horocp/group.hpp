#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace horocp {

enum class GroupKind {
  kFreeAbelian,             // Z^m
  kFreeAbelianTimesCyclic,  // Z^m x Z_n
  kHeisenberg3,             // upper unitriangular integer 3x3 matrices
  kFiniteCyclic,            // Z_n
};

std::string to_string(GroupKind kind);

// Canonical coordinates: Z^m -> m integers; Z^m x Z_n -> m integers and a
// residue in [0, n); H3 -> (x, y, z); Z_n -> one residue in [0, n).
struct Element {
  GroupKind kind = GroupKind::kFreeAbelian;
  std::vector<std::int64_t> coords;

  friend bool operator==(const Element&, const Element&) = default;
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    return a.coords <=> b.coords;
  }
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(e.kind);
    for (auto c : e.coords) {
      h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

class GroupSpec {
 public:
  // Empty generator lists select the standard symmetric generating set.
  static GroupSpec free_abelian(int rank, std::vector<Element> generators = {});
  static GroupSpec free_abelian_times_cyclic(int rank, int order,
                                             std::vector<Element> generators = {});
  static GroupSpec heisenberg3(std::vector<Element> generators = {});
  static GroupSpec finite_cyclic(int order, std::vector<Element> generators = {});

  GroupKind kind() const { return kind_; }
  int rank() const { return rank_; }
  int torsion_order() const { return order_; }
  const std::vector<Element>& generators() const { return generators_; }
  int abelianization_rank() const;
  std::size_t coordinate_count() const;
  bool is_abelian() const { return kind_ != GroupKind::kHeisenberg3; }
  bool is_finite() const { return kind_ == GroupKind::kFiniteCyclic; }

  Element identity() const;
  // Validates the coordinate count and reduces residues.
  Element element(std::vector<std::int64_t> coords) const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  Element power(const Element& a, std::int64_t k) const;
  Element commutator(const Element& a, const Element& b) const;  // a^-1 b^-1 a b
  bool is_central(const Element& a) const;

  // Image in Z^m of the projection onto the torsion-free abelianization.
  std::vector<std::int64_t> abelian_projection(const Element& a) const;

  // Same group with another generating set.
  GroupSpec with_generators(std::vector<Element> generators) const;

  std::string name() const;
  std::string format(const Element& a) const;

 private:
  GroupSpec(GroupKind kind, int rank, int order);
  void check(const Element& a) const;
  void set_generators(std::vector<Element> generators);

  GroupKind kind_;
  int rank_ = 0;
  int order_ = 0;
  std::vector<Element> generators_;
};

// Parses names like "Z", "Z2", "Z^3", "H3", "Z_4", "Z2xZ_3".
GroupSpec parse_group(const std::string& name);

// Named generating sets: "standard", "diamond" (standard on Z^2),
// "hexagonal" (Z^2 with +-(1,1) added), or an explicit list
// "(1,0);(0,1);(1,1)" closed under inverses automatically.
GroupSpec with_named_generators(const GroupSpec& group, const std::string& name);

}  // namespace horocp
