#include "horocp/group.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "horocp/error.hpp"

namespace horocp {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

std::vector<Element> standard_generators(GroupKind kind, int rank, int order) {
  std::vector<Element> gens;
  const std::size_t width = kind == GroupKind::kHeisenberg3         ? 3
                            : kind == GroupKind::kFiniteCyclic      ? 1
                            : kind == GroupKind::kFreeAbelianTimesCyclic
                                ? static_cast<std::size_t>(rank) + 1
                                : static_cast<std::size_t>(rank);
  auto unit = [&](std::size_t i, std::int64_t v) {
    Element e{kind, std::vector<std::int64_t>(width, 0)};
    e.coords[i] = v;
    return e;
  };
  switch (kind) {
    case GroupKind::kFreeAbelian:
      for (int i = 0; i < rank; ++i) {
        gens.push_back(unit(i, 1));
        gens.push_back(unit(i, -1));
      }
      break;
    case GroupKind::kFreeAbelianTimesCyclic:
      for (int i = 0; i < rank; ++i) {
        gens.push_back(unit(i, 1));
        gens.push_back(unit(i, -1));
      }
      gens.push_back(unit(rank, 1));
      if (order > 2) gens.push_back(unit(rank, order - 1));
      break;
    case GroupKind::kHeisenberg3:
      gens.push_back(unit(0, 1));
      gens.push_back(unit(0, -1));
      gens.push_back(unit(1, 1));
      gens.push_back(unit(1, -1));
      break;
    case GroupKind::kFiniteCyclic:
      gens.push_back(unit(0, 1));
      if (order > 2) gens.push_back(unit(0, order - 1));
      break;
  }
  return gens;
}

}  // namespace

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::kFreeAbelian: return "FreeAbelian";
    case GroupKind::kFreeAbelianTimesCyclic: return "FreeAbelianTimesCyclic";
    case GroupKind::kHeisenberg3: return "Heisenberg3";
    case GroupKind::kFiniteCyclic: return "FiniteCyclic";
  }
  return "?";
}

GroupSpec::GroupSpec(GroupKind kind, int rank, int order)
    : kind_(kind), rank_(rank), order_(order) {}

GroupSpec GroupSpec::free_abelian(int rank, std::vector<Element> generators) {
  require(rank >= 1, "free abelian rank must be positive");
  GroupSpec g(GroupKind::kFreeAbelian, rank, 0);
  g.set_generators(std::move(generators));
  return g;
}

GroupSpec GroupSpec::free_abelian_times_cyclic(int rank, int order,
                                               std::vector<Element> generators) {
  require(rank >= 1, "free abelian rank must be positive");
  require(order >= 2, "torsion order must be at least 2");
  GroupSpec g(GroupKind::kFreeAbelianTimesCyclic, rank, order);
  g.set_generators(std::move(generators));
  return g;
}

GroupSpec GroupSpec::heisenberg3(std::vector<Element> generators) {
  GroupSpec g(GroupKind::kHeisenberg3, 0, 0);
  g.set_generators(std::move(generators));
  return g;
}

GroupSpec GroupSpec::finite_cyclic(int order, std::vector<Element> generators) {
  require(order >= 1, "cyclic order must be positive");
  GroupSpec g(GroupKind::kFiniteCyclic, 0, order);
  g.set_generators(std::move(generators));
  return g;
}

GroupSpec GroupSpec::with_generators(std::vector<Element> generators) const {
  GroupSpec g(kind_, rank_, order_);
  g.set_generators(std::move(generators));
  return g;
}

void GroupSpec::set_generators(std::vector<Element> generators) {
  if (generators.empty()) generators = standard_generators(kind_, rank_, order_);
  std::vector<Element> canon;
  for (auto& s : generators) {
    s.kind = kind_;
    canon.push_back(element(s.coords));
  }
  std::set<Element> unique(canon.begin(), canon.end());
  require(unique.size() == canon.size(), "generating set contains duplicates");
  require(!unique.count(identity()), "identity cannot be a generator");
  for (const auto& s : canon) {
    require(unique.count(inverse(s)) == 1,
            "generating set is not symmetric: missing inverse of " + format(s));
  }
  generators_ = std::move(canon);
}

int GroupSpec::abelianization_rank() const {
  switch (kind_) {
    case GroupKind::kFreeAbelian:
    case GroupKind::kFreeAbelianTimesCyclic: return rank_;
    case GroupKind::kHeisenberg3: return 2;
    case GroupKind::kFiniteCyclic: return 0;
  }
  return 0;
}

std::size_t GroupSpec::coordinate_count() const {
  switch (kind_) {
    case GroupKind::kFreeAbelian: return static_cast<std::size_t>(rank_);
    case GroupKind::kFreeAbelianTimesCyclic: return static_cast<std::size_t>(rank_) + 1;
    case GroupKind::kHeisenberg3: return 3;
    case GroupKind::kFiniteCyclic: return 1;
  }
  return 0;
}

Element GroupSpec::identity() const {
  return Element{kind_, std::vector<std::int64_t>(coordinate_count(), 0)};
}

Element GroupSpec::element(std::vector<std::int64_t> coords) const {
  require(coords.size() == coordinate_count(),
          "element of " + name() + " needs " + std::to_string(coordinate_count()) +
              " coordinates");
  if (kind_ == GroupKind::kFiniteCyclic) coords[0] = mod(coords[0], order_);
  if (kind_ == GroupKind::kFreeAbelianTimesCyclic) coords[rank_] = mod(coords[rank_], order_);
  return Element{kind_, std::move(coords)};
}

void GroupSpec::check(const Element& a) const {
  if (a.kind != kind_ || a.coords.size() != coordinate_count()) {
    fail(ErrorCode::kGroupMismatch, "element of kind " + to_string(a.kind) +
                                        " used with group " + name());
  }
}

Element GroupSpec::multiply(const Element& a, const Element& b) const {
  check(a);
  check(b);
  Element out{kind_, a.coords};
  switch (kind_) {
    case GroupKind::kFreeAbelian:
      for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
      break;
    case GroupKind::kFreeAbelianTimesCyclic:
      for (int i = 0; i < rank_; ++i) out.coords[i] += b.coords[i];
      out.coords[rank_] = mod(a.coords[rank_] + b.coords[rank_], order_);
      break;
    case GroupKind::kHeisenberg3:
      out.coords[0] += b.coords[0];
      out.coords[1] += b.coords[1];
      out.coords[2] += b.coords[2] + a.coords[0] * b.coords[1];
      break;
    case GroupKind::kFiniteCyclic:
      out.coords[0] = mod(a.coords[0] + b.coords[0], order_);
      break;
  }
  return out;
}

Element GroupSpec::inverse(const Element& a) const {
  check(a);
  Element out{kind_, a.coords};
  switch (kind_) {
    case GroupKind::kFreeAbelian:
      for (auto& c : out.coords) c = -c;
      break;
    case GroupKind::kFreeAbelianTimesCyclic:
      for (int i = 0; i < rank_; ++i) out.coords[i] = -out.coords[i];
      out.coords[rank_] = mod(-a.coords[rank_], order_);
      break;
    case GroupKind::kHeisenberg3:
      out.coords[0] = -a.coords[0];
      out.coords[1] = -a.coords[1];
      out.coords[2] = -a.coords[2] + a.coords[0] * a.coords[1];
      break;
    case GroupKind::kFiniteCyclic:
      out.coords[0] = mod(-a.coords[0], order_);
      break;
  }
  return out;
}

Element GroupSpec::power(const Element& a, std::int64_t k) const {
  Element base = k < 0 ? inverse(a) : a;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  Element acc = identity();
  while (n > 0) {
    if (n & 1U) acc = multiply(acc, base);
    base = multiply(base, base);
    n >>= 1U;
  }
  return acc;
}

Element GroupSpec::commutator(const Element& a, const Element& b) const {
  return multiply(multiply(multiply(inverse(a), inverse(b)), a), b);
}

bool GroupSpec::is_central(const Element& a) const {
  check(a);
  if (is_abelian()) return true;
  return a.coords[0] == 0 && a.coords[1] == 0;
}

std::vector<std::int64_t> GroupSpec::abelian_projection(const Element& a) const {
  check(a);
  switch (kind_) {
    case GroupKind::kFreeAbelian: return a.coords;
    case GroupKind::kFreeAbelianTimesCyclic:
      return std::vector<std::int64_t>(a.coords.begin(), a.coords.begin() + rank_);
    case GroupKind::kHeisenberg3: return {a.coords[0], a.coords[1]};
    case GroupKind::kFiniteCyclic: return {};
  }
  return {};
}

std::string GroupSpec::name() const {
  switch (kind_) {
    case GroupKind::kFreeAbelian: return rank_ == 1 ? "Z" : "Z" + std::to_string(rank_);
    case GroupKind::kFreeAbelianTimesCyclic:
      return (rank_ == 1 ? std::string("Z") : "Z" + std::to_string(rank_)) + "xZ_" +
             std::to_string(order_);
    case GroupKind::kHeisenberg3: return "H3";
    case GroupKind::kFiniteCyclic: return "Z_" + std::to_string(order_);
  }
  return "?";
}

std::string GroupSpec::format(const Element& a) const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.coords.size(); ++i) os << (i ? "," : "") << a.coords[i];
  os << ')';
  return os.str();
}

GroupSpec parse_group(const std::string& raw) {
  std::string s;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  auto parse_int = [&](const std::string& t) {
    require(!t.empty() && std::all_of(t.begin(), t.end(), ::isdigit),
            "unrecognised group name '" + raw + "'");
    return std::stoi(t);
  };
  if (s == "H3" || s == "Heisenberg3" || s == "H") return GroupSpec::heisenberg3();
  if (s.rfind("Z_", 0) == 0) return GroupSpec::finite_cyclic(parse_int(s.substr(2)));
  auto x = s.find("xZ_");
  if (x != std::string::npos) {
    std::string head = s.substr(0, x);
    int order = parse_int(s.substr(x + 3));
    int rank = head == "Z" ? 1 : parse_int(head.substr(head[1] == '^' ? 2 : 1));
    return GroupSpec::free_abelian_times_cyclic(rank, order);
  }
  require(!s.empty() && s[0] == 'Z', "unrecognised group name '" + raw + "'");
  if (s == "Z") return GroupSpec::free_abelian(1);
  return GroupSpec::free_abelian(parse_int(s.substr(s[1] == '^' ? 2 : 1)));
}

GroupSpec with_named_generators(const GroupSpec& group, const std::string& name) {
  if (name.empty() || name == "standard") return group.with_generators({});
  if (name == "diamond") {
    require(group.kind() == GroupKind::kFreeAbelian && group.rank() == 2,
            "'diamond' generators are defined on Z2");
    return group.with_generators({});
  }
  if (name == "hexagonal") {
    require(group.kind() == GroupKind::kFreeAbelian && group.rank() == 2,
            "'hexagonal' generators are defined on Z2");
    std::vector<Element> gens;
    for (auto v : std::vector<std::vector<std::int64_t>>{
             {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}}) {
      gens.push_back(group.element(v));
    }
    return group.with_generators(gens);
  }
  // Explicit list "(a,b);(c,d)"; inverses are added.
  std::set<Element> gens;
  std::stringstream ss(name);
  std::string item;
  while (std::getline(ss, item, ';')) {
    std::string body;
    for (char c : item) {
      if (c != '(' && c != ')' && !std::isspace(static_cast<unsigned char>(c))) body += c;
    }
    if (body.empty()) continue;
    std::vector<std::int64_t> coords;
    std::stringstream cs(body);
    std::string tok;
    while (std::getline(cs, tok, ',')) {
      try {
        coords.push_back(std::stoll(tok));
      } catch (...) {
        fail(ErrorCode::kInvalidArgument, "bad generator coordinate '" + tok + "'");
      }
    }
    Element e = group.element(coords);
    gens.insert(e);
    gens.insert(group.inverse(e));
  }
  require(!gens.empty(), "unknown generator set '" + name + "'");
  return group.with_generators(std::vector<Element>(gens.begin(), gens.end()));
}

}  // namespace horocp
