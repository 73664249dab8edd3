#include "horocp/length.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>

#include "horocp/error.hpp"

namespace horocp {

std::size_t ball_cap() {
  static const std::size_t cap = [] {
    if (const char* env = std::getenv("HOROCP_CAP")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return static_cast<std::size_t>(5'000'000);
  }();
  return cap;
}

std::int64_t ceil_sqrt(std::int64_t n) {
  require(n >= 0, "ceil_sqrt of a negative number");
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  auto sq = [](std::int64_t v) { return static_cast<__int128>(v) * v; };
  while (sq(s) < n) ++s;
  while (s > 0 && sq(s - 1) >= n) --s;
  return s;
}

// ---------------------------------------------------------------- NormSpec

NormSpec NormSpec::parse(const std::string& name) {
  NormSpec n;
  if (name == "l1" || name == "L1") n.kind = Kind::kL1;
  else if (name == "l2" || name == "L2") n.kind = Kind::kL2;
  else if (name == "linf" || name == "Linf" || name == "max") n.kind = Kind::kLinf;
  else fail(ErrorCode::kInvalidArgument, "unknown norm '" + name + "'");
  return n;
}

double NormSpec::operator()(const std::vector<std::int64_t>& x) const {
  switch (kind) {
    case Kind::kL1: {
      double s = 0;
      for (auto v : x) s += std::fabs(static_cast<double>(v));
      return s;
    }
    case Kind::kL2: {
      double s = 0;
      for (auto v : x) s += static_cast<double>(v) * static_cast<double>(v);
      return std::sqrt(s);
    }
    case Kind::kLinf: {
      double s = 0;
      for (auto v : x) s = std::max(s, std::fabs(static_cast<double>(v)));
      return s;
    }
    case Kind::kPolytope: {
      require(!functionals.empty(), "polytope norm without functionals");
      RationalVector q = to_rational(x);
      Rational best = dot(functionals.front(), q);
      for (const auto& f : functionals) best = std::max(best, dot(f, q));
      return to_double(best);
    }
  }
  return 0;
}

double NormSpec::unit_ball_extent(std::size_t dim) const {
  if (kind != Kind::kPolytope) return 1.0;
  // Vertices of {x : sigma_F(x) <= 1 for all F}.
  const std::size_t nf = functionals.size();
  double extent = 0;
  std::vector<std::size_t> pick(dim);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == dim) {
      RationalMatrix a;
      for (auto i : pick) a.push_back(functionals[i]);
      RationalVector x = solve_square(a, RationalVector(dim, Rational(1)));
      if (x.empty()) return;
      for (const auto& f : functionals) {
        if (dot(f, x) > 1) return;
      }
      for (const auto& v : x) extent = std::max(extent, std::fabs(to_double(v)));
      return;
    }
    for (std::size_t i = start; i < nf; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  require(extent > 0, "polytope norm has a bounded unit ball only if its functionals span");
  return extent;
}

std::string NormSpec::name() const {
  switch (kind) {
    case Kind::kL1: return "l1";
    case Kind::kL2: return "l2";
    case Kind::kLinf: return "linf";
    case Kind::kPolytope: return "polytope";
  }
  return "?";
}

// --------------------------------------------------------------- BallTable

BallTable::BallTable(double radius, std::vector<Element> elements, std::vector<double> lengths)
    : radius_(radius), elements_(std::move(elements)), lengths_(std::move(lengths)) {
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
}

std::optional<std::size_t> BallTable::index_of(const Element& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------- LengthFunction

struct LengthFunction::Impl {
  Kind kind;
  GroupSpec group;
  bool pseudo = false;
  NormSpec norm;
  std::unordered_map<Element, double, ElementHash> table;
  Formula formula;
  Extent extent;
  std::string name;

  std::mutex mu;
  // Word-length BFS state: distance map plus the layers found so far.
  std::unordered_map<Element, std::int64_t, ElementHash> dist;
  std::vector<std::vector<Element>> layers;
  bool complete = false;
  std::map<std::pair<double, std::string>, std::shared_ptr<const BallTable>> balls;

  Impl(Kind k, GroupSpec g) : kind(k), group(std::move(g)) {}

  void grow_one_layer() {
    if (layers.empty()) {
      Element e = group.identity();
      dist.emplace(e, 0);
      layers.push_back({e});
      return;
    }
    const auto next_len = static_cast<std::int64_t>(layers.size());
    std::vector<Element> next;
    for (const auto& f : layers.back()) {
      for (const auto& s : group.generators()) {
        Element n = group.multiply(f, s);
        if (dist.emplace(n, next_len).second) next.push_back(std::move(n));
      }
    }
    if (dist.size() > ball_cap()) {
      fail(ErrorCode::kCapExceeded, "ball cap exceeded: " + std::to_string(dist.size()) +
                                        " elements > cap " + std::to_string(ball_cap()) +
                                        " at radius " + std::to_string(next_len));
    }
    if (next.empty()) {
      complete = true;
      return;
    }
    std::sort(next.begin(), next.end());
    layers.push_back(std::move(next));
  }

  void extend_to(std::int64_t radius) {
    while (!complete && static_cast<std::int64_t>(layers.size()) <= radius) grow_one_layer();
  }

  std::int64_t word_length(const Element& g) {
    std::lock_guard<std::mutex> lock(mu);
    for (;;) {
      auto it = dist.find(g);
      if (it != dist.end()) return it->second;
      if (complete) fail(ErrorCode::kOutOfBall, "element " + group.format(g) + " unreachable");
      grow_one_layer();
    }
  }

  double base_value(const Element& g) {
    switch (kind) {
      case Kind::kWordLength: return static_cast<double>(word_length(g));
      case Kind::kNormRestriction: return norm(group.abelian_projection(g));
      case Kind::kExplicitTable: {
        auto it = table.find(g);
        if (it == table.end()) {
          fail(ErrorCode::kOutOfBall,
               "element " + group.format(g) + " outside the explicit length table");
        }
        return it->second;
      }
      case Kind::kFormula: return formula(g);
    }
    return 0;
  }
};

namespace {

void require_kind(const GroupSpec& g, bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::kGroupMismatch, what + " is not available on " + g.name());
}

// All integer points of the box [-w, w]^dim, as group elements.
template <typename F>
void for_each_box_point(const GroupSpec& group, std::int64_t w, F&& f) {
  const std::size_t dim = group.coordinate_count();
  double box = std::pow(2.0 * static_cast<double>(w) + 1.0, static_cast<double>(dim));
  if (box > 20.0 * static_cast<double>(ball_cap())) {
    fail(ErrorCode::kCapExceeded, "enumeration box of half-width " + std::to_string(w) +
                                      " exceeds the ball cap");
  }
  std::vector<std::int64_t> c(dim, -w);
  if (dim == 0) return;
  for (;;) {
    f(group.element(c));
    std::size_t i = 0;
    while (i < dim && c[i] == w) c[i++] = -w;
    if (i == dim) break;
    ++c[i];
  }
}

}  // namespace

LengthFunction LengthFunction::word_length(const GroupSpec& group) {
  return LengthFunction(std::make_shared<Impl>(Kind::kWordLength, group));
}

LengthFunction LengthFunction::norm_restriction(const GroupSpec& group, NormSpec norm) {
  require_kind(group, group.kind() == GroupKind::kFreeAbelian, "a norm restriction");
  auto impl = std::make_shared<Impl>(Kind::kNormRestriction, group);
  if (norm.kind == NormSpec::Kind::kPolytope) {
    for (const auto& f : norm.functionals) {
      require(f.size() == static_cast<std::size_t>(group.rank()),
              "polytope functional dimension does not match the group rank");
    }
  }
  impl->norm = std::move(norm);
  return LengthFunction(impl);
}

LengthFunction LengthFunction::explicit_table(const GroupSpec& group,
                                              std::vector<std::pair<Element, double>> table,
                                              bool pseudo) {
  auto impl = std::make_shared<Impl>(Kind::kExplicitTable, group);
  impl->pseudo = pseudo;
  for (auto& [g, v] : table) {
    require(v >= 0, "length values must be non-negative");
    impl->table[group.element(g.coords)] = v;
  }
  auto it = impl->table.find(group.identity());
  require(it != impl->table.end(), "explicit length table must contain the identity");
  return LengthFunction(impl);
}

LengthFunction LengthFunction::formula(const GroupSpec& group, std::string name, Formula f,
                                       Extent extent, bool pseudo) {
  auto impl = std::make_shared<Impl>(Kind::kFormula, group);
  impl->formula = std::move(f);
  impl->extent = std::move(extent);
  impl->name = std::move(name);
  impl->pseudo = pseudo;
  return LengthFunction(impl);
}

LengthFunction LengthFunction::central_sqrt_formula() {
  return formula(
      GroupSpec::free_abelian(1), "2*ceil(2*sqrt|k|)",
      [](const Element& g) {
        std::int64_t k = g.coords[0] < 0 ? -g.coords[0] : g.coords[0];
        return 2.0 * static_cast<double>(ceil_sqrt(4 * k));
      },
      [](double r) {
        auto h = static_cast<std::int64_t>(std::floor(r / 2.0));
        return h * h / 4 + 1;
      });
}

LengthFunction LengthFunction::scaled(const Rational& s) const {
  require(s > 0, "length scale must be positive");
  LengthFunction out = *this;
  out.scale_ = scale_ * s;
  return out;
}

LengthFunction::Kind LengthFunction::kind() const { return impl_->kind; }
const GroupSpec& LengthFunction::group() const { return impl_->group; }
bool LengthFunction::pseudo() const { return impl_->pseudo; }

const NormSpec* LengthFunction::norm() const {
  return impl_->kind == Kind::kNormRestriction ? &impl_->norm : nullptr;
}

bool LengthFunction::integer_valued() const {
  if (scale_ != 1) return false;
  return impl_->kind == Kind::kWordLength;
}

std::string LengthFunction::describe() const {
  std::string base;
  switch (impl_->kind) {
    case Kind::kWordLength: base = "word"; break;
    case Kind::kNormRestriction: base = "norm:" + impl_->norm.name(); break;
    case Kind::kExplicitTable: base = "table"; break;
    case Kind::kFormula: base = "formula:" + impl_->name; break;
  }
  if (scale_ != 1) base = to_string(scale_) + "*" + base;
  return base;
}

double LengthFunction::operator()(const Element& g) const {
  double v = impl_->base_value(g);
  return scale_ == 1 ? v : to_double(scale_) * v;
}

bool LengthFunction::defined_at(const Element& g) const {
  if (impl_->kind != Kind::kExplicitTable) return true;
  return impl_->table.count(g) != 0;
}

std::shared_ptr<const BallTable> LengthFunction::ball(double radius) const {
  require(radius >= 0, "ball radius must be non-negative");
  Impl& im = *impl_;
  const double s = to_double(scale_);
  const double rb = radius / s;
  const auto key = std::make_pair(radius, to_string(scale_));
  {
    std::lock_guard<std::mutex> lock(im.mu);
    auto it = im.balls.find(key);
    if (it != im.balls.end()) return it->second;
  }

  std::vector<std::pair<double, Element>> items;
  switch (im.kind) {
    case Kind::kWordLength: {
      std::lock_guard<std::mutex> lock(im.mu);
      const auto top = static_cast<std::int64_t>(std::floor(rb + 1e-12));
      im.extend_to(top);
      for (std::size_t k = 0; k < im.layers.size() && static_cast<std::int64_t>(k) <= top; ++k) {
        for (const auto& g : im.layers[k]) items.emplace_back(static_cast<double>(k), g);
      }
      break;
    }
    case Kind::kNormRestriction: {
      const double ext = im.norm.unit_ball_extent(static_cast<std::size_t>(im.group.rank()));
      const auto w = static_cast<std::int64_t>(std::floor(rb * ext + 1e-9));
      for_each_box_point(im.group, w, [&](Element g) {
        double v = im.norm(g.coords);
        if (v <= rb + 1e-12) items.emplace_back(v, std::move(g));
      });
      break;
    }
    case Kind::kExplicitTable:
      for (const auto& [g, v] : im.table) {
        if (v <= rb + 1e-12) items.emplace_back(v, g);
      }
      break;
    case Kind::kFormula: {
      std::int64_t w = im.extent(rb);
      for_each_box_point(im.group, w, [&](Element g) {
        double v = im.formula(g);
        if (v <= rb + 1e-12) items.emplace_back(v, std::move(g));
      });
      break;
    }
  }
  if (items.size() > ball_cap()) {
    fail(ErrorCode::kCapExceeded, "ball of radius " + std::to_string(radius) + " has " +
                                      std::to_string(items.size()) + " elements > cap");
  }
  std::sort(items.begin(), items.end());
  std::vector<Element> elements;
  std::vector<double> lengths;
  elements.reserve(items.size());
  lengths.reserve(items.size());
  for (auto& [v, g] : items) {
    lengths.push_back(scale_ == 1 ? v : s * v);
    elements.push_back(std::move(g));
  }
  auto table = std::make_shared<const BallTable>(radius, std::move(elements), std::move(lengths));
  std::lock_guard<std::mutex> lock(im.mu);
  im.balls.emplace(key, table);
  return table;
}

LengthAxiomReport check_length_axioms(const LengthFunction& length, double radius) {
  const GroupSpec& group = length.group();
  LengthAxiomReport rep;
  rep.identity_value = length(group.identity());
  auto ball = length.ball(radius);
  rep.elements = ball->size();
  for (std::size_t i = 0; i < ball->size(); ++i) {
    Element inv = group.inverse(ball->element(i));
    if (!length.defined_at(inv)) {
      ++rep.skipped;
      continue;
    }
    rep.symmetry_violation =
        std::max(rep.symmetry_violation, std::fabs(ball->length(i) - length(inv)));
  }
  auto half = length.ball(radius / 2.0);
  for (std::size_t i = 0; i < half->size(); ++i) {
    for (std::size_t j = 0; j < half->size(); ++j) {
      Element gh = group.multiply(half->element(i), half->element(j));
      if (!length.defined_at(gh)) {
        ++rep.skipped;
        continue;
      }
      ++rep.pairs;
      double excess = length(gh) - half->length(i) - half->length(j);
      rep.subadditivity_violation = std::max(rep.subadditivity_violation, excess);
    }
  }
  rep.max_violation = std::max({std::fabs(rep.identity_value), rep.symmetry_violation,
                                rep.subadditivity_violation});
  return rep;
}

}  // namespace horocp
