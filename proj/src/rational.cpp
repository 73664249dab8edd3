#include "horocp/rational.hpp"

#include <numeric>

#include "horocp/error.hpp"

namespace horocp {

namespace mp = boost::multiprecision;

std::string to_string(const Rational& q) {
  if (mp::denominator(q) == 1) return mp::numerator(q).str();
  return mp::numerator(q).str() + "/" + mp::denominator(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(mp::cpp_int(text));
    mp::cpp_int num(text.substr(0, slash));
    mp::cpp_int den(text.substr(slash + 1));
    require(den != 0, "zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(ErrorCode::kInvalidArgument, "not a rational number: '" + text + "'");
  }
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  require(a.size() == b.size(), "dimension mismatch in rational dot product");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RationalVector to_rational(const std::vector<std::int64_t>& v) {
  RationalVector out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(x);
  return out;
}

std::vector<std::size_t> row_reduce(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    const Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(RationalMatrix m) { return row_reduce(m).size(); }

RationalVector solve_square(RationalMatrix a, RationalVector b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    require(a[i].size() == n, "solve_square needs a square system");
    a[i].push_back(b[i]);
  }
  auto pivots = row_reduce(a);
  if (pivots.size() != n || (n > 0 && pivots.back() != n - 1)) return {};
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

RationalMatrix null_space(RationalMatrix m, std::size_t cols) {
  auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  RationalMatrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::int64_t> primitive_integer(const RationalVector& v) {
  mp::cpp_int lcm = 1;
  for (const auto& x : v) {
    const mp::cpp_int d = mp::denominator(x);
    lcm = lcm / mp::gcd(lcm, d) * d;
  }
  std::vector<mp::cpp_int> ints;
  mp::cpp_int g = 0;
  for (const auto& x : v) {
    mp::cpp_int n = mp::numerator(x) * (lcm / mp::denominator(x));
    g = mp::gcd(g, mp::abs(n));
    ints.push_back(n);
  }
  std::vector<std::int64_t> out;
  if (g == 0) return std::vector<std::int64_t>(v.size(), 0);
  int sign = 0;
  for (auto& n : ints) {
    n /= g;
    if (sign == 0 && n != 0) sign = n > 0 ? 1 : -1;
  }
  for (auto& n : ints) out.push_back(static_cast<std::int64_t>(n * sign));
  return out;
}

}  // namespace horocp
