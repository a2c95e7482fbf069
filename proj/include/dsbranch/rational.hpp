#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dsbranch/error.hpp"

namespace dsbranch {

using Rational = mpq_class;

// Integer multiplicities and partition counts. Arithmetic on these goes
// through checked_add / checked_mul; overflow is an internal limit, not a
// modelled input error.
using Coeff = std::int64_t;

inline Coeff checked_add(Coeff a, Coeff b) {
  Coeff out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("coefficient overflow");
  return out;
}

inline Coeff checked_mul(Coeff a, Coeff b) {
  Coeff out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("coefficient overflow");
  return out;
}

// Accepts "p/q" or "p" with an optional sign; no decimals, no whitespace.
inline Rational parse_rational(std::string_view text) {
  static const std::regex pattern(R"(^[+-]?[0-9]+(/[0-9]+)?$)");
  std::string s(text);
  if (!std::regex_match(s, pattern)) {
    throw Error(ErrorKind::ParseError, "not a rational: '" + s + "'");
  }
  if (s.front() == '+') s.erase(0, 1);
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    mpz_class den(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator: '" + std::string(text) + "'");
  }
  Rational q(s);
  q.canonicalize();
  return q;
}

inline std::string format_rational(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Rational floor_of(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

inline Rational ceil_of(const Rational& q) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(c);
}

inline std::int64_t to_int64(const Rational& q) {
  if (!is_integer(q) || !q.get_num().fits_slong_p()) {
    throw std::overflow_error("rational does not fit a 64-bit integer: " + q.get_str());
  }
  return q.get_num().get_si();
}

inline std::size_t hash_rational(const Rational& q) {
  auto limb = [](const mpz_class& z) -> std::size_t {
    std::size_t h = mpz_size(z.get_mpz_t()) ? mpz_getlimbn(z.get_mpz_t(), 0) : 0;
    return h ^ (static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1) << 1);
  };
  return limb(q.get_num()) * 1000003u ^ limb(q.get_den());
}

// A point of t*, in coordinates with respect to a basis of the weight
// lattice. Integral coordinates are exactly the lattice points.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::size_t rank) : coords_(rank, Rational(0)) {}
  explicit Weight(std::vector<Rational> coords) : coords_(std::move(coords)) {
    for (auto& c : coords_) c.canonicalize();
  }
  Weight(std::initializer_list<Rational> coords) : Weight(std::vector<Rational>(coords)) {}

  static Weight from_ints(std::initializer_list<long> values) {
    std::vector<Rational> c;
    for (long v : values) c.emplace_back(v);
    return Weight(std::move(c));
  }

  std::size_t rank() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const noexcept { return coords_; }

  bool is_zero() const {
    for (const auto& c : coords_)
      if (c != 0) return false;
    return true;
  }

  bool is_integral() const {
    for (const auto& c : coords_)
      if (!is_integer(c)) return false;
    return true;
  }

  std::vector<std::int64_t> to_lattice() const {
    std::vector<std::int64_t> out;
    out.reserve(coords_.size());
    for (const auto& c : coords_) out.push_back(to_int64(c));
    return out;
  }

  Weight& operator+=(const Weight& o) {
    check_rank(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    check_rank(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  Weight& operator*=(const Rational& s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }

  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator-(Weight a) { return a *= Rational(-1); }
  friend Weight operator*(const Rational& s, Weight a) { return a *= s; }
  friend Weight operator*(long s, Weight a) { return a *= Rational(s); }

  friend bool operator==(const Weight& a, const Weight& b) { return a.coords_ == b.coords_; }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
  // Lexicographic on coordinates.
  friend bool operator<(const Weight& a, const Weight& b) {
    std::size_t n = std::min(a.rank(), b.rank());
    for (std::size_t i = 0; i < n; ++i) {
      int c = cmp(a.coords_[i], b.coords_[i]);
      if (c != 0) return c < 0;
    }
    return a.rank() < b.rank();
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ",";
      s += coords_[i].get_str();
    }
    return s + ")";
  }

  // Comma separated, as accepted by parse_weight_csv.
  std::string to_csv() const {
    std::string s;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ",";
      s += coords_[i].get_str();
    }
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << w.to_string(); }

 private:
  void check_rank(const Weight& o) const {
    if (o.rank() != rank()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "weights of rank " + std::to_string(rank()) + " and " + std::to_string(o.rank()));
    }
  }

  std::vector<Rational> coords_;
};

struct WeightHash {
  std::size_t operator()(const Weight& w) const {
    std::size_t h = w.rank();
    for (const auto& c : w.coords()) h = h * 31 + hash_rational(c);
    return h;
  }
};

inline Weight parse_weight_csv(std::string_view text) {
  std::vector<Rational> coords;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    coords.push_back(parse_rational(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Weight(std::move(coords));
}

inline Rational dot(const std::vector<Rational>& a, const Weight& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Dense exact matrices, row-major.
using Matrix = std::vector<std::vector<Rational>>;

inline Matrix identity_matrix(std::size_t n) {
  Matrix m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix out(n, std::vector<Rational>(m, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

inline Matrix transpose(const Matrix& a) {
  if (a.empty()) return {};
  Matrix t(a[0].size(), std::vector<Rational>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline Weight apply(const Matrix& m, const Weight& v) {
  std::vector<Rational> out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.rank(); ++j) out[i] += m[i][j] * v[j];
  return Weight(std::move(out));
}

inline Rational determinant(Matrix a) {
  std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

inline std::size_t matrix_rank(Matrix a) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0, rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[rank][col];
      for (std::size_t c = col; c < cols; ++c) a[r][c] -= f * a[rank][c];
    }
    ++rank;
  }
  return rank;
}

// Symmetric G = L D L^T with L unit lower triangular. Returns nullopt as soon
// as a pivot is non-positive, i.e. G is not positive definite.
struct LdlFactors {
  Matrix lower;
  std::vector<Rational> diag;
};

inline std::optional<LdlFactors> ldl_positive_definite(const Matrix& g) {
  std::size_t n = g.size();
  LdlFactors f{identity_matrix(n), std::vector<Rational>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    Rational d = g[j][j];
    for (std::size_t k = 0; k < j; ++k) d -= f.lower[j][k] * f.lower[j][k] * f.diag[k];
    if (d <= 0) return std::nullopt;
    f.diag[j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rational s = g[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= f.lower[i][k] * f.lower[j][k] * f.diag[k];
      f.lower[i][j] = s / d;
    }
  }
  return f;
}

}  // namespace dsbranch
