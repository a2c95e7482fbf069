#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsbranch/error.hpp"
#include "dsbranch/rational.hpp"

namespace dsbranch {

struct Root {
  Weight weight;
  bool compact = false;
};

// Root data of (g, k, t): the invariant form on t* in lattice coordinates and
// the roots of t, each flagged compact or noncompact. Only build_root_datum
// produces validated instances.
class RootDatum {
 public:
  RootDatum() = default;
  RootDatum(std::size_t rank, Matrix gram, std::vector<Root> roots)
      : rank_(rank), gram_(std::move(gram)), roots_(std::move(roots)) {}

  std::size_t rank() const noexcept { return rank_; }
  const Matrix& gram() const noexcept { return gram_; }
  const std::vector<Root>& roots() const noexcept { return roots_; }

  // The invariant inner product (a, b) = a^T G b.
  Rational pair(const Weight& a, const Weight& b) const {
    Rational s = 0;
    for (std::size_t i = 0; i < rank_; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < rank_; ++j) s += a[i] * gram_[i][j] * b[j];
    }
    return s;
  }

  // G v, so that (x, v) = covector . x
  std::vector<Rational> covector(const Weight& v) const {
    std::vector<Rational> out(rank_, Rational(0));
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) out[i] += gram_[i][j] * v[j];
    return out;
  }

  std::optional<std::size_t> find_root(const Weight& w) const {
    for (std::size_t i = 0; i < roots_.size(); ++i)
      if (roots_[i].weight == w) return i;
    return std::nullopt;
  }

  // Matrix of s_a(x) = x - 2 (x, a)/(a, a) a in lattice coordinates.
  Matrix reflection(const Weight& a) const {
    Matrix m = identity_matrix(rank_);
    auto ga = covector(a);
    Rational scale = Rational(2) / pair(a, a);
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) m[i][j] -= scale * a[i] * ga[j];
    return m;
  }

  std::size_t noncompact_count() const {
    return static_cast<std::size_t>(
        std::count_if(roots_.begin(), roots_.end(), [](const Root& r) { return !r.compact; }));
  }

 private:
  std::size_t rank_ = 0;
  Matrix gram_;
  std::vector<Root> roots_;
};

inline RootDatum build_root_datum(std::size_t rank, Matrix gram, std::vector<Root> roots) {
  if (rank == 0) throw Error(ErrorKind::DimensionMismatch, "rank must be positive");
  if (gram.size() != rank) throw Error(ErrorKind::DimensionMismatch, "gram must have rank rows");
  for (auto& row : gram) {
    if (row.size() != rank) throw Error(ErrorKind::DimensionMismatch, "gram must be square");
    for (auto& x : row) x.canonicalize();
  }
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (gram[i][j] != gram[j][i]) {
        throw Error(ErrorKind::NonPositiveDefiniteGram,
                    "gram is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
  if (!ldl_positive_definite(gram)) {
    throw Error(ErrorKind::NonPositiveDefiniteGram, "gram has a non-positive LDL^T pivot");
  }

  for (const auto& r : roots) {
    if (r.weight.rank() != rank) {
      throw Error(ErrorKind::DimensionMismatch, "root " + r.weight.to_string() + " has wrong length");
    }
    if (r.weight.is_zero()) throw Error(ErrorKind::ReflectionAxiomViolation, "zero root");
    if (!r.weight.is_integral()) {
      throw Error(ErrorKind::ReflectionAxiomViolation, "root " + r.weight.to_string() + " is not integral");
    }
  }

  RootDatum datum(rank, std::move(gram), std::move(roots));
  const auto& rs = datum.roots();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (rs[i].weight == rs[j].weight) {
        throw Error(ErrorKind::RootSetNotSymmetric, "duplicate root " + rs[i].weight.to_string());
      }
    auto neg = datum.find_root(-rs[i].weight);
    if (!neg) throw Error(ErrorKind::RootSetNotSymmetric, "missing negative of " + rs[i].weight.to_string());
    if (rs[*neg].compact != rs[i].compact) {
      throw Error(ErrorKind::RootSetNotSymmetric, "compact flag differs on -" + rs[i].weight.to_string());
    }
  }

  for (const auto& a : rs) {
    Rational aa = datum.pair(a.weight, a.weight);
    for (const auto& b : rs) {
      Rational cartan = Rational(2) * datum.pair(b.weight, a.weight) / aa;
      if (!is_integer(cartan)) {
        throw Error(ErrorKind::ReflectionAxiomViolation,
                    "non-integral Cartan number for " + a.weight.to_string() + ", " + b.weight.to_string());
      }
      Weight image = b.weight - cartan * a.weight;
      auto idx = datum.find_root(image);
      if (!idx) {
        throw Error(ErrorKind::ReflectionAxiomViolation,
                    "reflection in " + a.weight.to_string() + " sends " + b.weight.to_string() + " outside the roots");
      }
      // k and p form a Z/2 grading: parity flips once per odd multiple of a noncompact root.
      bool flips = !a.compact && cartan.get_num() % 2 != 0;
      if (rs[*idx].compact != (b.compact != flips)) {
        throw Error(ErrorKind::ReflectionAxiomViolation,
                    "reflection in " + a.weight.to_string() + " breaks the compact flag of " + b.weight.to_string());
      }
      if (auto sum = datum.find_root(a.weight + b.weight)) {
        bool expected = (a.compact == b.compact);
        if (rs[*sum].compact != expected) {
          throw Error(ErrorKind::ReflectionAxiomViolation,
                      "compact flag of " + rs[*sum].weight.to_string() + " is not additive");
        }
      }
    }
  }
  return datum;
}

// Grade function g(mu) = (mu, lambda) used to truncate infinite series.
struct Grading {
  Weight reference;
  std::vector<Rational> covector;

  Rational grade(const Weight& mu) const { return dot(covector, mu); }
  friend bool operator==(const Grading& a, const Grading& b) { return a.covector == b.covector; }
  friend bool operator!=(const Grading& a, const Grading& b) { return !(a == b); }
};

inline Grading make_grading(const RootDatum& datum, const Weight& lambda) {
  if (lambda.rank() != datum.rank()) throw Error(ErrorKind::DimensionMismatch, "lambda has wrong length");
  return Grading{lambda, datum.covector(lambda)};
}

struct PositiveSystem {
  Weight lambda;
  std::vector<Weight> r_plus;
  std::vector<Weight> r_c_plus;
  std::vector<Weight> r_n_plus;
  Weight rho;
  Weight rho_c;
  Weight rho_n;
};

inline PositiveSystem positive_system(const RootDatum& datum, const Weight& lambda) {
  if (lambda.rank() != datum.rank()) throw Error(ErrorKind::DimensionMismatch, "lambda has wrong length");
  PositiveSystem ps{lambda, {}, {}, {}, Weight(datum.rank()), Weight(datum.rank()), Weight(datum.rank())};
  Rational half(1, 2);
  for (const auto& r : datum.roots()) {
    Rational p = datum.pair(r.weight, lambda);
    if (p == 0) throw Error(ErrorKind::SingularLambda, "(lambda, " + r.weight.to_string() + ") = 0");
    if (p < 0) continue;
    ps.r_plus.push_back(r.weight);
    if (r.compact) {
      ps.r_c_plus.push_back(r.weight);
      ps.rho_c += half * r.weight;
    } else {
      ps.r_n_plus.push_back(r.weight);
      ps.rho_n += half * r.weight;
    }
  }
  ps.rho = ps.rho_c + ps.rho_n;
  return ps;
}

struct WeylElement {
  Matrix matrix;
  int sign = 1;
  int length = 0;

  Weight apply(const Weight& v) const { return dsbranch::apply(matrix, v); }
};

namespace detail {

inline std::string matrix_key(const Matrix& m) {
  std::string key;
  for (const auto& row : m)
    for (const auto& x : row) {
      key += x.get_str();
      key += ';';
    }
  return key;
}

// Positive compact roots that are not a sum of two positive compact roots.
inline std::vector<Weight> simple_roots(const std::vector<Weight>& positive) {
  std::vector<Weight> simple;
  for (const auto& a : positive) {
    bool decomposable = false;
    for (const auto& b : positive) {
      Weight rest = a - b;
      if (std::find(positive.begin(), positive.end(), rest) != positive.end()) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simple.push_back(a);
  }
  return simple;
}

}  // namespace detail

inline constexpr std::size_t kDefaultWeylOrderBound = 1'000'000;

// W(K,T) by breadth-first closure over the simple compact reflections.
// Identity comes first; BFS depth is the reflection length.
inline std::vector<WeylElement> weyl_group(const RootDatum& datum, const std::vector<Weight>& r_c_plus,
                                           std::size_t order_bound = kDefaultWeylOrderBound) {
  std::vector<Matrix> generators;
  for (const auto& a : detail::simple_roots(r_c_plus)) generators.push_back(datum.reflection(a));

  std::vector<WeylElement> group;
  std::map<std::string, std::size_t> seen;
  group.push_back({identity_matrix(datum.rank()), 1, 0});
  seen.emplace(detail::matrix_key(group.front().matrix), 0);
  for (std::size_t head = 0; head < group.size(); ++head) {
    for (const auto& s : generators) {
      Matrix next = multiply(s, group[head].matrix);
      auto key = detail::matrix_key(next);
      if (seen.count(key)) continue;
      if (group.size() >= order_bound) {
        throw Error(ErrorKind::GroupNotClosedWithinBound,
                    "Weyl group exceeds order bound " + std::to_string(order_bound));
      }
      seen.emplace(std::move(key), group.size());
      WeylElement w{std::move(next), -group[head].sign, group[head].length + 1};
      group.push_back(std::move(w));
    }
  }

  std::vector<Weight> compact_roots;
  for (const auto& r : datum.roots())
    if (r.compact) compact_roots.push_back(r.weight);
  for (const auto& w : group) {
    if (multiply(transpose(w.matrix), multiply(datum.gram(), w.matrix)) != datum.gram()) {
      throw Error(ErrorKind::ReflectionAxiomViolation, "Weyl element does not preserve the gram form");
    }
    if (determinant(w.matrix) != w.sign) {
      throw Error(ErrorKind::ReflectionAxiomViolation, "Weyl element sign disagrees with its determinant");
    }
    for (const auto& a : compact_roots) {
      if (std::find(compact_roots.begin(), compact_roots.end(), w.apply(a)) == compact_roots.end()) {
        throw Error(ErrorKind::ReflectionAxiomViolation, "Weyl element does not permute the compact roots");
      }
    }
  }
  return group;
}

// The compact group data fixed before any lambda: positive compact roots,
// rho_c and W(K,T).
struct CompactSystem {
  RootDatum datum;
  std::vector<std::size_t> positive_indices;
  std::vector<Weight> positive;
  std::vector<std::vector<Rational>> positive_covectors;
  Weight rho_c;
  std::vector<WeylElement> weyl;

  bool is_dominant(const Weight& mu) const {
    for (const auto& c : positive_covectors)
      if (dot(c, mu) < 0) return false;
    return true;
  }

  bool is_strictly_dominant(const Weight& mu) const {
    for (const auto& c : positive_covectors)
      if (dot(c, mu) <= 0) return false;
    return true;
  }
};

inline CompactSystem make_compact_system(const RootDatum& datum, const std::vector<std::size_t>& indices,
                                         std::size_t order_bound = kDefaultWeylOrderBound) {
  CompactSystem k{datum, indices, {}, {}, Weight(datum.rank()), {}};
  const auto& rs = datum.roots();
  for (auto i : indices) {
    if (i >= rs.size()) throw Error(ErrorKind::InvalidCompactPositive, "root index " + std::to_string(i) + " out of range");
    if (!rs[i].compact) {
      throw Error(ErrorKind::InvalidCompactPositive, "root " + rs[i].weight.to_string() + " is not compact");
    }
    if (std::find(k.positive.begin(), k.positive.end(), rs[i].weight) != k.positive.end()) {
      throw Error(ErrorKind::InvalidCompactPositive, "root " + rs[i].weight.to_string() + " listed twice");
    }
    k.positive.push_back(rs[i].weight);
  }
  for (const auto& r : rs) {
    if (!r.compact) continue;
    bool has = std::find(k.positive.begin(), k.positive.end(), r.weight) != k.positive.end();
    bool has_neg = std::find(k.positive.begin(), k.positive.end(), -r.weight) != k.positive.end();
    if (has == has_neg) {
      throw Error(ErrorKind::InvalidCompactPositive,
                  "exactly one of +/-" + r.weight.to_string() + " must be positive");
    }
  }
  for (const auto& a : k.positive)
    for (const auto& b : k.positive) {
      auto sum = datum.find_root(a + b);
      if (sum && std::find(k.positive.begin(), k.positive.end(), a + b) == k.positive.end()) {
        throw Error(ErrorKind::InvalidCompactPositive, "positive compact roots are not closed under addition");
      }
    }
  for (const auto& a : k.positive) {
    k.rho_c += Rational(1, 2) * a;
    k.positive_covectors.push_back(datum.covector(a));
  }
  k.weyl = weyl_group(datum, k.positive, order_bound);
  return k;
}

// A Harish-Chandra parameter: lambda regular, in Lambda*_rho and strictly
// dominant for the compact positive system.
struct HCParameter {
  CompactSystem compact;
  Weight lambda;
  PositiveSystem positive;
  Grading grading;

  const RootDatum& datum() const { return compact.datum; }
  // Lowest K-type lambda - rho_c + rho_n.
  Weight mu_lambda() const { return lambda - positive.rho_c + positive.rho_n; }
  std::size_t r() const { return positive.r_n_plus.size(); }
};

inline HCParameter validate_hc_parameter(const CompactSystem& compact, const Weight& lambda) {
  const auto& datum = compact.datum;
  if (lambda.rank() != datum.rank()) throw Error(ErrorKind::DimensionMismatch, "lambda has wrong length");
  for (const auto& r : datum.roots())
    if (datum.pair(r.weight, lambda) == 0) {
      throw Error(ErrorKind::NotRegular, "lambda " + lambda.to_string() + " is orthogonal to " + r.weight.to_string());
    }
  for (const auto& a : compact.positive)
    if (datum.pair(a, lambda) <= 0) {
      throw Error(ErrorKind::NotDominant, "lambda " + lambda.to_string() + " not dominant for " + a.to_string());
    }
  PositiveSystem ps = positive_system(datum, lambda);
  if (!(lambda - ps.rho).is_integral()) {
    throw Error(ErrorKind::NotInLambdaRho, "lambda - rho = " + (lambda - ps.rho).to_string() + " is not integral");
  }
  return HCParameter{compact, lambda, std::move(ps), make_grading(datum, lambda)};
}

inline HCParameter validate_hc_parameter(const RootDatum& datum, const std::vector<std::size_t>& compact_positive,
                                         const Weight& lambda) {
  return validate_hc_parameter(make_compact_system(datum, compact_positive), lambda);
}

// Weyl dimension formula prod (mu + rho_c, a) / (rho_c, a) over positive compact roots.
inline Coeff weyl_dim(const CompactSystem& compact, const Weight& mu) {
  if (!compact.is_dominant(mu)) throw Error(ErrorKind::NotDominant, mu.to_string() + " is not dominant");
  Rational dim = 1;
  Weight shifted = mu + compact.rho_c;
  for (const auto& c : compact.positive_covectors) dim *= dot(c, shifted) / dot(c, compact.rho_c);
  return to_int64(dim);
}

}  // namespace dsbranch
