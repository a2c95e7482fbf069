#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "dsbranch/characters.hpp"
#include "dsbranch/error.hpp"
#include "dsbranch/rational.hpp"
#include "dsbranch/root_system.hpp"

namespace dsbranch {

namespace detail {

using LatticePoint = std::vector<std::int64_t>;

struct LatticeKey {
  std::size_t suffix;
  LatticePoint point;
  friend bool operator==(const LatticeKey& a, const LatticeKey& b) {
    return a.suffix == b.suffix && a.point == b.point;
  }
};

struct LatticeKeyHash {
  std::size_t operator()(const LatticeKey& k) const {
    std::size_t h = k.suffix * 0x9e3779b97f4a7c15ull;
    for (auto x : k.point) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ull;
    return h;
  }
};

// Integer covector proportional to the grading, so that integer weights have
// integer scaled grades with the same sign pattern.
inline std::vector<std::int64_t> scaled_covector(const std::vector<Rational>& covector) {
  mpz_class l = 1;
  for (const auto& c : covector) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<std::int64_t> out;
  for (const auto& c : covector) out.push_back(to_int64(Rational(c * l)));
  return out;
}

inline std::int64_t scaled_dot(const std::vector<std::int64_t>& h, const LatticePoint& x) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < h.size(); ++i) s += h[i] * x[i];
  return s;
}

}  // namespace detail

// Partition function of a polarized generator list: P(mu) is the number of
// (k_a) in N^A with sum k_a a = mu. Values are memoized by (generator suffix,
// weight); the memo is shared and safe for concurrent readers and writers.
class PartitionTable {
 public:
  PartitionTable(std::vector<Weight> generators, Grading grading)
      : generators_(std::move(generators)), grading_(std::move(grading)) {
    for (const auto& a : generators_) {
      if (grading_.grade(a) <= 0) {
        throw Error(ErrorKind::GeneratorsNotPolarized,
                    "(lambda, " + a.to_string() + ") <= 0 makes the partition count infinite");
      }
      if (!a.is_integral()) throw Error(ErrorKind::NotIntegral, "generator " + a.to_string() + " is not integral");
      lattice_generators_.push_back(a.to_lattice());
    }
    scaled_ = detail::scaled_covector(grading_.covector);
    for (const auto& a : lattice_generators_) generator_grades_.push_back(detail::scaled_dot(scaled_, a));
  }

  PartitionTable(const PartitionTable&) = delete;
  PartitionTable& operator=(const PartitionTable&) = delete;

  const std::vector<Weight>& generators() const noexcept { return generators_; }
  const Grading& grading() const noexcept { return grading_; }

  Coeff count(const Weight& mu) const {
    if (mu.rank() != grading_.reference.rank()) throw Error(ErrorKind::DimensionMismatch, "weight has wrong length");
    if (!mu.is_integral()) return 0;
    Coeff value = count_from(0, mu.to_lattice());
    if (!faults_.empty()) {
      auto it = faults_.find(mu);
      if (it != faults_.end()) value += it->second;
    }
    return value;
  }

  // Test hook: perturbs the reported value of P(mu) by delta.
  void inject_fault(const Weight& mu, Coeff delta) { faults_[mu] += delta; }

  std::size_t memo_size() const {
    std::shared_lock lock(mutex_);
    return memo_.size();
  }

 private:
  Coeff count_from(std::size_t i, const detail::LatticePoint& mu) const {
    std::int64_t g = detail::scaled_dot(scaled_, mu);
    if (g < 0) return 0;
    if (i == lattice_generators_.size() || g == 0) {
      for (auto x : mu)
        if (x != 0) return 0;
      return 1;
    }
    detail::LatticeKey key{i, mu};
    {
      std::shared_lock lock(mutex_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    Coeff total = 0;
    detail::LatticePoint rest = mu;
    const auto& a = lattice_generators_[i];
    for (std::int64_t gr = g; gr >= 0; gr -= generator_grades_[i]) {
      total = checked_add(total, count_from(i + 1, rest));
      for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= a[j];
    }
    std::unique_lock lock(mutex_);
    memo_.emplace(std::move(key), total);
    return total;
  }

  std::vector<Weight> generators_;
  Grading grading_;
  std::vector<detail::LatticePoint> lattice_generators_;
  std::vector<std::int64_t> scaled_;
  std::vector<std::int64_t> generator_grades_;
  std::map<Weight, Coeff> faults_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<detail::LatticeKey, Coeff, detail::LatticeKeyHash> memo_;
};

inline Coeff partition_count(const PartitionTable& table, const Weight& mu) { return table.count(mu); }

// Exhaustive enumeration of all (k_a) with 0 <= k_a <= bounds[a]; counts the
// ones summing to mu. No pruning, no memo: this is the definition.
inline Coeff partition_oracle(const std::vector<Weight>& generators, const Weight& mu,
                              const std::vector<std::int64_t>& bounds) {
  if (!mu.is_integral()) return 0;
  auto target = mu.to_lattice();
  std::vector<detail::LatticePoint> gens;
  for (const auto& a : generators) gens.push_back(a.to_lattice());
  std::vector<std::int64_t> k(gens.size(), 0);
  Coeff found = 0;
  while (true) {
    detail::LatticePoint sum(target.size(), 0);
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += k[a] * gens[a][j];
    if (sum == target) ++found;
    std::size_t pos = 0;
    while (pos < k.size() && k[pos] == bounds[pos]) k[pos++] = 0;
    if (pos == k.size()) break;
    ++k[pos];
  }
  return found;
}

inline Coeff partition_oracle(const std::vector<Weight>& generators, const Weight& mu, std::int64_t bound) {
  return partition_oracle(generators, mu, std::vector<std::int64_t>(generators.size(), bound));
}

// Oracle with the per-generator bound k_a <= (mu, lambda) / (a, lambda).
inline Coeff partition_oracle(const std::vector<Weight>& generators, const Grading& grading, const Weight& mu) {
  Rational g = grading.grade(mu);
  if (g < 0) return 0;
  std::vector<std::int64_t> bounds;
  for (const auto& a : generators) {
    Rational ga = grading.grade(a);
    if (ga <= 0) throw Error(ErrorKind::GeneratorsNotPolarized, "(lambda, " + a.to_string() + ") <= 0");
    bounds.push_back(to_int64(floor_of(g / ga)));
  }
  return partition_oracle(generators, mu, bounds);
}

// sum_mu P(mu) t^mu over grades <= C, built by enumerating every combination
// sum k_a a of grade <= C once.
inline FormalCharacter partition_series(const std::vector<Weight>& generators, const Grading& grading,
                                        const Rational& cutoff) {
  FormalCharacter out(grading, cutoff);
  if (cutoff < 0) return out;
  std::vector<Rational> grades;
  for (const auto& a : generators) {
    grades.push_back(grading.grade(a));
    if (grades.back() <= 0) throw Error(ErrorKind::GeneratorsNotPolarized, "(lambda, " + a.to_string() + ") <= 0");
  }
  Weight point(grading.reference.rank());
  auto walk = [&](auto&& self, std::size_t i, Weight& at, const Rational& grade) -> void {
    if (i == generators.size()) {
      out.add(at, 1);
      return;
    }
    Weight cur = at;
    for (Rational g = grade; g <= cutoff; g += grades[i], cur += generators[i]) self(self, i + 1, cur, g);
  };
  walk(walk, 0, point, Rational(0));
  return out;
}

// (-1)^r t^{-gamma} sum_mu P_{A+}(mu) t^mu, truncated at grade C.
inline FormalCharacter polarized_product_closed_form(const std::vector<Weight>& roots, const Grading& grading,
                                                     const Rational& cutoff) {
  if (cutoff < 0) throw Error(ErrorKind::CutoffTooSmall, "closed form needs a cutoff >= 0");
  Polarization p = polarize(roots, grading);
  FormalCharacter series = partition_series(p.polarized, grading, cutoff + grading.grade(p.gamma));
  FormalCharacter out(grading, cutoff);
  Coeff sign = (p.r % 2) ? -1 : 1;
  for (const auto& [mu, c] : series.terms()) out.add(mu - p.gamma, checked_mul(sign, c));
  return out;
}

}  // namespace dsbranch
