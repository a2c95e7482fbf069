#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dsbranch/error.hpp"
#include "dsbranch/rational.hpp"
#include "dsbranch/root_system.hpp"

namespace dsbranch {

// Sparse element of R(T), or a truncation of an element of R^{-infty}(T).
//
// A character with a cutoff C is a statement about an infinite series: every
// term of grade <= C is stored, nothing above C is stored, and the grades
// above C are unknown. A character without a cutoff is finite and exact.
// Finite characters may be ungraded; truncated ones always carry a grading.
class FormalCharacter {
 public:
  using Terms = std::map<Weight, Coeff>;

  FormalCharacter() = default;
  explicit FormalCharacter(std::optional<Grading> grading, std::optional<Rational> cutoff = std::nullopt)
      : grading_(std::move(grading)), cutoff_(std::move(cutoff)) {
    if (cutoff_ && !grading_) throw Error(ErrorKind::MissingGrading, "a truncated character needs a grading");
  }

  static FormalCharacter monomial(const Weight& mu, Coeff c = 1, std::optional<Grading> grading = std::nullopt) {
    FormalCharacter x(std::move(grading));
    x.add(mu, c);
    return x;
  }

  const Terms& terms() const noexcept { return terms_; }
  const std::optional<Grading>& grading() const noexcept { return grading_; }
  const std::optional<Rational>& cutoff() const noexcept { return cutoff_; }
  bool is_finite() const noexcept { return !cutoff_.has_value(); }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Coeff coeff(const Weight& mu) const {
    auto it = terms_.find(mu);
    return it == terms_.end() ? 0 : it->second;
  }

  Rational grade(const Weight& mu) const {
    if (!grading_) throw Error(ErrorKind::MissingGrading, "character is ungraded");
    return grading_->grade(mu);
  }

  // Adds c t^mu. Terms above the cutoff are dropped; zeros are purged.
  void add(const Weight& mu, Coeff c) {
    if (c == 0) return;
    if (cutoff_ && grading_->grade(mu) > *cutoff_) return;
    auto [it, inserted] = terms_.try_emplace(mu, c);
    if (!inserted) {
      it->second = checked_add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }

  // Smallest stored grade; nullopt for the zero character.
  std::optional<Rational> min_grade() const {
    std::optional<Rational> m;
    for (const auto& [w, c] : terms_) {
      Rational g = grade(w);
      if (!m || g < *m) m = g;
    }
    return m;
  }

  std::optional<Rational> max_grade() const {
    std::optional<Rational> m;
    for (const auto& [w, c] : terms_) {
      Rational g = grade(w);
      if (!m || g > *m) m = g;
    }
    return m;
  }

  // Lower bound on the grades of the series this character represents. For
  // a truncated character with nothing stored the true support lies above C.
  std::optional<Rational> support_lower_bound() const {
    if (auto m = min_grade()) return m;
    if (cutoff_) return cutoff_;
    return std::nullopt;
  }

  FormalCharacter truncated(const Rational& c) const {
    if (!grading_) throw Error(ErrorKind::MissingGrading, "cannot truncate an ungraded character");
    Rational cut = cutoff_ ? std::min(*cutoff_, c) : c;
    FormalCharacter out(grading_, cut);
    for (const auto& [w, v] : terms_) out.add(w, v);
    return out;
  }

  FormalCharacter with_grading(const Grading& g) const {
    if (grading_ && *grading_ != g) throw Error(ErrorKind::GradingMismatch, "character already graded differently");
    FormalCharacter out = *this;
    out.grading_ = g;
    return out;
  }

  FormalCharacter scaled(Coeff s) const {
    FormalCharacter out(grading_, cutoff_);
    for (const auto& [w, v] : terms_) out.add(w, checked_mul(v, s));
    return out;
  }

  FormalCharacter shifted(const Weight& by) const {
    std::optional<Rational> cut;
    if (cutoff_) cut = *cutoff_ + grading_->grade(by);
    FormalCharacter out(grading_, cut);
    for (const auto& [w, v] : terms_) out.add(w + by, v);
    return out;
  }

  // Sorted by grade, then lexicographically; the canonical serialization order.
  std::vector<std::pair<Weight, Coeff>> canonical_terms() const {
    std::vector<std::pair<Weight, Coeff>> out(terms_.begin(), terms_.end());
    if (grading_) {
      std::stable_sort(out.begin(), out.end(), [this](const auto& a, const auto& b) {
        return grading_->grade(a.first) < grading_->grade(b.first);
      });
    }
    return out;
  }

 private:
  std::optional<Grading> grading_;
  std::optional<Rational> cutoff_;
  Terms terms_;
};

namespace detail {

inline std::optional<Grading> common_grading(const FormalCharacter& a, const FormalCharacter& b) {
  if (a.grading() && b.grading() && *a.grading() != *b.grading()) {
    throw Error(ErrorKind::GradingMismatch, "characters graded by different reference weights");
  }
  return a.grading() ? a.grading() : b.grading();
}

inline std::optional<Rational> min_cutoff(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace detail

inline FormalCharacter char_add(const FormalCharacter& a, const FormalCharacter& b) {
  auto grading = detail::common_grading(a, b);
  FormalCharacter out(grading, detail::min_cutoff(a.cutoff(), b.cutoff()));
  for (const auto& [w, c] : a.terms()) out.add(w, c);
  for (const auto& [w, c] : b.terms()) out.add(w, c);
  return out;
}

// Convolution. If a is known up to C_a with support >= m_a (and likewise for
// b), every product term of grade <= min(C_a + m_b, C_b + m_a) comes from
// stored terms only, so that is the sound cutoff of the result.
inline FormalCharacter char_mul(const FormalCharacter& a, const FormalCharacter& b) {
  auto grading = detail::common_grading(a, b);
  std::optional<Rational> cut;
  if (!a.is_finite() || !b.is_finite()) {
    if (a.is_finite() && a.empty()) return FormalCharacter(grading);
    if (b.is_finite() && b.empty()) return FormalCharacter(grading);
    FormalCharacter ga = a.grading() ? a : a.with_grading(*grading);
    FormalCharacter gb = b.grading() ? b : b.with_grading(*grading);
    auto lb_a = ga.support_lower_bound();
    auto lb_b = gb.support_lower_bound();
    if (a.cutoff()) cut = *a.cutoff() + *lb_b;
    if (b.cutoff()) cut = detail::min_cutoff(cut, *b.cutoff() + *lb_a);
  }
  FormalCharacter out(grading, cut);
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) out.add(wa + wb, checked_mul(ca, cb));
  return out;
}

// [1 - t^a]^{-1}_lambda truncated at grade C:
//   sum_{k>=0} t^{k a}                 if (lambda, a) > 0
//   -t^{-a} sum_{k>=0} t^{-k a}        if (lambda, a) < 0
inline FormalCharacter polarized_inverse(const Weight& alpha, const Grading& grading, const Rational& cutoff) {
  Rational g = grading.grade(alpha);
  if (g == 0) throw Error(ErrorKind::SingularPairing, "(lambda, " + alpha.to_string() + ") = 0");
  if (cutoff < 0) throw Error(ErrorKind::CutoffTooSmall, "polarized inverse needs a cutoff >= 0");
  FormalCharacter out(grading, cutoff);
  if (g > 0) {
    Weight term(alpha.rank());
    for (Rational grade = 0; grade <= cutoff; grade += g, term += alpha) out.add(term, 1);
  } else {
    Weight term = -alpha;
    for (Rational grade = -g; grade <= cutoff; grade -= g, term -= alpha) out.add(term, -1);
  }
  return out;
}

// prod_{a in A} [1 - t^a]^{-1}_lambda truncated at grade C, by iterated
// multiplication of the individual polarized inverses.
inline FormalCharacter polarized_inverse_product(const std::vector<Weight>& roots, const Grading& grading,
                                                 const Rational& cutoff) {
  if (cutoff < 0) throw Error(ErrorKind::CutoffTooSmall, "polarized product needs a cutoff >= 0");
  FormalCharacter acc = FormalCharacter::monomial(Weight(grading.reference.rank()), 1, grading);
  for (const auto& a : roots) acc = char_mul(acc, polarized_inverse(a, grading, cutoff));
  return acc.truncated(cutoff);
}

// The data of the closed form (-1)^r t^{-gamma} sum P_{A+}(mu) t^mu.
struct Polarization {
  std::vector<Weight> polarized;  // A+
  Weight gamma;                   // sum of a with (lambda, a) < 0
  std::size_t r = 0;              // number of such a
};

inline Polarization polarize(const std::vector<Weight>& roots, const Grading& grading) {
  Polarization p{{}, Weight(grading.reference.rank()), 0};
  for (const auto& a : roots) {
    Rational g = grading.grade(a);
    if (g == 0) throw Error(ErrorKind::SingularPairing, "(lambda, " + a.to_string() + ") = 0");
    if (g > 0) {
      p.polarized.push_back(a);
    } else {
      p.polarized.push_back(-a);
      p.gamma += a;
      ++p.r;
    }
  }
  return p;
}

}  // namespace dsbranch
