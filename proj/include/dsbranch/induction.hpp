#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dsbranch/characters.hpp"
#include "dsbranch/error.hpp"
#include "dsbranch/rational.hpp"
#include "dsbranch/root_system.hpp"

namespace dsbranch {

// Truncated element of R^{-infty}(K): multiplicities indexed by dominant
// highest weights. A cutoff C means complete for every mu with
// (mu + rho_c, lambda) <= C.
struct KCharacter {
  std::map<Weight, Coeff> terms;
  std::optional<Grading> grading;
  Weight rho_c;
  std::optional<Rational> cutoff;

  Coeff multiplicity(const Weight& mu) const {
    auto it = terms.find(mu);
    return it == terms.end() ? 0 : it->second;
  }

  Rational grade(const Weight& mu) const {
    if (!grading) throw Error(ErrorKind::MissingGrading, "K-character is ungraded");
    return grading->grade(mu + rho_c);
  }

  void add(const Weight& mu, Coeff c) {
    if (c == 0) return;
    auto [it, inserted] = terms.try_emplace(mu, c);
    if (!inserted) {
      it->second = checked_add(it->second, c);
      if (it->second == 0) terms.erase(it);
    }
  }

  std::vector<std::pair<Weight, Coeff>> canonical_terms() const {
    std::vector<std::pair<Weight, Coeff>> out(terms.begin(), terms.end());
    if (grading) {
      std::stable_sort(out.begin(), out.end(),
                       [this](const auto& a, const auto& b) { return grade(a.first) < grade(b.first); });
    }
    return out;
  }
};

inline Weight affine_weyl_action(const WeylElement& w, const Weight& mu, const Weight& rho_c) {
  return w.apply(mu + rho_c) - rho_c;
}

struct HolTerm {
  Weight highest_weight;
  int sign = 1;
  friend bool operator==(const HolTerm& a, const HolTerm& b) {
    return a.sign == b.sign && a.highest_weight == b.highest_weight;
  }
};

// Hol(t^mu): nullopt when mu + rho_c is singular; otherwise the unique
// w(mu + rho_c) - rho_c that is dominant, with sign (-1)^w.
inline std::optional<HolTerm> hol_monomial(const CompactSystem& k, const Weight& mu) {
  Weight shifted = mu + k.rho_c;
  for (const auto& c : k.positive_covectors)
    if (dot(c, shifted) == 0) return std::nullopt;
  for (const auto& w : k.weyl) {
    Weight image = w.apply(shifted);
    if (k.is_strictly_dominant(image)) return HolTerm{image - k.rho_c, w.sign};
  }
  // Unreachable for a valid W: every regular W-orbit meets the open chamber.
  throw Error(ErrorKind::ReflectionAxiomViolation, "no dominant representative for " + mu.to_string());
}

// Hol applied termwise. An input truncated at grade C determines every
// dominant mu with (mu + rho_c, lambda) <= C + (rho_c, lambda): the
// contributors w o mu all have grade <= (mu + rho_c, lambda) - (rho_c, lambda).
inline KCharacter hol_character(const CompactSystem& k, const FormalCharacter& chi) {
  KCharacter out{{}, chi.grading(), k.rho_c, std::nullopt};
  if (chi.cutoff()) {
    if (!chi.grading()) throw Error(ErrorKind::MissingGrading, "truncated input has no grading");
    if (!k.is_strictly_dominant(chi.grading()->reference)) {
      throw Error(ErrorKind::NotDominant, "grading reference " + chi.grading()->reference.to_string() +
                                              " is not strictly dominant for K");
    }
    out.cutoff = *chi.cutoff() + chi.grading()->grade(k.rho_c);
  }
  for (const auto& [mu, c] : chi.terms()) {
    auto h = hol_monomial(k, mu);
    if (!h) continue;
    if (out.cutoff && out.grade(h->highest_weight) > *out.cutoff) continue;
    out.add(h->highest_weight, checked_mul(c, h->sign));
  }
  return out;
}

}  // namespace dsbranch
