#pragma once

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "dsbranch/characters.hpp"
#include "dsbranch/error.hpp"
#include "dsbranch/induction.hpp"
#include "dsbranch/partition.hpp"
#include "dsbranch/rational.hpp"
#include "dsbranch/root_system.hpp"

namespace dsbranch {

// K-type multiplicities m_mu(lambda) of a discrete series, complete for all
// dominant mu with (mu + rho_c, lambda) <= cutoff. Only nonzero entries are
// stored.
struct BranchingTable {
  HCParameter param;
  Weight mu_lambda;
  Rational cutoff;
  std::map<Weight, Coeff> entries;
  std::size_t r = 0;
  std::size_t scanned = 0;

  Rational grade(const Weight& mu) const { return param.grading.grade(mu + param.compact.rho_c); }

  Coeff multiplicity(const Weight& mu) const {
    auto it = entries.find(mu);
    return it == entries.end() ? 0 : it->second;
  }

  std::vector<std::pair<Weight, Coeff>> canonical_entries() const {
    std::vector<std::pair<Weight, Coeff>> out(entries.begin(), entries.end());
    std::stable_sort(out.begin(), out.end(),
                     [this](const auto& a, const auto& b) { return grade(a.first) < grade(b.first); });
    return out;
  }
};

inline std::unique_ptr<PartitionTable> make_partition_table(const HCParameter& param) {
  return std::make_unique<PartitionTable>(param.positive.r_n_plus, param.grading);
}

// m_mu(lambda) = sum_w (-1)^w P(w(mu + rho_c) - (mu_lambda + rho_c)).
inline Coeff blattner_multiplicity(const HCParameter& param, const Weight& mu, const PartitionTable& partitions) {
  if (mu.rank() != param.lambda.rank()) throw Error(ErrorKind::DimensionMismatch, "weight has wrong length");
  if (!mu.is_integral()) throw Error(ErrorKind::NotIntegral, mu.to_string() + " is not integral");
  if (!param.compact.is_dominant(mu)) throw Error(ErrorKind::NotDominant, mu.to_string() + " is not dominant");
  Weight shifted = mu + param.compact.rho_c;
  Weight base = param.mu_lambda() + param.compact.rho_c;
  Coeff total = 0;
  for (const auto& w : param.compact.weyl) {
    Coeff p = partitions.count(w.apply(shifted) - base);
    total = checked_add(total, w.sign > 0 ? p : -p);
  }
  return total;
}

inline Coeff blattner_multiplicity(const HCParameter& param, const Weight& mu) {
  return blattner_multiplicity(param, mu, *make_partition_table(param));
}

inline void require_cutoff(const HCParameter& param, const Rational& cutoff) {
  Rational floor_grade = param.grading.grade(param.mu_lambda() + param.compact.rho_c);
  if (cutoff < floor_grade) {
    throw Error(ErrorKind::CutoffTooSmall, "cutoff " + cutoff.get_str() + " is below the lowest K-type grade " +
                                               floor_grade.get_str());
  }
}

namespace detail {

// Smallest integer x with (x - c)^2 <= t, and the largest; t >= 0.
inline std::pair<Rational, Rational> integer_window(const Rational& c, const Rational& t) {
  double radius = std::sqrt(t.get_d());
  Rational lo = floor_of(Rational(c.get_d() - radius)) - 2;
  Rational hi = ceil_of(Rational(c.get_d() + radius)) + 2;
  auto fits = [&](const Rational& x) { return (x - c) * (x - c) <= t; };
  while (lo <= hi && !fits(lo)) lo += 1;
  while (hi >= lo && !fits(hi)) hi -= 1;
  return {lo, hi};
}

}  // namespace detail

// Every dominant integral mu with (mu + rho_c, lambda) <= cutoff whose
// multiplicity can be nonzero. A nonzero m_mu needs some w with
// w(mu + rho_c) in the polytope P = (mu_lambda + rho_c + cone(R_n+)) cut at
// grade <= cutoff, so |mu + rho_c| is bounded by the largest vertex norm of P.
// Integral points of that ball come from a Fincke-Pohst walk on the LDL^T
// factors of the gram matrix.
inline std::vector<Weight> table_candidates(const HCParameter& param, const Rational& cutoff) {
  require_cutoff(param, cutoff);
  const auto& datum = param.datum();
  const auto& grading = param.grading;
  const Weight& rho_c = param.compact.rho_c;
  Weight apex = param.mu_lambda() + rho_c;
  Rational room = cutoff - grading.grade(apex);
  Rational radius2 = datum.pair(apex, apex);
  for (const auto& a : param.positive.r_n_plus) {
    Weight v = apex + (room / grading.grade(a)) * a;
    radius2 = std::max(radius2, datum.pair(v, v));
  }

  auto ldl = *ldl_positive_definite(datum.gram());
  std::size_t n = datum.rank();
  std::vector<Weight> out;
  std::vector<Rational> y(n);  // y = x + rho_c
  auto walk = [&](auto&& self, std::size_t level, const Rational& budget) -> void {
    std::size_t i = level - 1;
    Rational s = 0;
    for (std::size_t j = i + 1; j < n; ++j) s += ldl.lower[j][i] * y[j];
    Rational centre = -rho_c[i] - s;
    auto [lo, hi] = detail::integer_window(centre, budget / ldl.diag[i]);
    for (Rational x = lo; x <= hi; x += 1) {
      y[i] = x + rho_c[i];
      Rational z = y[i] + s;
      Rational rest = budget - ldl.diag[i] * z * z;
      if (i == 0) {
        std::vector<Rational> coords(n);
        for (std::size_t j = 0; j < n; ++j) coords[j] = y[j] - rho_c[j];
        Weight mu(std::move(coords));
        if (param.compact.is_dominant(mu) && grading.grade(mu + rho_c) <= cutoff) {
          out.push_back(std::move(mu));
        }
      } else {
        self(self, i, rest);
      }
    }
  };
  walk(walk, n, radius2);
  std::sort(out.begin(), out.end());
  return out;
}

struct TableOptions {
  unsigned jobs = 1;
  const PartitionTable* partitions = nullptr;
};

// Direct Blattner sums over the candidate slab.
inline BranchingTable branching_table(const HCParameter& param, const Rational& cutoff,
                                      const TableOptions& options = {}) {
  auto candidates = table_candidates(param, cutoff);
  std::unique_ptr<PartitionTable> owned;
  const PartitionTable* partitions = options.partitions;
  if (!partitions) {
    owned = make_partition_table(param);
    partitions = owned.get();
  }

  std::vector<Coeff> values(candidates.size(), 0);
  unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(candidates.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < candidates.size(); ++i)
      values[i] = blattner_multiplicity(param, candidates[i], *partitions);
  } else {
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < jobs; ++t) {
      workers.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < candidates.size(); i += jobs)
            values[i] = blattner_multiplicity(param, candidates[i], *partitions);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  BranchingTable table{param, param.mu_lambda(), cutoff, {}, param.r(), candidates.size()};
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (values[i] != 0) table.entries.emplace(candidates[i], values[i]);
  return table;
}

// Hol(t^{mu_lambda} [prod_{R_n+} (1 - t^a)]^{-1}_lambda), with the series cut
// just high enough that the induced K-character is complete to `cutoff`.
inline BranchingTable restriction_via_hol(const HCParameter& param, const Rational& cutoff) {
  require_cutoff(param, cutoff);
  const auto& grading = param.grading;
  Weight mu_lambda = param.mu_lambda();
  Rational series_cut = cutoff - grading.grade(mu_lambda + param.compact.rho_c);
  auto series = polarized_inverse_product(param.positive.r_n_plus, grading, series_cut);
  auto chi = char_mul(FormalCharacter::monomial(mu_lambda, 1, grading), series);
  auto k = hol_character(param.compact, chi);

  BranchingTable table{param, mu_lambda, cutoff, {}, param.r(), chi.size()};
  for (const auto& [mu, c] : k.terms)
    if (table.grade(mu) <= cutoff) table.entries.emplace(mu, c);
  return table;
}

struct RRCharacter {
  int sign = 1;
  KCharacter character;
  std::size_t r = 0;
  std::size_t dim_g_over_k = 0;
};

// (-1)^r Hol(V_lambda t^{2 rho_n} [prod_{R_n+} (1 - t^a)]^{-1}_lambda) for a
// finite fiber character V_lambda, complete to `cutoff`.
inline RRCharacter rr_character(const HCParameter& param, const FormalCharacter& fiber, const Rational& cutoff) {
  if (!fiber.is_finite()) throw Error(ErrorKind::CutoffTooSmall, "the fiber must be a finite character");
  const auto& grading = param.grading;
  RRCharacter out;
  out.r = param.r();
  out.dim_g_over_k = param.datum().noncompact_count();
  out.sign = (out.r % 2) ? -1 : 1;

  Weight two_rho_n = Rational(2) * param.positive.rho_n;
  auto prefix = char_mul(fiber.grading() ? fiber : fiber.with_grading(grading),
                         FormalCharacter::monomial(two_rho_n, 1, grading));
  if (prefix.empty()) {
    out.character = KCharacter{{}, grading, param.compact.rho_c, cutoff};
    return out;
  }
  Rational series_cut = cutoff - grading.grade(param.compact.rho_c) - *prefix.min_grade();
  if (series_cut < 0) {
    throw Error(ErrorKind::CutoffTooSmall, "cutoff " + cutoff.get_str() + " is below every fiber contribution");
  }
  auto series = polarized_inverse_product(param.positive.r_n_plus, grading, series_cut);
  auto k = hol_character(param.compact, char_mul(prefix, series));
  KCharacter trimmed{{}, grading, param.compact.rho_c, cutoff};
  for (const auto& [mu, c] : k.terms)
    if (trimmed.grade(mu) <= cutoff) trimmed.add(mu, c);
  out.character = std::move(trimmed);
  return out;
}

// The line bundle fiber t^{lambda - rho}.
inline FormalCharacter line_bundle_fiber(const HCParameter& param) {
  return FormalCharacter::monomial(param.lambda - param.positive.rho, 1, param.grading);
}

struct Mismatch {
  std::string check;
  Weight weight;
  Coeff expected = 0;
  Coeff actual = 0;
};

struct IdentityCheck {
  std::string name;
  bool pass = true;
  std::size_t compared = 0;
  std::optional<Mismatch> mismatch;
};

struct VerifyReport {
  std::vector<IdentityCheck> checks;
  bool pass = true;
  std::optional<Mismatch> first_mismatch;
  BranchingTable table;
};

namespace detail {

template <class Map, class GradeFn>
IdentityCheck compare_maps(std::string name, const Map& expected, const Map& actual, GradeFn grade) {
  IdentityCheck check{std::move(name), true, 0, std::nullopt};
  std::set<Weight> keys;
  for (const auto& kv : expected) keys.insert(kv.first);
  for (const auto& kv : actual) keys.insert(kv.first);
  std::vector<Weight> ordered(keys.begin(), keys.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [&](const Weight& a, const Weight& b) { return grade(a) < grade(b); });
  check.compared = ordered.size();
  for (const auto& w : ordered) {
    auto e = expected.find(w);
    auto a = actual.find(w);
    Coeff ev = e == expected.end() ? 0 : e->second;
    Coeff av = a == actual.end() ? 0 : a->second;
    if (ev != av) {
      check.pass = false;
      check.mismatch = Mismatch{check.name, w, ev, av};
      break;
    }
  }
  return check;
}

}  // namespace detail

// Runs the executable identities and reports instead of throwing:
//   blattner_vs_hol     direct Blattner sums == Hol of the polarized series
//   rr_sign_and_table   RR character of t^{lambda-rho} == ((-1)^{dim(G/K)/2}, same table)
//   closed_form_*       iterated polarized product == (-1)^r t^{-gamma} sum P_{A+} t^mu
inline VerifyReport verify_identities(const HCParameter& param, const Rational& cutoff,
                                      const TableOptions& options = {}) {
  VerifyReport report{{}, true, std::nullopt, branching_table(param, cutoff, options)};
  const auto& table = report.table;
  auto table_grade = [&](const Weight& mu) { return table.grade(mu); };

  auto via_hol = restriction_via_hol(param, cutoff);
  report.checks.push_back(detail::compare_maps("blattner_vs_hol", table.entries, via_hol.entries, table_grade));

  auto rr = rr_character(param, line_bundle_fiber(param), cutoff);
  auto rr_check = detail::compare_maps("rr_sign_and_table", table.entries, rr.character.terms, table_grade);
  int expected_sign = ((rr.dim_g_over_k / 2) % 2) ? -1 : 1;
  if (rr_check.pass && (rr.sign != expected_sign || 2 * rr.r != rr.dim_g_over_k)) {
    rr_check.pass = false;
    rr_check.mismatch = Mismatch{rr_check.name, param.lambda, expected_sign, rr.sign};
  }
  report.checks.push_back(std::move(rr_check));

  const auto& grading = param.grading;
  auto char_grade = [&](const Weight& mu) { return grading.grade(mu); };
  std::vector<Weight> all_noncompact;
  for (const auto& r : param.datum().roots())
    if (!r.compact) all_noncompact.push_back(r.weight);
  for (const auto& [name, roots] : {std::pair{std::string("closed_form_positive"), param.positive.r_n_plus},
                                    std::pair{std::string("closed_form_mixed"), all_noncompact}}) {
    auto iterated = polarized_inverse_product(roots, grading, cutoff);
    auto closed = polarized_product_closed_form(roots, grading, cutoff);
    report.checks.push_back(detail::compare_maps(name, closed.terms(), iterated.terms(), char_grade));
  }

  for (const auto& c : report.checks) {
    if (!c.pass) {
      report.pass = false;
      if (!report.first_mismatch) report.first_mismatch = c.mismatch;
    }
  }
  return report;
}

}  // namespace dsbranch
