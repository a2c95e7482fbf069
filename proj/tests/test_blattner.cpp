#include <gtest/gtest.h>

#include <random>

#include "dsbranch/blattner.hpp"
#include "test_support.hpp"

using namespace dsbranch;
using namespace dsbranch::testing;

namespace {

Error capture(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected dsbranch::Error";
  return Error(ErrorKind::ParseError, "none");
}

Rational lowest_grade(const HCParameter& p) { return p.grading.grade(p.mu_lambda() + p.compact.rho_c); }

}  // namespace

TEST(BlattnerMultiplicity, Su11Ladder) {
  auto p = catalog_param("su11", W({3}));
  EXPECT_EQ(p.mu_lambda(), W({4}));
  for (long n = -10; n <= 40; ++n) {
    Coeff expected = (n >= 4 && n % 2 == 0) ? 1 : 0;
    EXPECT_EQ(blattner_multiplicity(p, W({n})), expected) << n;
    EXPECT_EQ(blattner_by_enumeration(p, W({n})), expected) << n;
  }
}

TEST(BlattnerMultiplicity, Su11AntiholomorphicLadder) {
  auto p = catalog_param("su11", W({-3}));
  EXPECT_EQ(p.mu_lambda(), W({-4}));
  for (long n = -40; n <= 10; ++n) EXPECT_EQ(blattner_multiplicity(p, W({n})), (n <= -4 && n % 2 == 0) ? 1 : 0);
}

TEST(BlattnerMultiplicity, MatchesEnumerationOracle) {
  for (const auto& cp : catalog_params()) {
    auto table = branching_table(cp.param, lowest_grade(cp.param) + 14);
    for (const auto& mu : table_candidates(cp.param, lowest_grade(cp.param) + 14))
      EXPECT_EQ(table.multiplicity(mu), blattner_by_enumeration(cp.param, mu)) << cp.group << " " << mu;
  }
}

TEST(BlattnerMultiplicity, ZeroBelowLowestGrade) {
  std::mt19937 rng(61);
  for (const auto& cp : catalog_params()) {
    const auto& p = cp.param;
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 30; ++trial) {
      auto mu = random_integral_weight(rng, p.lambda.rank(), 10);
      if (!p.compact.is_dominant(mu) || p.grading.grade(mu + p.compact.rho_c) >= lowest_grade(p)) continue;
      ++checked;
      EXPECT_EQ(blattner_multiplicity(p, mu), 0) << cp.group << " " << mu;
    }
  }
}

TEST(BlattnerMultiplicity, InputErrors) {
  auto p = catalog_param("su21", W({1, 1}));
  EXPECT_EQ(capture([&] { blattner_multiplicity(p, W({-1, 0})); }).kind(), ErrorKind::NotDominant);
  EXPECT_EQ(capture([&] { blattner_multiplicity(p, Weight({Rational(1, 2), Rational(0)})); }).kind(),
            ErrorKind::NotIntegral);
}

TEST(BlattnerMultiplicity, LowestKTypeHasMultiplicityOne) {
  for (const auto& cp : catalog_params()) {
    EXPECT_TRUE(cp.param.mu_lambda().is_integral());
    EXPECT_TRUE(cp.param.compact.is_dominant(cp.param.mu_lambda()));
    EXPECT_EQ(blattner_multiplicity(cp.param, cp.param.mu_lambda()), 1) << cp.group;
  }
}

TEST(BranchingTable, Su11LadderToGrade30) {
  auto p = catalog_param("su11", W({3}));
  auto t = branching_table(p, Rational(30));
  EXPECT_EQ(t.entries, (std::map<Weight, Coeff>{{W({4}), 1}, {W({6}), 1}, {W({8}), 1}, {W({10}), 1}}));
  EXPECT_EQ(t.r, 1u);
}

TEST(BranchingTable, CutoffTooSmall) {
  auto p = catalog_param("su11", W({3}));
  EXPECT_EQ(capture([&] { branching_table(p, Rational(11)); }).kind(), ErrorKind::CutoffTooSmall);
  EXPECT_EQ(capture([&] { restriction_via_hol(p, Rational(11)); }).kind(), ErrorKind::CutoffTooSmall);
  EXPECT_EQ(branching_table(p, Rational(12)).entries.size(), 1u);
}

TEST(BranchingTable, EntriesArePositiveAndWithinCutoff) {
  for (const auto& cp : catalog_params()) {
    auto t = branching_table(cp.param, Rational(40));
    EXPECT_FALSE(t.entries.empty());
    for (const auto& [mu, m] : t.entries) {
      EXPECT_GT(m, 0) << cp.group << " " << mu;
      EXPECT_LE(t.grade(mu), Rational(40));
      EXPECT_TRUE(cp.param.compact.is_dominant(mu));
    }
  }
}

TEST(BranchingTable, Su21HasNoSpuriousWeylSymmetry) {
  auto p = catalog_param("su21", W({1, 1}));
  auto t = branching_table(p, Rational(20));
  ASSERT_GT(t.entries.size(), 1u);
  for (const auto& w : p.compact.weyl) {
    if (w.sign == 1) continue;
    bool invariant = true;
    for (const auto& [mu, m] : t.entries)
      if (t.multiplicity(affine_weyl_action(w, mu, p.compact.rho_c)) != m) invariant = false;
    EXPECT_FALSE(invariant);
  }
}

TEST(BranchingTable, StableUnderLargerCutoff) {
  for (const auto& cp : catalog_params()) {
    auto small = branching_table(cp.param, Rational(20));
    auto large = branching_table(cp.param, Rational(40));
    for (const auto& [mu, m] : large.entries)
      if (large.grade(mu) <= 20) {
        EXPECT_EQ(small.multiplicity(mu), m) << cp.group << " " << mu;
      }
    for (const auto& [mu, m] : small.entries) EXPECT_EQ(large.multiplicity(mu), m);
  }
}

TEST(BranchingTable, IndependentOfJobCount) {
  for (const auto& cp : catalog_params()) {
    auto serial = branching_table(cp.param, Rational(40));
    for (unsigned jobs : {2u, 4u, 7u}) {
      auto parallel = branching_table(cp.param, Rational(40), {jobs, nullptr});
      EXPECT_EQ(parallel.entries, serial.entries);
      EXPECT_EQ(parallel.scanned, serial.scanned);
    }
  }
}

TEST(BranchingTable, CandidatesCoverEveryDominantWeightInABox) {
  for (const auto& cp : catalog_params()) {
    const auto& p = cp.param;
    Rational cutoff = lowest_grade(p) + 10;
    auto candidates = table_candidates(p, cutoff);
    std::set<Weight> listed(candidates.begin(), candidates.end());
    auto t = branching_table(p, cutoff);
    int range = 14;
    std::vector<long> x(p.lambda.rank(), -range);
    while (true) {
      Weight mu(std::vector<Rational>(x.begin(), x.end()));
      if (p.compact.is_dominant(mu) && t.grade(mu) <= cutoff) {
        Coeff m = blattner_by_enumeration(p, mu);
        if (m != 0) {
          EXPECT_TRUE(listed.count(mu)) << cp.group << " " << mu;
        }
        EXPECT_EQ(t.multiplicity(mu), m) << cp.group << " " << mu;
      }
      std::size_t i = 0;
      while (i < x.size() && x[i] == range) x[i++] = -range;
      if (i == x.size()) break;
      ++x[i];
    }
  }
}

TEST(RestrictionViaHol, MatchesBranchingTable) {
  for (const auto& cp : catalog_params()) {
    for (long c : {20L, 40L}) {
      Rational cutoff(c);
      if (cutoff < lowest_grade(cp.param)) continue;
      EXPECT_EQ(restriction_via_hol(cp.param, cutoff).entries, branching_table(cp.param, cutoff).entries)
          << cp.group << " " << cp.param.lambda << " C=" << c;
    }
  }
}

TEST(RRCharacter, LineBundleGivesSignedTable) {
  for (const auto& cp : catalog_params()) {
    const auto& p = cp.param;
    EXPECT_EQ(p.lambda - p.positive.rho + Rational(2) * p.positive.rho_n, p.mu_lambda());
    auto rr = rr_character(p, line_bundle_fiber(p), Rational(20));
    EXPECT_EQ(rr.r, p.positive.r_n_plus.size());
    EXPECT_EQ(2 * rr.r, rr.dim_g_over_k);
    EXPECT_EQ(rr.sign, (rr.r % 2) ? -1 : 1);
    EXPECT_EQ(rr.character.terms, branching_table(p, Rational(20)).entries) << cp.group;
  }
}

TEST(RRCharacter, Su11SignIsMinusOne) {
  auto p = catalog_param("su11", W({3}));
  auto rr = rr_character(p, line_bundle_fiber(p), Rational(30));
  EXPECT_EQ(rr.sign, -1);
  EXPECT_EQ(rr.character.terms, branching_table(p, Rational(30)).entries);
}

TEST(RRCharacter, ZeroFiberGivesEmptyTable) {
  auto p = catalog_param("sp4r", W({2, 1}));
  auto rr = rr_character(p, FormalCharacter(p.grading), Rational(20));
  EXPECT_TRUE(rr.character.terms.empty());
  EXPECT_EQ(rr.sign, -1);  // r = 3
}

TEST(VerifyIdentities, PassOnCatalog) {
  for (const auto& cp : catalog_params()) {
    auto report = verify_identities(cp.param, Rational(20));
    EXPECT_TRUE(report.pass) << cp.group << " " << cp.param.lambda;
    EXPECT_FALSE(report.first_mismatch);
    ASSERT_EQ(report.checks.size(), 4u);
    for (const auto& c : report.checks) EXPECT_TRUE(c.pass) << c.name;
  }
}

TEST(VerifyIdentities, InjectedFaultIsReported) {
  auto p = catalog_param("sp4r", W({2, 1}));
  auto partitions = make_partition_table(p);
  partitions->inject_fault(W({0, 0}), 1);
  auto report = verify_identities(p, Rational(20), {1, partitions.get()});
  EXPECT_FALSE(report.pass);
  ASSERT_TRUE(report.first_mismatch);
  EXPECT_EQ(report.first_mismatch->check, "blattner_vs_hol");
  EXPECT_EQ(report.first_mismatch->weight, p.mu_lambda());
  EXPECT_EQ(report.first_mismatch->expected, 2);
  EXPECT_EQ(report.first_mismatch->actual, 1);
}
