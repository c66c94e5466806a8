#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "brute.hpp"
#include "nqc/oracle.hpp"

namespace {

using nqc::Composition;

TEST(Enumerate, KnownCounts) {
  const std::vector<std::uint64_t> counts{1, 0, 0, 2, 10, 4, 40, 92, 352, 724};
  for (int n = 1; n <= 10; ++n) {
    EXPECT_EQ(nqc::enumerate_solutions(n, false).count, counts[static_cast<std::size_t>(n - 1)]) << n;
  }
}

TEST(Enumerate, ListIsCanonicalAndMatchesPermutationFilter) {
  for (int n = 1; n <= 8; ++n) {
    const auto r = nqc::enumerate_solutions(n, true);
    const auto ref = brute::solutions(n);  // lexicographic by construction
    ASSERT_EQ(r.solutions.size(), ref.size());
    for (std::size_t t = 0; t < ref.size(); ++t) {
      ASSERT_EQ(r.solutions[t], Composition(n, ref[t]));
    }
  }
}

TEST(Enumerate, ComplementClosureAndEvenCounts) {
  for (int n = 2; n <= 10; ++n) {
    const auto r = nqc::enumerate_solutions(n, true);
    EXPECT_EQ(r.count % 2, 0U);
    for (const auto& s : r.solutions) {
      EXPECT_TRUE(std::binary_search(r.solutions.begin(), r.solutions.end(), nqc::complement(s),
                                     [](const Composition& a, const Composition& b) {
                                       return std::lexicographical_compare(
                                           a.columns().begin(), a.columns().end(),
                                           b.columns().begin(), b.columns().end());
                                     }));
    }
  }
}

TEST(Enumerate, GuardRefusesLargeBoards) {
  EXPECT_THROW(nqc::enumerate_solutions(15, false), nqc::OracleRefusal);
  EXPECT_THROW(nqc::enumerate_solutions(0, false), nqc::DomainError);
}

TEST(Completable, Examples) {
  EXPECT_FALSE(nqc::exact_completable(Composition(4, {1, 0, 0, 0})));
  EXPECT_TRUE(nqc::exact_completable(Composition(4)));
  EXPECT_TRUE(nqc::exact_completable(Composition(8, {1, 5, 8, 6, 3, 7, 2, 4})));
  EXPECT_THROW(nqc::exact_completable(Composition(4, {1, 2, 0, 0})), nqc::ContractViolation);
}

TEST(Completable, AgreesWithPermutationFilter) {
  std::mt19937_64 g(101);
  for (int n = 1; n <= 8; ++n) {
    const auto sols = brute::solutions(n);
    for (int t = 0; t < 1500; ++t) {
      const brute::Q q = brute::random_consistent(n, g, static_cast<int>(t % (n + 2)));
      const Composition c(n, q);
      const auto found = nqc::find_completion(c);
      ASSERT_EQ(found.has_value(), brute::completable(q, sols));
      if (found) {
        ASSERT_TRUE(found->full());
        ASSERT_NE(std::find(sols.begin(), sols.end(),
                            brute::Q(found->columns().begin(), found->columns().end())),
                  sols.end());
      }
    }
  }
}

TEST(Completable, GuardAllowsFewFreeRowsOnLargeBoards) {
  EXPECT_THROW(nqc::exact_completable(Composition(30)), nqc::OracleRefusal);
  // Explicit solution for even n with n mod 6 != 2: rows i take column 2i,
  // rows n/2 + i take 2i - 1.
  std::vector<int> q(30);
  for (int i = 1; i <= 15; ++i) {
    q[static_cast<std::size_t>(i - 1)] = 2 * i;
    q[static_cast<std::size_t>(i + 14)] = 2 * i - 1;
  }
  Composition c(30, q);
  ASSERT_TRUE(brute::consistent(q));
  c.set(30, 0);
  EXPECT_TRUE(nqc::exact_completable(c));
  c.set(1, 0);
  c.set(2, 0);
  EXPECT_TRUE(nqc::exact_completable(c));
}

TEST(Label, Examples) {
  EXPECT_TRUE(nqc::label_sample({}).empty());
  const std::vector<Composition> corners{Composition(4, {1, 0, 0, 0}), Composition(4, {4, 0, 0, 0}),
                                         Composition(4, {0, 0, 0, 1}), Composition(4, {0, 0, 0, 4})};
  for (const auto& l : nqc::label_sample(corners)) EXPECT_EQ(l.label, nqc::Label::negative);
  const auto pos = nqc::label_sample({Composition(5, {1, 0, 5, 0, 0})});
  EXPECT_EQ(pos[0].label, nqc::Label::positive);
  EXPECT_STREQ(nqc::to_string(nqc::Label::positive), "positive");
}

}  // namespace
