#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "brute.hpp"
#include "nqc/bench.hpp"
#include "nqc/solver.hpp"

namespace {

using nqc::Composition;
using nqc::CompactBoard;
using nqc::ControlState;
using nqc::RowLoad;
using nqc::SeededRng;
using nqc::SolverConfig;
using nqc::Verdict;

Composition load(const std::string& name) {
  std::ifstream in(std::string(NQC_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return nqc::read_composition(ss.str());
}

void expect_extends(const Composition& input, const nqc::SolveOutcome& out) {
  ASSERT_EQ(out.verdict, Verdict::completed);
  ASSERT_TRUE(out.solution);
  const auto r = nqc::validate(*out.solution);
  ASSERT_TRUE(r.valid);
  ASSERT_EQ(r.tot_pos, input.size());
  for (int i = 1; i <= input.size(); ++i) {
    if (input[i] != 0) {
      ASSERT_EQ((*out.solution)[i], input[i]) << "row " << i;
    }
  }
}

TEST(BaseLevels, HandEvaluatedCubics) {
  EXPECT_EQ(nqc::base_levels(1000), (nqc::BaseLevels{804, 900}));
  EXPECT_EQ(nqc::base_levels(100), (nqc::BaseLevels{34, 55}));
  EXPECT_EQ(nqc::base_levels(50), (nqc::BaseLevels{8, 14}));
  EXPECT_EQ(nqc::base_levels(100000), (nqc::BaseLevels{97747, 99609}));
}

TEST(BaseLevels, ClampedIntoBoard) {
  for (int n = 1; n <= 5000; n += (n < 200 ? 1 : 37)) {
    const auto l = nqc::base_levels(n);
    ASSERT_GE(l.level2, 0);
    ASSERT_LE(l.level2, n);
    ASSERT_GE(l.level3, 0);
    ASSERT_LE(l.level3, n);
  }
  EXPECT_THROW(nqc::base_levels(0), nqc::DomainError);
}

TEST(EntryBlock, Examples) {
  EXPECT_EQ(nqc::entry_block(30, 0, nqc::base_levels(30)), 4);
  EXPECT_EQ(nqc::entry_block(30, 29, nqc::base_levels(30)), 4);
  const auto l = nqc::base_levels(1000);
  EXPECT_EQ(nqc::entry_block(1000, 0, l), 1);
  EXPECT_EQ(nqc::entry_block(1000, 803, l), 1);
  EXPECT_EQ(nqc::entry_block(1000, 804, l), 2);
  EXPECT_EQ(nqc::entry_block(1000, 950, l), 4);
  const auto l70 = nqc::base_levels(70);
  EXPECT_EQ(nqc::entry_block(70, l70.level3, l70), 4);
  EXPECT_EQ(nqc::entry_block(70, l70.level2, l70), 2);
  EXPECT_EQ(nqc::entry_block(70, 0, l70), 1);
}

TEST(Block2, CompactionNeedsAFreeRow) {
  EXPECT_THROW(nqc::block2_compact(ControlState::from(Composition(4, {2, 4, 1, 3}))),
               nqc::ContractViolation);
  const CompactBoard b = nqc::block2_compact(ControlState(5));
  EXPECT_EQ(b.size(), 5);
}

TEST(Block4, EmptyBoardRanking) {
  const auto prep = nqc::block4_prepare(ControlState(5));
  EXPECT_FALSE(prep.dead_branch);
  ASSERT_EQ(prep.ranked.size(), 5U);
  for (std::size_t t = 0; t < 5; ++t) {
    EXPECT_EQ(prep.ranked[t].free, 5);
    EXPECT_EQ(prep.ranked[t].row, static_cast<int>(t) + 1);
  }
}

TEST(Block4, DeadBranchMatchesBruteForce) {
  std::mt19937_64 g(71);
  int dead = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const int n = 5 + static_cast<int>(trial % 6);
    const brute::Q q = brute::random_consistent(n, g, n);
    if (std::count(q.begin(), q.end(), 0) == 0) continue;
    bool blocked = false;
    for (int i = 1; i <= n; ++i) blocked = blocked || (q[i - 1] == 0 && brute::free_in_row(q, i) == 0);
    const auto prep = nqc::block4_prepare(ControlState::from(Composition(n, q)));
    ASSERT_EQ(prep.dead_branch, blocked);
    dead += blocked ? 1 : 0;
  }
  EXPECT_GT(dead, 50);
}

std::vector<RowLoad> loads(std::initializer_list<std::pair<int, int>> rows) {
  std::vector<RowLoad> out;
  int slot = 0;
  for (const auto& [row, free] : rows) out.push_back({row, slot++, free});
  return out;
}

TEST(MinRisk, StepEightyNineIsForced) {
  const auto ranked = loads({{25, 1}, {12, 2}, {22, 2}, {82, 2}, {88, 2}, {7, 3}, {64, 3},
                             {3, 4}, {76, 4}, {91, 4}, {4, 5}, {96, 5}});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SeededRng rng(seed);
    EXPECT_EQ(nqc::min_risk_select(ranked, rng).row, 25);
  }
}

TEST(MinRisk, FiveWayTieUsesFirstThree) {
  const auto ranked = loads({{7, 2}, {12, 2}, {22, 2}, {82, 2}, {88, 2}, {3, 3}, {64, 3},
                             {76, 3}, {4, 4}, {91, 4}, {96, 4}});
  std::set<int> seen;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    SeededRng rng(seed);
    seen.insert(nqc::min_risk_select(ranked, rng).row);
  }
  EXPECT_EQ(seen, (std::set<int>{7, 12, 22}));
}

TEST(MinRisk, TwoWayTieAndEdges) {
  const auto two = loads({{5, 1}, {9, 1}, {2, 3}});
  std::set<int> seen;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SeededRng rng(seed);
    seen.insert(nqc::min_risk_select(two, rng).row);
  }
  EXPECT_EQ(seen, (std::set<int>{5, 9}));
  SeededRng rng(1);
  EXPECT_EQ(nqc::min_risk_select(loads({{40, 6}}), rng).row, 40);
  EXPECT_THROW(nqc::min_risk_select(std::vector<RowLoad>{}, rng), nqc::ContractViolation);
}

TEST(MinDamage, PicksBruteForceMinimum) {
  std::mt19937_64 g(73);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 6 + static_cast<int>(trial % 7);
    const brute::Q q = brute::random_consistent(n, g, n / 2);
    const CompactBoard b(ControlState::from(Composition(n, q)));
    for (int a = 0; a < b.size(); ++a) {
      if (b.free_in_row(a) == 0) {
        SeededRng rng(0);
        EXPECT_THROW(nqc::min_damage_select(b, a, rng), nqc::ContractViolation);
        continue;
      }
      const int i = b.row_origin(a);
      std::vector<int> minimal;  // compact columns at the minimum, ascending
      int best = -1;
      for (const int c : b.free_positions(a)) {
        const int d = brute::damage(q, i, b.col_origin(c));
        if (best < 0 || d < best) {
          best = d;
          minimal.clear();
        }
        if (d == best) minimal.push_back(c);
      }
      SeededRng rng(static_cast<std::uint64_t>(trial));
      const int chosen = nqc::min_damage_select(b, a, rng);
      if (minimal.size() == 1) {
        EXPECT_EQ(chosen, minimal[0]);
      } else {
        EXPECT_TRUE(chosen == minimal[0] || chosen == minimal[1]);
      }
    }
  }
}

TEST(Block5, ForcedChainCompletesWithoutRetries) {
  // Board whose free rows each keep exactly one free cell, all compatible.
  std::mt19937_64 g(79);
  const auto sols = brute::solutions(8);
  int found = 0;
  for (int trial = 0; trial < 4000 && found < 20; ++trial) {
    brute::Q q = sols[g() % sols.size()];
    for (int r = 0; r < 8; ++r) {
      if (g() % 3 == 0) q[static_cast<std::size_t>(r)] = 0;
    }
    bool forced = std::count(q.begin(), q.end(), 0) > 1;
    for (int i = 1; i <= 8 && forced; ++i) forced = q[i - 1] != 0 || brute::free_in_row(q, i) == 1;
    if (!forced) continue;
    ++found;
    CompactBoard b(ControlState::from(Composition(8, q)));
    nqc::SolveStats stats;
    SeededRng rng(1);
    const auto r = nqc::block5_run(b, SolverConfig{}, rng, stats);
    EXPECT_EQ(r.status, nqc::Block5Status::complete);
    EXPECT_EQ(stats.bt_count, 0);
    EXPECT_TRUE(nqc::validate(b.state().composition()).valid);
    EXPECT_TRUE(b.state().complete());
  }
  EXPECT_GT(found, 0);
}

TEST(Block5, BlockedRowIsRejected) {
  std::mt19937_64 g(97);
  for (int trial = 0; trial < 1000; ++trial) {
    CompactBoard b(ControlState::from(Composition(7, brute::random_consistent(7, g, 7))));
    if (b.complete() || b.blocked_rows() == 0) continue;
    nqc::SolveStats stats;
    SeededRng rng(1);
    EXPECT_THROW(nqc::block5_run(b, SolverConfig{}, rng, stats), nqc::ContractViolation);
    return;
  }
  FAIL() << "no blocked board sampled";
}

TEST(Block5, TableOneBoardCompletes) {
  const Composition c = load("endgame_step89.txt");
  ASSERT_EQ(c.size(), 100);
  ASSERT_EQ(c.placed(), 88);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto prep = nqc::block4_prepare(ControlState::from(c));
    ASSERT_FALSE(prep.dead_branch);
    nqc::SolveStats stats;
    SeededRng rng(seed);
    const auto r = nqc::block5_run(prep.board, SolverConfig{}, rng, stats);
    ASSERT_EQ(r.status, nqc::Block5Status::complete);
    nqc::SolveOutcome out{Verdict::completed, prep.board.state().composition(), stats};
    expect_extends(c, out);
  }
}

TEST(Solve, InvalidInputIsRejected) {
  EXPECT_THROW(nqc::solve(Composition(4, {1, 2, 0, 0}), SolverConfig{}), nqc::InvalidComposition);
  SolverConfig bad;
  bad.tot_sim_bound = 0;
  EXPECT_THROW(nqc::solve(Composition(4), bad), nqc::DomainError);
}

TEST(Solve, FullSolutionIsEchoed) {
  const Composition c(8, {1, 5, 8, 6, 3, 7, 2, 4});
  const auto out = nqc::solve(c, SolverConfig{});
  ASSERT_EQ(out.verdict, Verdict::completed);
  EXPECT_EQ(*out.solution, c);
  EXPECT_EQ(out.stats.bt_count, 0);
}

TEST(Solve, TinyBoards) {
  EXPECT_EQ(nqc::solve(Composition(1), SolverConfig{}).solution, Composition(1, {1}));
  EXPECT_EQ(nqc::solve(Composition(2), SolverConfig{}).verdict, Verdict::negative);
  EXPECT_EQ(nqc::solve(Composition(3), SolverConfig{}).verdict, Verdict::negative);
  EXPECT_EQ(nqc::solve(Composition(4, {1, 0, 0, 0}), SolverConfig{}).verdict, Verdict::negative);
  expect_extends(Composition(4), nqc::solve(Composition(4), SolverConfig{}));
  expect_extends(Composition(6, {0, 4, 0, 0, 0, 0}),
                 nqc::solve(Composition(6, {0, 4, 0, 0, 0, 0}), SolverConfig{}));
}

TEST(Solve, AgreesWithBruteForceOnSmallBoards) {
  std::mt19937_64 g(83);
  for (int n = 4; n <= 8; ++n) {
    const auto sols = brute::solutions(n);
    for (int trial = 0; trial < 400; ++trial) {
      const brute::Q q = brute::random_consistent(n, g, static_cast<int>(g() % static_cast<std::uint64_t>(n + 1)));
      const Composition c(n, q);
      SolverConfig cfg;
      cfg.rng_seed = static_cast<std::uint64_t>(trial);
      const auto out = nqc::solve(c, cfg);
      ASSERT_LE(out.stats.bt_count, cfg.tot_sim_bound);
      if (brute::completable(q, sols)) {
        expect_extends(c, out);
      } else {
        ASSERT_EQ(out.verdict, Verdict::negative);
        ASSERT_FALSE(out.solution);
      }
    }
  }
}

TEST(Solve, DeletionSamplesComplete) {
  for (const int n : {7, 20, 49, 50, 75, 99, 100, 300}) {
    const auto sols = nqc::gen_solutions(n, 5, 1000 + static_cast<std::uint64_t>(n));
    const auto comps = nqc::sample_compositions(sols, 40, 7);
    for (std::size_t t = 0; t < comps.size(); ++t) {
      SolverConfig cfg;
      cfg.rng_seed = t;
      const auto out = nqc::solve(comps[t], cfg);
      expect_extends(comps[t], out);
      ASSERT_GE(out.stats.entry_block, 1);
    }
  }
}

TEST(Solve, DeterministicPerSeed) {
  const auto sols = nqc::gen_solutions(200, 2, 5);
  const auto comps = nqc::sample_compositions(sols, 20, 9);
  for (const auto& c : comps) {
    SolverConfig cfg;
    cfg.rng_seed = 42;
    const auto a = nqc::solve(c, cfg);
    const auto b = nqc::solve(c, cfg);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.solution, b.solution);
    EXPECT_EQ(a.stats.bt_count, b.stats.bt_count);
    EXPECT_EQ(a.stats.block5_repeats, b.stats.block5_repeats);
    EXPECT_EQ(a.stats.entry_block, b.stats.entry_block);
  }
}

TEST(Solve, BudgetIsRespected) {
  std::mt19937_64 g(89);
  const auto sols = brute::solutions(8);
  int negatives = 0;
  for (int trial = 0; trial < 2000 && negatives < 100; ++trial) {
    const brute::Q q = brute::random_consistent(8, g, 3);
    if (brute::completable(q, sols)) continue;
    ++negatives;
    for (const int budget : {1, 2, 5, 1000}) {
      SolverConfig cfg;
      cfg.tot_sim_bound = budget;
      cfg.rng_seed = static_cast<std::uint64_t>(trial);
      const auto out = nqc::solve(Composition(8, q), cfg);
      EXPECT_EQ(out.verdict, Verdict::negative);
      EXPECT_LE(out.stats.bt_count, budget);
    }
  }
  EXPECT_GT(negatives, 10);
}

TEST(Solve, MetLevelsSkipBlocks) {
  const auto sol = nqc::gen_solutions(1000, 1, 3).front();
  const auto levels = nqc::base_levels(1000);
  Composition c = sol;
  for (int i = 1; i <= 1000 - levels.level3; ++i) c.set(i, 0);
  const auto out = nqc::solve(c, SolverConfig{});
  EXPECT_EQ(out.stats.entry_block, 4);
  expect_extends(c, out);
}

}  // namespace
