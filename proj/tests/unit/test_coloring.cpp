#include "doctest.h"
#include "oracles.hpp"
#include "stoptime/coloring.hpp"
#include "stoptime/errors.hpp"
#include "stoptime/generators.hpp"

using namespace stoptime;

namespace {
BitString b(const char* s) { return BitString::parse(s); }
}  // namespace

TEST_CASE("marking respects the per-branch budget") {
  ColoringGame g(1, 4);
  g.mark(b(""));
  CHECK(g.marks().count(b("")) == 1);
  g.color_first_fit(b(""));
  CHECK_THROWS_AS(g.mark(b("0")), PathBudgetExceeded);

  ColoringGame two(2, 4);
  two.play(b("0"), ColoringStrategy::FirstFit);
  CHECK_NOTHROW(two.play(b("1"), ColoringStrategy::FirstFit));
  CHECK_THROWS_AS(two.mark(b("1")), ConfigError);
  CHECK_THROWS_AS(two.mark(b("00000")), ConfigError);
  CHECK_THROWS_AS(ColoringGame(0, 4), ConfigError);
  CHECK_THROWS_AS(ColoringGame(65, 4), ConfigError);
}

TEST_CASE("first-fit colors") {
  ColoringGame g(2, 4);
  CHECK(g.play(b(""), ColoringStrategy::FirstFit) == 1);
  CHECK(g.play(b("0"), ColoringStrategy::FirstFit) == 2);
  ColoringGame one(1, 4);
  CHECK(one.play(b("0"), ColoringStrategy::FirstFit) == 1);
  CHECK(one.play(b("1"), ColoringStrategy::FirstFit) == 1);
}

TEST_CASE("rank-based colors") {
  ColoringGame g(2, 4);
  CHECK(g.play(b("00"), ColoringStrategy::RankBased) == 1);
  CHECK(g.rank_invariant_holds());
  const Color second = g.play(b("01"), ColoringStrategy::RankBased);
  CHECK(second == g.marks().at(b("00")));
  CHECK(g.rank_invariant_holds());

  ColoringGame chain(3, 4);
  std::set<Color> seen;
  for (const char* v : {"", "0", "00"}) seen.insert(chain.play(b(v), ColoringStrategy::RankBased));
  CHECK(seen.size() == 3);
}

TEST_CASE("rank-based reuses the heavier sibling's color") {
  // Chain of two on the right, single mark on the left: the left subtree
  // grows to rank 2 without the root rank changing.
  ColoringGame g(2, 4);
  g.play(b("1"), ColoringStrategy::RankBased);
  g.play(b("11"), ColoringStrategy::RankBased);
  g.play(b("00"), ColoringStrategy::RankBased);
  g.play(b("0"), ColoringStrategy::RankBased);
  CHECK(g.rank_invariant_holds());
  CHECK(color_count(g.subtree_colors(b(""))) == 2);
}

TEST_CASE("marked_rank") {
  ColoringGame g(3, 4);
  CHECK(g.marked_rank(b("")) == 0);
  for (const char* v : {"", "0", "00"}) g.play(b(v), ColoringStrategy::FirstFit);
  CHECK(g.marked_rank(b("")) == 3);
  ColoringGame h(1, 4);
  h.play(b("0"), ColoringStrategy::FirstFit);
  h.play(b("1"), ColoringStrategy::FirstFit);
  CHECK(h.marked_rank(b("")) == 1);
}

TEST_CASE("verify_coloring") {
  ColoringGame g(2, 4);
  g.play(b("0"), ColoringStrategy::FirstFit);
  CHECK(verify_coloring(g));
  CHECK_FALSE(verify_coloring(ColoringGame::from_assignment(2, 4, {{b(""), 1}, {b("0"), 1}})));
  CHECK(verify_coloring(ColoringGame(2, 4)));
  CHECK_FALSE(verify_coloring(ColoringGame::from_assignment(1, 4, {{b(""), 2}})));
}

TEST_CASE("schedule_to_families") {
  const auto one = schedule_to_families({{b(""), 1}}, 3);
  REQUIRE(one.size() == 1);
  CHECK(one.begin()->first == FamilyKey{1, b("0")});
  CHECK(one.begin()->second.members() == StringSet{b("")});

  // S(x) = |x| up to depth 3: at level 1 only the root has S < 1.
  UpperBoundSchedule by_length;
  for (const auto& x : strings_up_to(3)) by_length.push_back({x, x.size() + 1});
  std::size_t level_one = 0;
  for (const auto& [key, fam] : schedule_to_families(by_length, 3)) {
    if (key.first == 1) {
      ++level_one;
      CHECK(fam.members() == StringSet{b("")});
    }
  }
  CHECK(level_one == 1);
  CHECK(schedule_to_families({}, 3).empty());
}

TEST_CASE("schedules outside the class") {
  CHECK_FALSE(schedule_in_class({{b(""), 1}, {b("0"), 1}}, 3));
  CHECK(schedule_in_class({{b(""), 1}, {b("0"), 2}}, 3));
  CHECK_THROWS_AS(final_bounds({{b("0"), 2}, {b("0"), 3}}, 3), ConfigError);
  CHECK_THROWS_AS(schedule_to_families({{b(""), 1}, {b("0"), 1}, {b("00"), 1}}, 3),
                  PathBudgetExceeded);
}

TEST_CASE("random plays satisfy the first-fit properties and the rank invariant") {
  Rng rng(derive_seed(41, 0));
  for (int i = 0; i < 150; ++i) {
    for (auto s : {ColoringStrategy::FirstFit, ColoringStrategy::RankBased}) {
      const std::size_t k = uniform(rng, 1, 5);
      ColoringGame g(k, 8);
      auto alice = i % 2 == 0 ? random_alice() : climbing_alice();
      for (int move = 0; move < 30; ++move) {
        auto v = alice->next(g, rng);
        if (!v) break;
        g.play(*v, s);
        REQUIRE(verify_coloring(g));
        for (const auto& [w, c] : g.marks()) {
          CHECK(g.marked_rank(w) == oracle::path_rank(g.marks(), w));
        }
        CHECK(g.marked_rank(b("")) == oracle::path_rank(g.marks(), b("")));
        if (s == ColoringStrategy::FirstFit) {
          CHECK(oracle::first_fit_properties(g.marks()) == "");
        } else {
          CHECK(g.rank_invariant_holds());
        }
      }
    }
  }
}
