// One PASS/FAIL line per acceptance criterion, with its runtime.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "stoptime/adversary.hpp"
#include "stoptime/allocation.hpp"
#include "stoptime/beating_game.hpp"
#include "stoptime/coloring.hpp"
#include "stoptime/config.hpp"
#include "stoptime/description_mode.hpp"
#include "stoptime/generators.hpp"
#include "stoptime/oracle.hpp"
#include "stoptime/stop_machine.hpp"

using namespace stoptime;

namespace {

// Collects failed checks; a criterion passes when none failed.
struct Check {
  std::size_t failures = 0;
  std::string first;
  std::string note;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures++ == 0) first = what;
  }
};

Rng rng_for(std::uint64_t criterion) { return Rng(derive_seed(2024, criterion)); }

void criterion_1(Check& c) {
  Rng rng = rng_for(1);
  for (int i = 0; i < 1000; ++i) {
    const EnumeratorScript script = random_prefix_free_script(rng, 50, 12);
    const StringSet stops = stop_set(machine_from_enumerator(script), 12, ample_fuel(script));
    c.expect(stops == StringSet(script.begin(), script.end()), "round trip, script " + std::to_string(i));
  }
  for (int i = 0; i < 1000; ++i) {
    const StringSet stops = stop_set(machines::hashed(rng()), 12, 64);
    c.expect(oracle::pairwise_prefix_free({stops.begin(), stops.end()}),
             "machine " + std::to_string(i) + " stops on comparable inputs");
  }
}

void criterion_2(Check& c) {
  Rng rng = rng_for(2);
  std::size_t moves = 0;
  for (auto strategy : {ColoringStrategy::FirstFit, ColoringStrategy::RankBased}) {
    for (int play = 0; play < 1000; ++play) {
      const std::size_t k = uniform(rng, 1, 8);
      const std::size_t depth = uniform(rng, 4, 16);
      ColoringGame game(k, depth);
      auto alice = play % 2 == 0 ? random_alice() : climbing_alice();
      for (int m = 0; m < 24; ++m) {
        auto v = alice->next(game, rng);
        if (!v) break;
        game.play(*v, strategy);
        ++moves;
        const std::string where = to_string(strategy) + " play " + std::to_string(play);
        c.expect(verify_coloring(game), where + ": improper coloring");
        c.expect(color_count(game.subtree_colors(BitString{})) <= k, where + ": too many colors");
        if (strategy == ColoringStrategy::FirstFit) {
          const std::string broken = oracle::first_fit_properties(game.marks());
          c.expect(broken.empty(), where + ": " + broken);
        } else {
          c.expect(game.rank_invariant_holds(), where + ": rank invariant");
          for (const auto& [w, color] : game.marks()) {
            c.expect(color_count(game.subtree_colors(w)) == oracle::path_rank(game.marks(), w),
                     where + ": |C(x)| != r(x) at " + w.str());
          }
        }
      }
    }
  }
  c.note = std::to_string(moves) + " moves";
}

void criterion_3(Check& c) {
  Rng rng = rng_for(3);
  std::size_t announced = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t depth = uniform(rng, 2, 12);
    const UpperBoundSchedule sched = random_upper_bound_schedule(rng, 60, depth, 4);
    const auto bounds = final_bounds(sched, depth);
    const auto families = schedule_to_families(sched, depth);
    for (const auto& [key, fam] : families) {
      c.expect(oracle::pairwise_prefix_free({fam.members().begin(), fam.members().end()}),
               "family not prefix-free");
    }
    std::size_t levels = 0;  // games are played for n = 1..max bound
    for (const auto& [v, bound] : bounds) levels = std::max(levels, bound);
    for (const auto& [v, bound] : bounds) {
      ++announced;
      for (std::size_t n = 1; n <= levels; ++n) {
        std::size_t hits = 0;
        for (const auto& [key, fam] : families) {
          if (key.first == n && fam.contains(v)) ++hits;
        }
        // S(v) < n exactly when its final bound is at most n.
        c.expect(hits == (bound <= n ? 1U : 0U), "vertex " + v.str() + " at level " + std::to_string(n));
      }
    }
  }
  c.note = std::to_string(announced) + " announced vertices";
}

void criterion_4(Check& c) {
  Rng rng = rng_for(4);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t depth = uniform(rng, 1, 8);
    const DescriptionMode mode = random_valid_mode(rng, 24, depth);
    for (const auto& x : strings_up_to(depth)) {
      const Complexity s = max_over_extensions(mode, x);
      c.expect(complexity_leq(s, complexity_monotone(mode, x, x)), "S > C at " + x.str());
      c.expect(s == oracle::oracle_max(mode.triples(), x, depth), "S differs from brute force at " + x.str());
    }
    c.expect(cardinality_check_oracle(mode, depth), "cardinality check, mode " + std::to_string(i));
  }
}

// Replays a transcript move by move and checks both invariants after each.
bool replay_invariants(const BeatingResult& r, std::size_t team) {
  Labeling builder;
  std::vector<std::vector<BitString>> domains(team);
  for (const auto& m : r.board.transcript) {
    if (m.note == "illegal") continue;
    if (m.actor == kBuilder) {
      builder[m.vertex] = m.label;
      if (!is_prefix_stable(builder)) return false;
    } else {
      auto& d = domains[static_cast<std::size_t>(m.actor)];
      d.push_back(m.vertex);
      if (!oracle::pairwise_prefix_free(d)) return false;
    }
  }
  return true;
}

void criterion_5(Check& c) {
  set_depth_max(32);
  const std::vector<std::string> names = {"silent", "replicator", "sniper", "random"};
  std::size_t games = 0;
  for (std::size_t i = 0; i <= 4; ++i) {
    std::size_t combos = 1;
    for (std::size_t j = 0; j < i; ++j) combos *= names.size();
    for (std::size_t code = 0; code < combos; ++code) {
      std::vector<std::unique_ptr<Opponent>> team;
      std::string label;
      for (std::size_t j = 0, rest = code; j < i; ++j, rest /= names.size()) {
        team.push_back(opponent_by_name(names[rest % names.size()]));
        label += names[rest % names.size()] + ",";
      }
      const BeatingResult r = run_beating_game(std::move(team), 4 * (i + 2), 2000, code);
      ++games;
      c.expect(r.verdict() == Verdict::Won, "team [" + label + "] verdict " + to_string(r.verdict()));
      c.expect(replay_invariants(r, i), "team [" + label + "] broke an invariant");
      c.expect(opponents_prefix_free(r.board) && is_prefix_stable(r.board.builder),
               "team [" + label + "] final board");
    }
  }
  c.note = std::to_string(games) + " games";
}

void criterion_6(Check& c) {
  std::size_t requests = 0;
  std::size_t top_layer = 0;
  for (std::size_t k : {0, 1, 2, 3}) {
    Rng rng = rng_for(60 + k);
    AllocatorConfig cfg;
    cfg.k = k;
    cfg.depth = 16;
    const std::size_t n = cfg.n();
    for (int s = 0; s < 500; ++s) {
      const DeclarationStream stream = random_declarations(rng, n, k + 3, 6 * n + 6);
      LayeredAllocator alloc(cfg);
      const std::string where = "n=" + std::to_string(n) + " stream " + std::to_string(s);
      bool served = true;
      for (const auto& d : stream) {
        const RequestOutcome r = alloc.request(d.object, d.vertex);
        ++requests;
        if (r.kind == RequestKind::Rejected) {
          served = false;
          c.expect(false, where + ": rejected by every layer");
          break;
        }
        top_layer = std::max(top_layer, r.layer);
        c.expect(r.layer <= n + 1, where + ": layer " + std::to_string(r.layer));
        c.expect(verify_layer(alloc.layers()[r.layer]), where + ": verify_layer");
        c.expect(oracle::layer_consistent(alloc.layers()[r.layer].services()),
                 where + ": shared description");
      }
      if (!served) continue;
      const AllocatorModeResult m = allocator_to_mode(cfg, stream);
      c.expect(validate_mode(m.mode).ok(), where + ": invalid mode");
      for (const auto& d : stream) {
        const Complexity cx = complexity_monotone(m.mode, BitString::binary(d.object), d.vertex);
        c.expect(complexity_leq(cx, 2 * k + 4), where + ": description too long");
      }
    }
  }
  c.note = std::to_string(requests) + " requests, highest layer " + std::to_string(top_layer);
}

void criterion_7(Check& c) {
  std::size_t stages = 0;
  for (std::size_t n : {2, 3}) {
    for (const char* name : {"silent", "greedy", "always-serve", "random", "cheater"}) {
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto assigner = assigner_by_name(name);
        const AdversaryResult r = run_adversary(n, *assigner, 6, seed);
        const std::string where = "n=" + std::to_string(n) + " " + name;
        c.expect(r.outcome != AdversaryOutcome::StrategyExhausted, where + ": undecided");
        c.expect(r.max_declared <= adversary_budget(n), where + ": budget");
        if (std::string(name) == "always-serve") {
          c.expect(r.collisions == r.pigeonhole_stages, where + ": stage without collision");
          stages += r.pigeonhole_stages;
        }
      }
    }
  }
  c.expect(stages > 0, "no pigeonhole stage ran");
  c.note = std::to_string(stages) + " pigeonhole stages against always-serve";
}

void criterion_8(Check& c) {
  Rng rng = rng_for(8);
  for (int i = 0; i < 200; ++i) {
    std::vector<PairSchedule> in;
    const std::size_t m = uniform(rng, 1, 5);
    for (std::size_t j = 0; j < m; ++j) in.push_back(random_pair_schedule(rng, 16, 6, 5, 5));
    const PairSchedule out = minimal_in_class(in);
    c.expect(pair_schedule_in_class(out) && oracle::pair_cardinality(out), "class invariant");
    for (ObjectId x = 0; x < 6; ++x) {
      for (const auto& y : strings_up_to(5)) {
        c.expect(evaluate(out, x, y) == oracle::pair_min(in, x, y), "pointwise min at " + y.str());
      }
    }
  }
}

void criterion_9(Check& c) {
  Rng rng = rng_for(9);
  for (int i = 0; i < 500; ++i) {
    const std::size_t depth = uniform(rng, 1, 6);
    const TripleStream stream = random_triples(rng, 24, depth);
    const DescriptionMode mode = trim_to_mode(stream, depth);
    c.expect(trim_to_mode(mode.triples(), depth) == mode, "trim not idempotent");
    std::vector<DescriptionMode> parts{mode};
    for (std::size_t m = uniform(rng, 0, 3); m > 0; --m) parts.push_back(random_valid_mode(rng, 10, depth));
    const DescriptionMode joined = join_modes(parts);
    std::vector<std::vector<Triple>> raw;
    for (const auto& p : parts) raw.push_back(p.triples());
    const LengthModeResult to_len = to_length_mode(mode);
    const DescriptionMode back = from_length_mode(to_len.mode);
    for (const auto& t : to_len.dropped) {
      c.expect(t.object.size() > depth, "valid mode lost a triple with a length code");
    }
    for (const auto& x : strings_up_to(depth)) {
      for (const auto& p : parts) {
        for (const auto& t : p.triples()) {
          c.expect(complexity_monotone(joined, t.object, x) == oracle::join(raw, t.object, x),
                   "join shift at " + x.str());
        }
      }
      const Complexity cl = complexity_monotone(to_len.mode, encode_length(x.size(), depth), x);
      c.expect(complexity_leq(cl, complexity_monotone(mode, x, x)), "length code direction at " + x.str());
      c.expect(complexity_leq(complexity_monotone(back, x, x), cl), "object direction at " + x.str());
    }
  }
}

void criterion_10(Check& c) {
  auto run = [] {
    std::ostringstream out, err;
    const int code = cli::run_cli({"verify-all", "--seed", "7"}, out, err);
    return std::make_pair(code, out.str());
  };
  const auto first = run();
  const auto second = run();
  c.expect(first.first == 0, "verify-all failed");
  c.expect(first.second == second.second, "traces differ");
  c.expect(!first.second.empty(), "empty trace");
  c.note = std::to_string(first.second.size()) + " bytes, fnv1a " +
           std::to_string(fnv1a(first.second));
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_seconds;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 stopping-machine round trip", 30, criterion_1},
      {"2 online antichain coloring", 60, criterion_2},
      {"3 schedule to prefix-free families", 30, criterion_3},
      {"4 oracle maximum below stopping-time complexity", 60, criterion_4},
      {"5 builder beats every scripted team", 30, criterion_5},
      {"6 layered allocator", 120, criterion_6},
      {"7 adversary against every assigner", 60, criterion_7},
      {"8 minimal function of the class", 10, criterion_8},
      {"9 mode transformers", 30, criterion_9},
      {"10 determinism", 10, criterion_10},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check.expect(secs < cr.limit_seconds, "over the time limit");
    const bool ok = check.failures == 0;
    if (!ok) ++failed;
    std::printf("%s criterion %s (%.2f s)", ok ? "PASS" : "FAIL", cr.name, secs);
    if (!check.note.empty()) std::printf(" [%s]", check.note.c_str());
    if (!ok) std::printf(" %zu failures, first: %s", check.failures, check.first.c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
