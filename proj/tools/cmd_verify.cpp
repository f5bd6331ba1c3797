#include <functional>

#include "commands.hpp"
#include "stoptime/adversary.hpp"
#include "stoptime/allocation.hpp"
#include "stoptime/beating_game.hpp"
#include "stoptime/coloring.hpp"
#include "stoptime/description_mode.hpp"
#include "stoptime/generators.hpp"
#include "stoptime/oracle.hpp"
#include "stoptime/stop_machine.hpp"

namespace stoptime::cli {
namespace {

// Counts cases and failing checks; remembers the first failure.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (first_.empty()) first_ = what;
    }
  }
  void next_case() { ++cases_; }

  Json summary(const std::string& module) const {
    Json rec{{"module", module}, {"cases", cases_}, {"checks", checks_}, {"failures", failures_}};
    if (!first_.empty()) rec["first_failure"] = first_;
    return rec;
  }
  bool ok() const { return failures_ == 0; }

 private:
  std::size_t cases_ = 0;
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

void tree_core(Rng& rng, std::size_t scale, Tally& t) {
  for (std::size_t i = 0; i < 40 * scale; ++i) {
    t.next_case();
    const BitString a = random_bits(rng, 10);
    const BitString b = random_bits(rng, 10);
    t.check(BitString::parse(a.str()) == a, "parse round trip");
    t.check(a.child(true).parent() == a && a.child(false).parent() == a, "child/parent");
    if (!a.empty()) t.check(a.sibling().sibling() == a && a.sibling() != a, "sibling");
    t.check(are_compatible(a, b) == (is_prefix(a, b) || is_prefix(b, a)), "compatible");
    t.check(is_prefix(a, a + b), "concatenation prefix");
    t.check(path_to_root(a).size() == a.size() + 1, "path length");
    std::vector<BitString> pool;
    for (std::size_t j = 0; j < 5; ++j) pool.push_back(random_bits(rng, 4));
    bool pairwise = true;
    for (std::size_t x = 0; x < pool.size(); ++x) {
      for (std::size_t y = 0; y < pool.size(); ++y) {
        if (pool[x] != pool[y] && are_compatible(pool[x], pool[y])) pairwise = false;
      }
    }
    t.check(check_prefix_free(pool) == pairwise, "prefix-free check");
  }
}

void description_modes(Rng& rng, std::size_t scale, Tally& t) {
  for (std::size_t i = 0; i < 10 * scale; ++i) {
    t.next_case();
    const std::size_t depth = uniform(rng, 1, 5);
    const TripleStream stream = random_triples(rng, 20, depth);
    const DescriptionMode mode = trim_to_mode(stream, depth);
    t.check(validate_mode(mode).ok(), "trim yields a valid mode");
    t.check(trim_to_mode(mode.triples(), depth) == mode, "trim idempotent");

    const DescriptionMode other = random_valid_mode(rng, 10, depth);
    const DescriptionMode joined = join_modes({mode, other});
    t.check(validate_mode(joined).ok(), "join valid");
    const LengthModeResult to_len = to_length_mode(mode);
    const DescriptionMode back = from_length_mode(to_len.mode);
    t.check(validate_mode(to_len.mode).ok() && validate_mode(back).ok(), "length modes valid");
    for (const auto& x : strings_up_to(depth)) {
      for (const auto& tr : mode.triples()) {
        const BitString& y = tr.object;
        Complexity best;
        for (std::size_t m = 0; m < 2; ++m) {
          const Complexity c = complexity_monotone(m == 0 ? mode : other, y, x);
          if (c && complexity_leq(Complexity(*c + m + 1), best)) best = *c + m + 1;
        }
        t.check(complexity_monotone(joined, y, x) == best, "join shift");
      }
      if (x.size() <= depth) {
        const BitString code = encode_length(x.size(), depth);
        const Complexity cd = complexity_monotone(mode, x, x);
        const Complexity cl = complexity_monotone(to_len.mode, code, x);
        t.check(complexity_leq(cl, cd), "length code no longer than the object");
        t.check(complexity_leq(complexity_monotone(back, x, x), cl), "object no longer than code");
      }
    }
    std::map<BitString, std::vector<BitString>> families;
    for (const auto& [p, fam] : mode_to_families(mode)) {
      families[p].assign(fam.members().begin(), fam.members().end());
    }
    const DescriptionMode diag = families_to_mode(families, depth);
    bool same = true;
    for (const auto& [p, fam] : mode_to_families(diag)) {
      same = same && families.count(p) != 0 &&
             std::vector<BitString>(fam.members().begin(), fam.members().end()) == families[p];
    }
    t.check(same && mode_to_families(diag).size() == families.size(), "families round trip");
  }
}

void stop_machines(Rng& rng, std::size_t scale, Tally& t) {
  for (std::size_t i = 0; i < 20 * scale; ++i) {
    t.next_case();
    const EnumeratorScript script = random_prefix_free_script(rng, 20, 8);
    const StringSet stops = stop_set(machine_from_enumerator(script), 8, ample_fuel(script));
    t.check(stops == StringSet(script.begin(), script.end()), "script round trip");
    const StoppingMachine m = machines::hashed(uniform(rng, 0, ~std::uint64_t{0}));
    t.check(check_prefix_free(stop_set(m, 8, 64)), "stop set prefix-free");
  }
}

void antichain_coloring(Rng& rng, std::size_t scale, Tally& t) {
  for (std::size_t i = 0; i < 4 * scale; ++i) {
    for (ColoringStrategy s : {ColoringStrategy::FirstFit, ColoringStrategy::RankBased}) {
      t.next_case();
      const std::size_t k = uniform(rng, 1, 6);
      ColoringGame game(k, uniform(rng, 3, 10));
      auto alice = i % 2 == 0 ? random_alice() : climbing_alice();
      for (std::size_t move = 0; move < 40; ++move) {
        auto v = alice->next(game, rng);
        if (!v) break;
        game.play(*v, s);
        t.check(verify_coloring(game), "proper coloring");
        t.check(color_count(game.subtree_colors(BitString{})) <= k, "colors within k");
        if (s == ColoringStrategy::RankBased) t.check(game.rank_invariant_holds(), "rank invariant");
      }
    }
  }
  for (std::size_t i = 0; i < 2 * scale; ++i) {
    t.next_case();
    const UpperBoundSchedule sched = random_upper_bound_schedule(rng, 30, 6, 4);
    for (const auto& [key, family] : schedule_to_families(sched, 6)) {
      t.check(check_prefix_free(family.members()), "families prefix-free");
    }
  }
}

void oracle_complexity(Rng& rng, std::size_t scale, Tally& t) {
  for (std::size_t i = 0; i < 10 * scale; ++i) {
    t.next_case();
    const std::size_t depth = uniform(rng, 1, 5);
    const DescriptionMode mode = random_valid_mode(rng, 16, depth);
    for (const auto& x : strings_up_to(depth)) {
      t.check(check_oracle_inequality(mode, x, depth), "S(x) <= C(x|x*)");
    }
    t.check(cardinality_check_oracle(mode, depth), "cardinality along branches");
  }
}

void beating_game(Rng& rng, std::size_t scale, Tally& t) {
  const std::vector<std::string> names = {"silent", "replicator", "sniper", "random"};
  for (std::size_t i = 0; i < 3 * scale; ++i) {
    t.next_case();
    const std::size_t size = uniform(rng, 0, 2);
    std::vector<std::unique_ptr<Opponent>> team;
    for (std::size_t j = 0; j < size; ++j) {
      team.push_back(opponent_by_name(names[uniform(rng, 0, names.size() - 1)]));
    }
    const std::size_t depth = Builder::required_depth(size);
    const BeatingResult r = run_beating_game(std::move(team), depth, 500, rng());
    t.check(r.verdict() == Verdict::Won, "builder wins");
    t.check(is_prefix_stable(r.board.builder), "builder prefix-stable");
    t.check(opponents_prefix_free(r.board), "opponents prefix-free");
  }
}

void allocation_game(Rng& rng, std::size_t scale, Tally& t) {
  for (std::size_t i = 0; i < 4 * scale; ++i) {
    t.next_case();
    AllocatorConfig config;
    config.k = uniform(rng, 0, 2);
    config.depth = 10;
    const std::size_t n = config.n();
    const DeclarationStream stream = random_declarations(rng, n, config.k + 3, 6 * n + 6);
    LayeredAllocator alloc(config);
    bool served = true;
    for (const auto& d : stream) {
      const RequestOutcome r = alloc.request(d.object, d.vertex);
      served = served && r.kind != RequestKind::Rejected;
      if (r.kind == RequestKind::Rejected) break;
      t.check(r.layer <= n + 1, "layer within n+1");
      t.check(verify_layer(alloc.layers()[r.layer]), "layer verified");
    }
    t.check(served, "every request served");
    if (!served) continue;
    const AllocatorModeResult m = allocator_to_mode(config, stream);
    t.check(validate_mode(m.mode).ok(), "allocator mode valid");
    for (const auto& d : stream) {
      const Complexity c = complexity_monotone(m.mode, BitString::binary(d.object), d.vertex);
      t.check(complexity_leq(c, 2 * config.k + kAllocatorFraming), "description length");
    }
  }
  for (std::size_t i = 0; i < 2 * scale; ++i) {
    t.next_case();
    std::vector<PairSchedule> inputs;
    for (std::size_t m = 0; m < 3; ++m) inputs.push_back(random_pair_schedule(rng, 12, 6, 4, 4));
    const PairSchedule merged = minimal_in_class(inputs);
    t.check(pair_schedule_in_class(merged), "merged schedule in class");
    for (ObjectId x = 0; x < 6; ++x) {
      for (const auto& y : strings_up_to(4)) {
        Complexity best;
        for (std::size_t m = 0; m < inputs.size(); ++m) {
          const Complexity c = evaluate(inputs[m], x, y);
          if (c && complexity_leq(Complexity(*c + m + 1), best)) best = *c + m + 1;
        }
        t.check(evaluate(merged, x, y) == best, "pointwise min");
      }
    }
  }
  for (std::size_t n = 2; n <= 3; ++n) {
    for (const std::string name : {"silent", "greedy", "always-serve", "random", "cheater"}) {
      t.next_case();
      auto assigner = assigner_by_name(name);
      const AdversaryResult r = run_adversary(n, *assigner, 6, rng());
      t.check(r.outcome != AdversaryOutcome::StrategyExhausted, "adversary decides");
      t.check(r.max_declared <= adversary_budget(n), "declaration budget");
    }
  }
}

}  // namespace

void run_verify_all(const VerifyOptions& o, Trace& trace) {
  const std::size_t scale = o.quick ? 1 : 5;
  const std::vector<std::pair<std::string, std::function<void(Rng&, std::size_t, Tally&)>>>
      suites = {{"tree_core", tree_core},
                {"description_modes", description_modes},
                {"stop_machines", stop_machines},
                {"antichain_coloring", antichain_coloring},
                {"oracle_complexity", oracle_complexity},
                {"beating_game", beating_game},
                {"allocation_game", allocation_game}};
  std::size_t failed = 0;
  for (const auto& [name, suite] : suites) {
    Rng rng(derive_seed(o.seed, fnv1a(name)));
    Tally tally;
    suite(rng, scale, tally);
    Json rec = tally.summary(name);
    if (tally.ok()) {
      rec["ok"] = true;
      trace.emit(rec);
    } else {
      ++failed;
      trace.flag(rec);
    }
  }
  Json summary{{"command", "verify-all"}, {"seed", o.seed}, {"quick", o.quick},
               {"modules", suites.size()}, {"failed", failed}};
  if (failed == 0) {
    summary["ok"] = true;
    trace.emit(summary);
  } else {
    trace.flag(summary);
  }
}

}  // namespace stoptime::cli
