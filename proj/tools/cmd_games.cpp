#include <bit>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "stoptime/adversary.hpp"
#include "stoptime/allocation.hpp"
#include "stoptime/beating_game.hpp"
#include "stoptime/coloring.hpp"
#include "stoptime/config.hpp"
#include "stoptime/errors.hpp"
#include "stoptime/text_io.hpp"

namespace stoptime::cli {
namespace {

std::unique_ptr<AlicePlayer> make_alice(const std::string& name) {
  if (name == "random") return random_alice();
  if (name == "climbing") return climbing_alice();
  throw ConfigError("unknown Alice: " + name);
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string actor_name(int actor, const std::vector<std::string>& names) {
  if (actor == kBuilder) return "builder";
  return "opponent" + std::to_string(actor) + ":" + names[static_cast<std::size_t>(actor)];
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return in;
}

DeclarationStream read_declarations(const std::string& path) {
  std::ifstream in = open_input(path);
  DeclarationStream out;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (line.empty() || line.front() == '#') continue;
    std::stringstream ss(line);
    std::string object, vertex;
    if (!(ss >> object >> vertex)) {
      throw ConfigError(path + ":" + std::to_string(no) + ": expected object<TAB>vertex");
    }
    try {
      out.push_back({std::stoull(object), parse_field(vertex)});
    } catch (const std::logic_error& e) {
      throw ConfigError(path + ":" + std::to_string(no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<std::optional<BitString>> read_answers(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<std::optional<BitString>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (line == "PASS") {
      out.emplace_back(std::nullopt);
    } else {
      out.emplace_back(parse_field(line));
    }
  }
  return out;
}

}  // namespace

void run_color_game(const ColorOptions& o, Trace& trace) {
  const ColoringStrategy strategy = parse_strategy(o.strategy);
  make_alice(o.alice);  // validate before any output
  ColoringGame probe(o.k, o.depth);
  std::size_t failed_episodes = 0;
  for (std::size_t e = 0; e < o.episodes; ++e) {
    Rng rng(derive_seed(o.seed, e));
    auto alice = make_alice(o.alice);
    ColoringGame game(o.k, o.depth);
    bool episode_ok = true;
    std::size_t moves = 0;
    while (moves < o.moves) {
      auto v = alice->next(game, rng);
      if (!v) break;
      const Color color = game.play(*v, strategy);
      ++moves;
      const ColorSet used = game.subtree_colors(BitString{});
      bool ok = verify_coloring(game) && color_count(used) <= o.k;
      if (strategy == ColoringStrategy::RankBased) ok = ok && game.rank_invariant_holds();
      Json rec{{"episode", e},        {"move", moves},
               {"vertex", v->str()},  {"color", color},
               {"rank_root", game.marked_rank(BitString{})}};
      if (ok) {
        rec["ok"] = true;
        trace.emit(rec);
      } else {
        episode_ok = false;
        trace.flag(rec);
      }
    }
    if (!episode_ok) ++failed_episodes;
    trace.emit({{"episode", e},
                {"moves", moves},
                {"colors_used", color_count(game.subtree_colors(BitString{}))},
                {"ok", episode_ok}});
  }
  trace.emit({{"command", "color-game"},
              {"strategy", to_string(strategy)},
              {"episodes", o.episodes},
              {"failed", failed_episodes},
              {"ok", failed_episodes == 0}});
}

void run_beat_game(const BeatOptions& o, Trace& trace) {
  const auto names = split_commas(o.team);
  std::vector<std::unique_ptr<Opponent>> team;
  for (const auto& n : names) team.push_back(opponent_by_name(n));
  const std::size_t depth = o.depth != 0 ? o.depth : Builder::required_depth(team.size());
  BeatingResult r = run_beating_game(std::move(team), depth, o.max_rounds, o.seed);
  for (const auto& m : r.board.transcript) {
    Json rec{{"round", m.round},
             {"actor", actor_name(m.actor, names)},
             {"vertex", m.vertex.str()},
             {"label", m.label.str()},
             {"note", m.note}};
    if (m.note == "illegal") {
      trace.flag(rec);
    } else {
      rec["ok"] = true;
      trace.emit(rec);
    }
  }
  Json verdicts = Json::array();
  for (Verdict v : r.verdicts) verdicts.push_back(to_string(v));
  const bool stable = is_prefix_stable(r.board.builder);
  const bool free = opponents_prefix_free(r.board);
  Json summary{{"command", "beat-game"}, {"team", names.size()},   {"depth", depth},
               {"rounds", r.rounds},     {"quiescent", r.quiescent}, {"verdicts", verdicts},
               {"verdict", to_string(r.verdict())}, {"builder_prefix_stable", stable},
               {"opponents_prefix_free", free}};
  if (r.verdict() == Verdict::Won && stable && free && r.illegal.empty()) {
    summary["ok"] = true;
    trace.emit(summary);
  } else {
    trace.flag(summary);
  }
}

void run_alloc_game(const AllocOptions& o, Trace& trace) {
  if (o.n == 0 || !std::has_single_bit(o.n) || o.n > 256) {
    throw ConfigError("--n must be a power of two up to 256");
  }
  AllocatorConfig config;
  config.k = static_cast<std::size_t>(std::countr_zero(o.n));
  config.depth = o.depth;
  check_depth_bound(o.depth);
  const std::size_t spread = std::min(o.spread != 0 ? o.spread : config.k + 3, o.depth);
  const std::size_t attempts = o.attempts != 0 ? o.attempts : 6 * o.n + 6;

  std::vector<DeclarationStream> streams;
  if (o.stream == "random") {
    for (std::size_t s = 0; s < o.streams; ++s) {
      Rng rng(derive_seed(o.seed, s));
      streams.push_back(random_declarations(rng, o.n, spread, attempts));
    }
  } else {
    streams.push_back(read_declarations(o.stream));
  }

  const std::size_t limit = 2 * config.k + kAllocatorFraming;
  std::size_t worst_layer = 0;
  for (std::size_t s = 0; s < streams.size(); ++s) {
    const DeclarationStream& stream = streams[s];
    LayeredAllocator alloc(config);
    DeclarationStream so_far;
    bool ok = true;
    bool unserved = false;
    for (const auto& d : stream) {
      check_vertex(d.vertex, config.depth);
      Json declare{{"stream", s}, {"event", "declare"}, {"object", d.object},
                   {"vertex", d.vertex.str()}};
      if (!declaration_fits(so_far, d, o.n)) {
        ok = false;
        declare["over_budget"] = true;
        trace.flag(declare);
      } else {
        trace.emit(declare);
      }
      so_far.push_back(d);
      const std::size_t before = alloc.rejections().size();
      RequestOutcome r = alloc.request(d.object, d.vertex);
      for (std::size_t i = before; i < alloc.rejections().size(); ++i) {
        const Rejection& rej = alloc.rejections()[i];
        Json rec{{"stream", s},         {"event", "reject"}, {"object", d.object},
                 {"vertex", d.vertex.str()}, {"layer", rej.layer}};
        if (alloc.escalation_witnessed(rej)) {
          trace.emit(rec);
        } else {
          ok = false;
          rec["missing_witness"] = true;
          trace.flag(rec);
        }
        if (rej.layer + 1 < config.layer_count()) {
          trace.emit({{"stream", s}, {"event", "escalate"}, {"object", d.object},
                      {"vertex", d.vertex.str()}, {"layer", rej.layer + 1}});
        }
      }
      if (r.kind == RequestKind::Rejected) {
        ok = false;
        unserved = true;
        trace.flag({{"stream", s}, {"event", "unserved"}, {"object", d.object},
                    {"vertex", d.vertex.str()}});
        continue;
      }
      worst_layer = std::max(worst_layer, r.layer);
      Json rec{{"stream", s},
               {"event", r.kind == RequestKind::Served ? "serve" : "cover"},
               {"object", d.object},
               {"vertex", d.vertex.str()},
               {"layer", r.layer},
               {"description", r.description},
               {"anchor", r.anchor.str()}};
      const bool layer_ok = verify_layer(alloc.layers()[r.layer]) && r.layer <= o.n + 1;
      if (layer_ok) {
        trace.emit(rec);
      } else {
        ok = false;
        trace.flag(rec);
      }
    }
    Json summary{{"stream", s}, {"event", "stream-summary"}, {"declarations", stream.size()}};
    if (!unserved) {
      AllocatorModeResult m = allocator_to_mode(config, stream);
      const bool valid = validate_mode(m.mode).ok();
      bool short_enough = true;
      for (const auto& d : stream) {
        short_enough = short_enough &&
                       complexity_leq(complexity_monotone(m.mode, BitString::binary(d.object), d.vertex),
                                      limit);
      }
      summary["max_layer"] = m.max_layer;
      summary["mode_triples"] = m.mode.size();
      summary["mode_valid"] = valid;
      summary["complexity_within"] = short_enough;
      ok = ok && valid && short_enough;
    }
    if (ok) {
      summary["ok"] = true;
      trace.emit(summary);
    } else {
      trace.flag(summary);
    }
  }
  Json final{{"command", "alloc-game"}, {"n", o.n}, {"streams", streams.size()},
             {"max_layer", worst_layer}, {"layer_limit", o.n + 1}};
  if (trace.failed()) {
    trace.flag(final);
  } else {
    final["ok"] = true;
    trace.emit(final);
  }
}

void run_alloc_adversary(const AdversaryOptions& o, Trace& trace) {
  std::unique_ptr<Assigner> assigner;
  std::ifstream probe(o.assigner);
  if (probe.good()) {
    assigner = scripted_assigner(read_answers(o.assigner));
  } else {
    assigner = assigner_by_name(o.assigner);
  }
  AdversaryResult r = run_adversary(o.n, *assigner, o.c, o.seed);
  for (const auto& e : r.events) {
    Json rec{{"event", e.kind}, {"object", e.object}, {"vertex", e.vertex.str()}};
    rec["description"] = e.description ? Json(e.description->str()) : Json(nullptr);
    rec["level"] = e.level;
    trace.emit(rec);
  }
  const bool within_budget = r.max_declared <= adversary_budget(o.n);
  // With c >= 5 the strategy needs more distinct descriptions than exist.
  const bool decided = r.outcome != AdversaryOutcome::StrategyExhausted || o.c < 5;
  Json summary{{"command", "alloc-adversary"},
               {"n", o.n},
               {"c", o.c},
               {"assigner", assigner->name()},
               {"outcome", to_string(r.outcome)},
               {"reason", r.reason}};
  if (r.witness) {
    summary["object"] = r.witness->object;
    summary["vertex"] = r.witness->vertex.str();
  }
  summary["max_declared"] = r.max_declared;
  summary["budget"] = adversary_budget(o.n);
  summary["pigeonhole_stages"] = r.pigeonhole_stages;
  summary["collisions"] = r.collisions;
  summary["objects_used"] = r.objects_used;
  if (within_budget && decided) {
    summary["ok"] = true;
    trace.emit(summary);
  } else {
    trace.flag(summary);
  }
}

}  // namespace stoptime::cli
