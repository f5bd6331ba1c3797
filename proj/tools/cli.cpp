#include "cli.hpp"

#include <ostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "stoptime/errors.hpp"

namespace stoptime::cli {

void Trace::emit(const Json& record) { out_ << record.dump() << '\n'; }

void Trace::flag(Json record) {
  record["ok"] = false;
  failed_ = true;
  emit(record);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-scale experiments on stopping-time complexity. Traces are JSONL on stdout.\n"
               "Exit status: 0 all checks passed, 1 invariant violation, 2 bad configuration.\n"
               "STOPTIME_DEPTH_MAX overrides the global depth bound (default 16)."};
  app.require_subcommand(1);

  ColorOptions color;
  auto* c = app.add_subcommand("color-game", "Online antichain coloring against a random Alice");
  c->add_option("--strategy", color.strategy, "Bob's strategy: first-fit or rank")
      ->capture_default_str();
  c->add_option("--alice", color.alice, "Alice: random or climbing")->capture_default_str();
  c->add_option("--k", color.k, "Marks allowed per branch (1..64)")->capture_default_str();
  c->add_option("--depth", color.depth, "Tree depth")->capture_default_str();
  c->add_option("--episodes", color.episodes, "Independent games")->capture_default_str();
  c->add_option("--moves", color.moves, "Move cap per episode")->capture_default_str();
  c->add_option("--seed", color.seed, "Run seed")->capture_default_str();

  BeatOptions beat;
  auto* b = app.add_subcommand("beat-game", "Prefix-stable builder against prefix-free opponents");
  b->add_option("--team", beat.team,
                "Comma-separated opponents: silent, replicator, sniper, random, illegal");
  b->add_option("--depth", beat.depth, "Tree depth (default: what the builder needs)");
  b->add_option("--max-rounds", beat.max_rounds, "Round cap")->capture_default_str();
  b->add_option("--seed", beat.seed, "Run seed")->capture_default_str();

  AllocOptions alloc;
  auto* a = app.add_subcommand("alloc-game", "Layered description allocator");
  a->add_option("--n", alloc.n, "Objects per path, a power of two")->capture_default_str();
  a->add_option("--depth", alloc.depth, "Tree depth")->capture_default_str();
  a->add_option("--stream", alloc.stream,
                "'random', or a file of object<TAB>vertex lines ('-' is the root)")
      ->capture_default_str();
  a->add_option("--streams", alloc.streams, "Random streams to run")->capture_default_str();
  a->add_option("--spread", alloc.spread, "Deepest level of random declarations (default k+3)");
  a->add_option("--attempts", alloc.attempts, "Proposals per random stream (default 6n+6)");
  a->add_option("--seed", alloc.seed, "Run seed")->capture_default_str();

  AdversaryOptions adv;
  auto* v = app.add_subcommand("alloc-adversary", "Declaring side of the factor-2 gap game");
  v->add_option("--n", adv.n, "Game size (1..3)")->capture_default_str();
  v->add_option("--c", adv.c, "Gap constant: descriptions have at most 2n-c bits")
      ->capture_default_str();
  v->add_option("--assigner", adv.assigner,
                "silent, greedy, always-serve, random, cheater, or a file with one answer per "
                "declaration (bits, '-' for empty, PASS)")
      ->capture_default_str();
  v->add_option("--seed", adv.seed, "Run seed")->capture_default_str();

  ConvertOptions conv;
  auto* t = app.add_subcommand("convert", "Mode and script transformers; output on stdout");
  t->add_option("--op", conv.op,
                "trim, validate, to-length, from-length, join, closure, families, "
                "machine-to-script, script-to-machine")
      ->required();
  t->add_option("--in", conv.inputs, "Input file (repeat for join)");
  t->add_option("--depth", conv.depth, "Mode or tree depth (default: global bound)");
  t->add_option("--machine", conv.machine, "Machine family: halt, loop, reads, ones, hashed")
      ->capture_default_str();
  t->add_option("--param", conv.param, "Machine parameter")->capture_default_str();
  t->add_option("--fuel", conv.fuel, "Steps per run")->capture_default_str();

  OracleOptions orc;
  auto* o = app.add_subcommand("oracle", "Maximum over oracle extensions versus C(x|x*)");
  o->add_option("--mode", orc.mode, "Mode file")->required();
  o->add_option("--x", orc.x, "Object and condition ('-' for empty)")->required();
  o->add_option("--depth", orc.depth, "Mode depth (default: longest condition or |x|)");
  o->add_option("--horizon", orc.horizon, "Covering horizon (default: mode depth)");
  o->add_flag("--finite-extensions", orc.finite_extensions,
              "Also report max over finite extensions of C(x|z) (exploratory)");
  o->add_option("--pair-y", orc.pair_y,
                "Also report max over oracles extending y of C^Y(x) (exploratory)");

  VerifyOptions ver;
  auto* q = app.add_subcommand("verify-all", "Run the invariant suites of every module");
  q->add_option("--seed", ver.seed, "Run seed")->capture_default_str();
  q->add_flag("--quick", ver.quick, "Smaller suites");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  Trace trace(out);
  try {
    if (*c) run_color_game(color, trace);
    if (*b) run_beat_game(beat, trace);
    if (*a) run_alloc_game(alloc, trace);
    if (*v) run_alloc_adversary(adv, trace);
    if (*t) run_convert(conv, out, trace);
    if (*o) run_oracle(orc, trace);
    if (*q) run_verify_all(ver, trace);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::logic_error& e) {
    trace.flag({{"event", "invariant-violation"}, {"what", e.what()}});
  } catch (const std::runtime_error& e) {
    trace.flag({{"event", "failure"}, {"what", e.what()}});
  }
  return trace.failed() ? kExitViolation : kExitOk;
}

}  // namespace stoptime::cli
