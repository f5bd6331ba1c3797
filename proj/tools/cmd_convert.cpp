#include <fstream>
#include <ostream>

#include "commands.hpp"
#include "stoptime/config.hpp"
#include "stoptime/description_mode.hpp"
#include "stoptime/errors.hpp"
#include "stoptime/oracle.hpp"
#include "stoptime/stop_machine.hpp"
#include "stoptime/text_io.hpp"

namespace stoptime::cli {
namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return in;
}

const std::string& single_input(const ConvertOptions& o) {
  if (o.inputs.size() != 1) throw ConfigError("--op " + o.op + " takes exactly one --in");
  return o.inputs.front();
}

TripleStream load_triples(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_triples(in);
}

std::size_t deepest_condition(const TripleStream& ts) {
  std::size_t d = 0;
  for (const auto& t : ts) d = std::max(d, t.condition.size());
  return d;
}

Json triple_json(const Triple& t) {
  return {{"description", t.description.str()},
          {"condition", t.condition.str()},
          {"object", t.object.str()}};
}

}  // namespace

void run_convert(const ConvertOptions& o, std::ostream& out, Trace& trace) {
  const std::size_t depth = o.depth.value_or(depth_max());
  check_depth_bound(depth);
  auto load_mode = [&](const std::string& path) {
    return DescriptionMode(load_triples(path), depth);
  };

  if (o.op == "trim") {
    write_mode(out, trim_to_mode(load_triples(single_input(o)), depth));
  } else if (o.op == "validate") {
    const ValidationReport report = validate_mode(load_mode(single_input(o)));
    for (const auto& v : report.violations) {
      trace.flag({{"event", "uniqueness-violation"},
                  {"first", triple_json(v.first)},
                  {"second", triple_json(v.second)}});
    }
    if (report.ok()) trace.emit({{"command", "convert"}, {"op", "validate"}, {"ok", true}});
  } else if (o.op == "to-length") {
    const LengthModeResult r = to_length_mode(load_mode(single_input(o)));
    for (const auto& t : r.dropped) {
      out << "# dropped " << format_field(t.description) << ' ' << format_field(t.condition)
          << ' ' << format_field(t.object) << '\n';
    }
    write_mode(out, r.mode);
  } else if (o.op == "from-length") {
    write_mode(out, from_length_mode(load_mode(single_input(o))));
  } else if (o.op == "join") {
    if (o.inputs.empty()) throw ConfigError("--op join needs at least one --in");
    std::vector<DescriptionMode> modes;
    for (const auto& path : o.inputs) modes.push_back(load_mode(path));
    write_mode(out, join_modes(modes));
  } else if (o.op == "closure") {
    write_mode(out, exact_closure(load_mode(single_input(o))));
  } else if (o.op == "families") {
    for (const auto& [p, family] : mode_to_families(load_mode(single_input(o)))) {
      Json members = Json::array();
      for (const auto& y : family.members()) members.push_back(y.str());
      trace.emit({{"description", p.str()}, {"members", members}});
    }
  } else if (o.op == "machine-to-script") {
    const StoppingMachine m = machines::by_name(o.machine, o.param);
    write_script(out, enumerator_from_machine(m, depth, o.fuel));
  } else if (o.op == "script-to-machine") {
    std::ifstream in = open_input(single_input(o));
    const EnumeratorScript script = read_script(in);
    for (const auto& s : script) check_vertex(s, depth);
    const StoppingMachine m = machine_from_enumerator(script);
    const StringSet stops = stop_set(m, depth, ample_fuel(script));
    write_script(out, EnumeratorScript(stops.begin(), stops.end()));
    const StringSet expected(script.begin(), script.end());
    if (stops != expected) {
      trace.flag({{"event", "round-trip-mismatch"}, {"expected", expected.size()},
                  {"stopped", stops.size()}});
    }
  } else {
    throw ConfigError("unknown --op " + o.op);
  }
}

void run_oracle(const OracleOptions& o, Trace& trace) {
  const TripleStream ts = load_triples(o.mode);
  const BitString x = parse_field(o.x);
  const std::size_t depth = o.depth.value_or(std::max(deepest_condition(ts), x.size()));
  check_depth_bound(depth);
  const DescriptionMode mode(ts, depth);
  const ValidationReport report = validate_mode(mode);
  if (!report.ok()) {
    for (const auto& v : report.violations) {
      trace.flag({{"event", "uniqueness-violation"},
                  {"first", triple_json(v.first)},
                  {"second", triple_json(v.second)}});
    }
    return;
  }
  const std::size_t horizon = o.horizon.value_or(depth);
  auto as_json = [](const Complexity& c) { return c ? Json(*c) : Json(nullptr); };
  const Complexity s = max_over_extensions(mode, x, horizon);
  const Complexity cx = complexity_monotone(mode, x, x);
  Json rec{{"command", "oracle"}, {"x", x.str()},    {"horizon", horizon},
           {"S", as_json(s)},     {"C", as_json(cx)}, {"inequality", complexity_leq(s, cx)}};
  if (o.finite_extensions) rec["finite_extension_max"] = as_json(finite_extension_max(mode, x, horizon));
  if (o.pair_y) {
    const BitString y = parse_field(*o.pair_y);
    rec["y"] = y.str();
    rec["pair_max"] = as_json(oracle_pair_max(mode, x, y, horizon));
  }
  if (complexity_leq(s, cx)) {
    rec["ok"] = true;
    trace.emit(rec);
  } else {
    trace.flag(rec);
  }
}

}  // namespace stoptime::cli
