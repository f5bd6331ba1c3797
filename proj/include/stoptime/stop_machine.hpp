#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stoptime/bitstring.hpp"

namespace stoptime {

enum class Action { RequestBit, Halt, InternalStep };

/// Opaque machine state: a tape of integer cells.
using WorkTape = std::vector<std::int64_t>;

struct Step {
  WorkTape state;
  Action action;
};

/// A machine with a one-way read-only binary input tape, given as a pure
/// step function. The second argument of a step is the bit delivered for the
/// previous RequestBit, or nothing.
class StoppingMachine {
 public:
  using StepFn = std::function<Step(const WorkTape&, std::optional<bool>)>;

  StoppingMachine(std::string name, WorkTape initial, StepFn step);

  const std::string& name() const { return name_; }
  const WorkTape& initial() const { return initial_; }
  Step step(const WorkTape& state, std::optional<bool> bit) const { return step_(state, bit); }

 private:
  std::string name_;
  WorkTape initial_;
  StepFn step_;
};

/// The machine halted after reading exactly `read`.
struct StopsAt {
  BitString read;
  bool operator==(const StopsAt&) const = default;
};
/// The machine asked for a bit past the end of the input.
struct RanOffInput {
  bool operator==(const RanOffInput&) const = default;
};
struct FuelExhausted {
  bool operator==(const FuelExhausted&) const = default;
};
using RunOutcome = std::variant<StopsAt, RanOffInput, FuelExhausted>;

/// Time-ordered enumeration of strings.
using EnumeratorScript = std::vector<BitString>;

/// Runs `machine` on `input` for at most `fuel` steps (fuel > 0).
RunOutcome run_on(const StoppingMachine& machine, const BitString& input, std::size_t fuel);

/// All z with |z| <= depth on which the machine stops within `fuel` steps.
/// Forks the simulation at every read instead of restarting per input.
StringSet stop_set(const StoppingMachine& machine, std::size_t depth, std::size_t fuel);

/// The waiting construction: a machine that stops exactly at the emitted
/// strings. It reads a bit only after the enumeration shows a proper
/// extension of what it has read, and halts when the read prefix itself is
/// emitted. Throws ConfigError if the script is not prefix-free.
StoppingMachine machine_from_enumerator(EnumeratorScript script);

/// Fuel that lets machine_from_enumerator(script) finish every run.
std::size_t ample_fuel(const EnumeratorScript& script);

/// Dovetailed enumeration of stop_set: all runs advance one step per round,
/// breadth-first over the inputs read so far.
EnumeratorScript enumerator_from_machine(const StoppingMachine& machine, std::size_t depth,
                                         std::size_t fuel);

/// Keeps each emission unless it is comparable with an earlier kept one.
EnumeratorScript trim_script(const EnumeratorScript& script);

namespace machines {

StoppingMachine immediate_halt();
StoppingMachine loop_forever();
/// Reads exactly `reads` bits, then halts.
StoppingMachine halt_after_reads(std::size_t reads);
/// Reads until it has seen `ones` one-bits, then halts.
StoppingMachine halt_after_ones(std::size_t ones);
/// Pseudo-random decision tree: at each prefix it idles a few steps, then
/// halts, reads on, or loops forever, as decided by a hash of (seed, prefix).
StoppingMachine hashed(std::uint64_t seed);

/// Built-in family lookup for the CLI: "halt", "loop", "reads", "ones",
/// "hashed". Throws ConfigError on an unknown name.
StoppingMachine by_name(const std::string& name, std::uint64_t param);

}  // namespace machines

}  // namespace stoptime
