#include "stoptime/stop_machine.hpp"

#include <algorithm>
#include <memory>

#include "stoptime/errors.hpp"
#include "stoptime/random.hpp"

namespace stoptime {
namespace {

struct Branch {
  WorkTape state;
  BitString read;
  std::optional<bool> pending;
  std::size_t steps = 0;
};

bool bfs_less(const Branch& a, const Branch& b) {
  if (a.read.size() != b.read.size()) return a.read.size() < b.read.size();
  return a.read < b.read;
}

BitString tape_bits(const WorkTape& tape, std::size_t from) {
  std::string s;
  for (std::size_t i = from; i < tape.size(); ++i) s.push_back(tape[i] != 0 ? '1' : '0');
  return BitString::parse(s);
}

}  // namespace

StoppingMachine::StoppingMachine(std::string name, WorkTape initial, StepFn step)
    : name_(std::move(name)), initial_(std::move(initial)), step_(std::move(step)) {}

RunOutcome run_on(const StoppingMachine& machine, const BitString& input, std::size_t fuel) {
  if (fuel == 0) throw ConfigError("fuel must be positive");
  WorkTape state = machine.initial();
  std::optional<bool> pending;
  std::size_t read = 0;
  for (std::size_t t = 0; t < fuel; ++t) {
    Step s = machine.step(state, pending);
    pending.reset();
    state = std::move(s.state);
    switch (s.action) {
      case Action::Halt:
        return StopsAt{input.prefix(read)};
      case Action::RequestBit:
        if (read == input.size()) return RanOffInput{};
        pending = input[read++];
        break;
      case Action::InternalStep:
        break;
    }
  }
  return FuelExhausted{};
}

StringSet stop_set(const StoppingMachine& machine, std::size_t depth, std::size_t fuel) {
  StringSet out;
  std::vector<Branch> stack{{machine.initial(), {}, std::nullopt, 0}};
  while (!stack.empty()) {
    Branch b = std::move(stack.back());
    stack.pop_back();
    while (b.steps < fuel) {
      Step s = machine.step(b.state, b.pending);
      ++b.steps;
      b.pending.reset();
      b.state = std::move(s.state);
      if (s.action == Action::Halt) {
        out.insert(b.read);
        break;
      }
      if (s.action == Action::RequestBit) {
        if (b.read.size() == depth) break;
        Branch one = b;
        one.read = one.read.child(true);
        one.pending = true;
        stack.push_back(std::move(one));
        b.read = b.read.child(false);
        b.pending = false;
      }
    }
  }
  return out;
}

StoppingMachine machine_from_enumerator(EnumeratorScript script) {
  if (!check_prefix_free(script)) throw ConfigError("enumerator script is not prefix-free");
  auto emitted = std::make_shared<const EnumeratorScript>(std::move(script));
  // Tape layout: [next emission to examine, awaiting-bit flag, bits read...].
  auto step = [emitted](const WorkTape& in, std::optional<bool> bit) -> Step {
    WorkTape tape = in;
    if (tape[1] != 0) {
      tape.push_back(bit.value_or(false) ? 1 : 0);
      tape[1] = 0;
      tape[0] = 0;
    }
    const auto i = static_cast<std::size_t>(tape[0]);
    if (i >= emitted->size()) return {std::move(tape), Action::InternalStep};
    tape[0] = static_cast<std::int64_t>(i + 1);
    const BitString read = tape_bits(tape, 2);
    const BitString& e = (*emitted)[i];
    if (e == read) return {std::move(tape), Action::Halt};
    if (is_prefix(read, e)) {
      tape[1] = 1;
      return {std::move(tape), Action::RequestBit};
    }
    return {std::move(tape), Action::InternalStep};
  };
  return StoppingMachine("from-enumerator", WorkTape{0, 0}, std::move(step));
}

std::size_t ample_fuel(const EnumeratorScript& script) {
  std::size_t longest = 0;
  for (const auto& s : script) longest = std::max(longest, s.size());
  return (script.size() + 1) * (longest + 1) * 2;
}

EnumeratorScript enumerator_from_machine(const StoppingMachine& machine, std::size_t depth,
                                         std::size_t fuel) {
  EnumeratorScript out;
  std::vector<Branch> runs{{machine.initial(), {}, std::nullopt, 0}};
  while (!runs.empty()) {
    std::vector<Branch> next;
    for (auto& b : runs) {
      if (b.steps >= fuel) continue;
      Step s = machine.step(b.state, b.pending);
      ++b.steps;
      b.pending.reset();
      b.state = std::move(s.state);
      if (s.action == Action::Halt) {
        out.push_back(b.read);
      } else if (s.action == Action::RequestBit) {
        if (b.read.size() == depth) continue;
        Branch one = b;
        one.read = one.read.child(true);
        one.pending = true;
        b.read = b.read.child(false);
        b.pending = false;
        next.push_back(std::move(b));
        next.push_back(std::move(one));
      } else {
        next.push_back(std::move(b));
      }
    }
    std::stable_sort(next.begin(), next.end(), bfs_less);
    runs = std::move(next);
  }
  return out;
}

EnumeratorScript trim_script(const EnumeratorScript& script) {
  EnumeratorScript out;
  PrefixFreeSet kept;
  for (const auto& s : script) {
    if (kept.try_insert(s)) out.push_back(s);
  }
  return out;
}

namespace machines {

StoppingMachine immediate_halt() {
  return StoppingMachine("halt", {}, [](const WorkTape& t, std::optional<bool>) {
    return Step{t, Action::Halt};
  });
}

StoppingMachine loop_forever() {
  return StoppingMachine("loop", {}, [](const WorkTape& t, std::optional<bool>) {
    return Step{t, Action::InternalStep};
  });
}

StoppingMachine halt_after_reads(std::size_t reads) {
  const auto limit = static_cast<std::int64_t>(reads);
  return StoppingMachine("reads", {0}, [limit](const WorkTape& in, std::optional<bool> bit) {
    WorkTape t = in;
    if (bit) ++t[0];
    return Step{t, t[0] == limit ? Action::Halt : Action::RequestBit};
  });
}

StoppingMachine halt_after_ones(std::size_t ones) {
  const auto limit = static_cast<std::int64_t>(ones);
  return StoppingMachine("ones", {0}, [limit](const WorkTape& in, std::optional<bool> bit) {
    WorkTape t = in;
    if (bit.value_or(false)) ++t[0];
    return Step{t, t[0] == limit ? Action::Halt : Action::RequestBit};
  });
}

StoppingMachine hashed(std::uint64_t seed) {
  // Tape layout: [idle steps taken at this prefix, bits read...].
  return StoppingMachine("hashed", {0}, [seed](const WorkTape& in, std::optional<bool> bit) {
    WorkTape t = in;
    if (bit) {
      t.push_back(*bit ? 1 : 0);
      t[0] = 0;
    }
    const BitString read = tape_bits(t, 1);
    const std::uint64_t h = mix64(fnv1a(read.str(), mix64(seed)));
    const auto idle = static_cast<std::int64_t>(h % 4);
    if (t[0] < idle) {
      ++t[0];
      return Step{t, Action::InternalStep};
    }
    const std::uint64_t roll = (h >> 8) % 100;
    if (roll < 30) return Step{t, Action::Halt};
    if (roll < 38) return Step{t, Action::InternalStep};  // stuck here forever
    return Step{t, Action::RequestBit};
  });
}

StoppingMachine by_name(const std::string& name, std::uint64_t param) {
  if (name == "halt") return immediate_halt();
  if (name == "loop") return loop_forever();
  if (name == "reads") return halt_after_reads(param);
  if (name == "ones") return halt_after_ones(param);
  if (name == "hashed") return hashed(param);
  throw ConfigError("unknown machine family: " + name);
}

}  // namespace machines

}  // namespace stoptime
