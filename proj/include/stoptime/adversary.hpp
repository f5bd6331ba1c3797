#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stoptime/allocation.hpp"
#include "stoptime/bitstring.hpp"
#include "stoptime/random.hpp"

namespace stoptime {

/// "description is allocated to object at vertex" (and at its extensions).
struct Allocation {
  ObjectId object;
  BitString vertex;
  BitString description;
};

/// What the assigner sees: every declaration and allocation so far.
struct AdversaryBoard {
  std::size_t n = 0;
  int max_length = 0;  // descriptions longer than this do not count; may be negative
  DeclarationStream declarations;
  std::vector<Allocation> allocations;

  /// `d` may go to `object` at `v`: short enough, and not allocated to
  /// another object at a comparable vertex.
  bool legal(ObjectId object, const BitString& v, const BitString& d) const;

  /// Every legal description for `object` at `v`, shortest first.
  std::vector<BitString> legal_choices(ObjectId object, const BitString& v) const;
};

/// The opponent: answers each declaration with one description or passes.
class Assigner {
 public:
  virtual ~Assigner() = default;
  virtual std::string name() const = 0;
  virtual std::optional<BitString> respond(const AdversaryBoard& board, const Declaration& d,
                                           Rng& rng) = 0;
};

std::unique_ptr<Assigner> silent_assigner();
/// Shortest legal description; passes only when none is left.
std::unique_ptr<Assigner> greedy_assigner();
/// Longest legal description; passes only when none is left.
std::unique_ptr<Assigner> always_serve_assigner();
/// A random legal description, passing now and then.
std::unique_ptr<Assigner> random_assigner();
/// Always answers with the empty description, legal or not.
std::unique_ptr<Assigner> cheating_assigner();
/// Replays answers in declaration order: a bit string, or nothing to pass.
std::unique_ptr<Assigner> scripted_assigner(std::vector<std::optional<BitString>> answers);
/// "silent", "greedy", "always-serve", "random", or "cheater".
std::unique_ptr<Assigner> assigner_by_name(const std::string& name);

enum class AdversaryOutcome { GoalAchieved, AssignerContradiction, StrategyExhausted };
std::string to_string(AdversaryOutcome o);

struct AdversaryEvent {
  std::string kind;  // declare, allocate, pass, collision
  ObjectId object = 0;
  BitString vertex;
  std::optional<BitString> description;
  std::size_t level = 0;  // tower level of the declaration
};

struct AdversaryResult {
  AdversaryOutcome outcome = AdversaryOutcome::StrategyExhausted;
  std::optional<Declaration> witness;  // goal pair, or the offending declaration
  std::string reason;
  AdversaryBoard board;
  std::vector<AdversaryEvent> events;
  std::size_t max_declared = 0;  // most objects declared at one vertex
  std::size_t pigeonhole_stages = 0;
  std::size_t collisions = 0;
  std::size_t objects_used = 0;
  std::size_t iterations = 0;
};

/// Per-vertex declaration budget 2^(n-1).
std::size_t adversary_budget(std::size_t n);

/// Tower levels per call, 2^(n-2) - 1, and outer iterations, 2^(n-2).
std::size_t adversary_levels(std::size_t n);
std::size_t adversary_iterations(std::size_t n);

/// Plays the declaring side against `assigner`. Descriptions count when they
/// have at most 2n - c bits. Level 0 declares a fresh object; level j spreads
/// level j - 1 over all vertices 2n below, finds two results sharing their
/// top description, and re-declares one of those objects at the root. The
/// outer loop restarts inside the vertex left with a single object.
/// Requires 1 <= n <= 3 and c >= 1. Throws BudgetViolation if its own
/// declarations break the per-vertex budget.
AdversaryResult run_adversary(std::size_t n, Assigner& assigner, std::size_t c = 6,
                              std::uint64_t seed = 0);

}  // namespace stoptime
