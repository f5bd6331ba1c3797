#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "stoptime/bitstring.hpp"

namespace stoptime {

/// (description, condition, object).
struct Triple {
  BitString description;
  BitString condition;
  BitString object;

  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

/// Time-ordered enumeration of triples.
using TripleStream = std::vector<Triple>;

/// Complexity value; std::nullopt stands for +infinity (no description).
using Complexity = std::optional<std::size_t>;

/// `a <= b` with nullopt treated as +infinity.
bool complexity_leq(const Complexity& a, const Complexity& b);

/// A pair of stored triples sharing a description, with comparable
/// conditions and different objects.
struct UniquenessViolation {
  Triple first;
  Triple second;
};

struct ValidationReport {
  std::vector<UniquenessViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// A finite description mode.
///
/// The stored triples are a base: a triple (p, x, y) stands for (p, x', y)
/// for every extension x' of x. Conditions are bounded by `depth`.
/// Construction does not enforce uniqueness; use validate_mode or build the
/// mode through trim_to_mode.
class DescriptionMode {
 public:
  DescriptionMode() = default;

  /// Throws DepthExceeded if a condition is longer than `depth`.
  DescriptionMode(std::vector<Triple> triples, std::size_t depth);

  const std::vector<Triple>& triples() const { return triples_; }
  std::size_t depth() const { return depth_; }
  bool empty() const { return triples_.empty(); }
  std::size_t size() const { return triples_.size(); }

  /// The object reached by `description` at `condition` under prefix
  /// semantics, if any. For an invalid mode the first stored match wins.
  std::optional<BitString> evaluate(const BitString& description,
                                    const BitString& condition) const;

  bool operator==(const DescriptionMode&) const = default;

 private:
  std::vector<Triple> triples_;  // sorted, duplicates removed
  std::size_t depth_ = 0;
};

ValidationReport validate_mode(const DescriptionMode& mode);

/// Replays `stream`, admitting each triple only if the mode stays valid.
DescriptionMode trim_to_mode(const TripleStream& stream, std::size_t depth);

/// min |p| over stored (p, z, y) with z a prefix of x.
Complexity complexity_monotone(const DescriptionMode& mode, const BitString& object,
                               const BitString& condition);

/// min |p| over stored (p, x, y) with condition exactly x.
Complexity complexity_plain(const DescriptionMode& mode, const BitString& object,
                            const BitString& condition);

/// The mode with every triple copied to every extension of its condition up
/// to the mode depth. Exponential in depth; meant for small checks.
DescriptionMode exact_closure(const DescriptionMode& mode);

/// The m-th input mode contributes (0^m 1 p, x, y) for each of its triples.
DescriptionMode join_modes(const std::vector<DescriptionMode>& modes);

/// Fixed-width length code for a mode of the given depth:
/// width = ceil(log2(depth + 1)).
std::size_t length_code_width(std::size_t depth);
BitString encode_length(std::size_t length, std::size_t depth);

struct LengthModeResult {
  DescriptionMode mode;
  std::vector<Triple> dropped;  // input triples that could not be carried over
};

/// Replaces every object y by encode_length(|y|). Triples whose object is
/// longer than the depth (no code) or that would break uniqueness are
/// dropped, in stored order, and reported.
LengthModeResult to_length_mode(const DescriptionMode& mode);

/// Inverse direction: (p, u, z) whenever (p, u, code(n)) holds semantically,
/// |u| >= n and z is the n-bit prefix of u. When a stored condition is
/// shorter than n, its extensions of length n are stored instead.
DescriptionMode from_length_mode(const DescriptionMode& mode);

/// For each description p, the set of x with (p, x, x) in the mode.
std::map<BitString, PrefixFreeSet> mode_to_families(const DescriptionMode& mode);

/// Diagonal embedding: (p, y, y) for every y emitted under p.
/// Throws ConfigError if some family is not prefix-free.
DescriptionMode families_to_mode(const std::map<BitString, std::vector<BitString>>& families,
                                 std::size_t depth);

}  // namespace stoptime
