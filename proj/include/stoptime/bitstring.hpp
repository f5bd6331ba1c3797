#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace stoptime {

/// A finite binary string. Doubles as a vertex of the full binary tree
/// (the empty string is the root) and as description, condition, or object.
///
/// Bits are kept as an explicit sequence so that "", "0" and "00" stay
/// distinct. Ordering is lexicographic, which places every string directly
/// before its extensions.
class BitString {
 public:
  BitString() = default;

  /// Parses a string of '0'/'1' characters; throws ConfigError otherwise.
  static BitString parse(std::string_view text);

  /// The low `width` bits of `value`, most significant first.
  static BitString from_uint(std::uint64_t value, std::size_t width);

  /// Shortest binary rendering of `value` ("0" for zero).
  static BitString binary(std::uint64_t value);

  static BitString repeat(bool bit, std::size_t count);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] == '1'; }
  bool back() const { return bits_.back() == '1'; }

  BitString child(bool bit) const;
  BitString parent() const;   // pre: !empty()
  BitString sibling() const;  // pre: !empty()
  BitString prefix(std::size_t length) const;

  /// Value of the bits read as an unsigned binary number.
  std::uint64_t to_uint() const;

  BitString& operator+=(const BitString& other);
  friend BitString operator+(BitString a, const BitString& b) { return a += b; }

  const std::string& str() const { return bits_; }

  auto operator<=>(const BitString&) const = default;
  bool operator==(const BitString&) const = default;

 private:
  std::string bits_;
};

std::ostream& operator<<(std::ostream& os, const BitString& s);

using StringSet = std::set<BitString>;

/// True iff `a` is a (not necessarily proper) prefix of `b`.
bool is_prefix(const BitString& a, const BitString& b);

/// True iff `a` is a prefix of `b`, and a != b.
bool is_proper_prefix(const BitString& a, const BitString& b);

/// Comparable vertices: one is a prefix of the other.
bool are_compatible(const BitString& a, const BitString& b);

/// No member is a proper prefix of another member.
///
/// In lexicographic order a prefix sorts right before the strings extending
/// it, so only neighbours need comparing.
bool check_prefix_free(const StringSet& members);
bool check_prefix_free(std::vector<BitString> members);

/// All prefixes of `v`, from `v` itself down to the root.
std::vector<BitString> path_to_root(const BitString& v);

/// Every string of exactly `length` bits, in lexicographic order.
std::vector<BitString> strings_of_length(std::size_t length);

/// Every string of at most `depth` bits, shortest first.
std::vector<BitString> strings_up_to(std::size_t depth);

/// Every extension of `v` with exactly `length` bits (empty if too short).
std::vector<BitString> extensions_of_length(const BitString& v, std::size_t length);

/// A set whose members are pairwise incomparable.
class PrefixFreeSet {
 public:
  PrefixFreeSet() = default;

  /// Throws ConfigError if `members` is not prefix-free.
  explicit PrefixFreeSet(StringSet members);

  /// Adds `s` if it is incomparable with every member; returns whether it was added.
  bool try_insert(const BitString& s);

  /// The member that is a prefix of `s`, if any.
  const BitString* member_prefixing(const BitString& s) const;

  const StringSet& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const BitString& s) const { return members_.count(s) != 0; }

  bool operator==(const PrefixFreeSet&) const = default;

 private:
  StringSet members_;
};

}  // namespace stoptime

template <>
struct std::hash<stoptime::BitString> {
  std::size_t operator()(const stoptime::BitString& s) const noexcept {
    return std::hash<std::string>{}(s.str());
  }
};
