#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stoptime/bitstring.hpp"
#include "stoptime/random.hpp"

namespace stoptime {

/// Colors are 1..k; 0 means "marked but not yet colored".
using Color = unsigned;

/// Bit c-1 set iff color c is present. Caps k at 64.
using ColorSet = std::uint64_t;

inline constexpr std::size_t kMaxColors = 64;

inline bool has_color(ColorSet s, Color c) { return ((s >> (c - 1)) & 1U) != 0; }
inline ColorSet color_bit(Color c) { return ColorSet{1} << (c - 1); }
std::size_t color_count(ColorSet s);

enum class ColoringStrategy { FirstFit, RankBased };

std::string to_string(ColoringStrategy s);
ColoringStrategy parse_strategy(const std::string& name);

/// The online antichain coloring game on the full binary tree.
///
/// Alice marks vertices, keeping at most k marks on every branch; Bob colors
/// each new mark so that comparable vertices never share a color. The state
/// caches the marked rank r(x) and the set C(x) of colors used in the
/// x-subtree for every ancestor of a mark.
class ColoringGame {
 public:
  ColoringGame(std::size_t k, std::size_t depth);

  /// Builds a state from an arbitrary assignment, legal or not. For tests
  /// and for checking hand-built positions.
  static ColoringGame from_assignment(std::size_t k, std::size_t depth,
                                      const std::map<BitString, Color>& colors);

  std::size_t k() const { return k_; }
  std::size_t depth() const { return depth_; }

  /// Whether marking `v` now is a legal Alice move.
  bool can_mark(const BitString& v) const;

  /// Alice's move. Throws PathBudgetExceeded if some branch through `v`
  /// would carry more than k marks, ConfigError if `v` is already marked,
  /// too deep, or the previous mark is still uncolored.
  void mark(const BitString& v);

  /// Bob: the smallest color not used on any vertex comparable with `v`.
  Color color_first_fit(const BitString& v);

  /// Bob: keeps |C(x)| = r(x) everywhere. Follows the rank increase from `v`
  /// towards the root; if it reaches the root the lowest color missing from
  /// C(root) is used, otherwise at the first ancestor whose rank did not
  /// change, a color of the heavier child's subtree missing from the lighter
  /// (v-side) one.
  Color color_rank_based(const BitString& v);

  /// mark followed by the given strategy.
  Color play(const BitString& v, ColoringStrategy strategy);

  std::size_t marked_rank(const BitString& v) const;
  ColorSet subtree_colors(const BitString& v) const;

  /// Marked vertices with their colors (0 while uncolored).
  const std::map<BitString, Color>& marks() const { return marks_; }

  /// |C(x)| == r(x) at every vertex.
  bool rank_invariant_holds() const;

 private:
  struct Node {
    std::size_t rank = 0;
    ColorSet colors = 0;
  };

  Node node(const BitString& v) const;
  std::size_t marked_ancestors(const BitString& v) const;
  void refresh_ranks(const BitString& v);
  void assign(const BitString& v, Color c);
  void require_pending(const BitString& v) const;

  std::size_t k_;
  std::size_t depth_;
  std::map<BitString, Color> marks_;
  std::unordered_map<BitString, Node> cache_;  // prefixes of marked vertices
  std::optional<BitString> pending_;
};

/// No comparable pair shares a color and every color is in 1..k.
bool verify_coloring(const ColoringGame& game);

/// Alice's move source. Returns nothing when it has no further move.
class AlicePlayer {
 public:
  virtual ~AlicePlayer() = default;
  virtual std::optional<BitString> next(const ColoringGame& game, Rng& rng) = 0;
};

/// Uniformly random legal vertices; gives up after `attempts` misses in a row.
std::unique_ptr<AlicePlayer> random_alice(std::size_t attempts = 64);

/// Prefers marking above existing marks and filling deep sibling subtrees,
/// which forces Bob to juggle colors along long chains.
std::unique_ptr<AlicePlayer> climbing_alice(std::size_t attempts = 64);

/// Replays a fixed list of vertices, legal or not.
std::unique_ptr<AlicePlayer> scripted_alice(std::vector<BitString> moves);

/// Announcement "S(vertex) < bound from now on". Bounds for one vertex only
/// decrease over time.
struct Announcement {
  BitString vertex;
  std::size_t bound;
};
using UpperBoundSchedule = std::vector<Announcement>;

/// Final (smallest) announced bound per vertex. Throws ConfigError if a
/// bound is 0, a vertex is too deep, or a bound for a vertex fails to decrease.
std::map<BitString, std::size_t> final_bounds(const UpperBoundSchedule& schedule,
                                              std::size_t depth);

/// On every branch and for every n, fewer than 2^n vertices have S < n.
bool schedule_in_class(const UpperBoundSchedule& schedule, std::size_t depth);

/// (n, color rendered as an n-bit string).
using FamilyKey = std::pair<std::size_t, BitString>;

/// Runs one coloring game with k = 2^n per level n = 1..max bound, feeding
/// it the vertices with S < n in announcement order. Family (n, c) holds the
/// vertices colored c in game n. Propagates PathBudgetExceeded when the
/// schedule leaves the class; throws ConfigError if 2^n would exceed 64.
std::map<FamilyKey, PrefixFreeSet> schedule_to_families(
    const UpperBoundSchedule& schedule, std::size_t depth,
    ColoringStrategy strategy = ColoringStrategy::FirstFit);

}  // namespace stoptime
