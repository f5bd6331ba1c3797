#include "stoptime/coloring.hpp"

#include <algorithm>
#include <bit>

#include "stoptime/config.hpp"
#include "stoptime/errors.hpp"

namespace stoptime {
namespace {

Color lowest_missing(ColorSet used) {
  Color c = 1;
  while (c <= kMaxColors && has_color(used, c)) ++c;
  return c;
}

Color lowest_in(ColorSet s) { return s == 0 ? 0 : static_cast<Color>(std::countr_zero(s)) + 1; }

}  // namespace

std::size_t color_count(ColorSet s) { return static_cast<std::size_t>(std::popcount(s)); }

std::string to_string(ColoringStrategy s) {
  return s == ColoringStrategy::FirstFit ? "first-fit" : "rank";
}

ColoringStrategy parse_strategy(const std::string& name) {
  if (name == "first-fit") return ColoringStrategy::FirstFit;
  if (name == "rank") return ColoringStrategy::RankBased;
  throw ConfigError("unknown coloring strategy: " + name);
}

ColoringGame::ColoringGame(std::size_t k, std::size_t depth) : k_(k), depth_(depth) {
  if (k == 0 || k > kMaxColors) throw ConfigError("color budget k must be in 1..64");
  check_depth_bound(depth);
}

ColoringGame ColoringGame::from_assignment(std::size_t k, std::size_t depth,
                                           const std::map<BitString, Color>& colors) {
  ColoringGame g(k, depth);
  g.marks_ = colors;
  std::vector<BitString> prefixes;
  for (const auto& [v, c] : colors) {
    for (auto& p : path_to_root(v)) {
      if (g.cache_.emplace(p, Node{}).second) prefixes.push_back(std::move(p));
    }
  }
  std::sort(prefixes.begin(), prefixes.end(),
            [](const BitString& a, const BitString& b) { return a.size() > b.size(); });
  for (const auto& p : prefixes) {
    Node& n = g.cache_[p];
    const auto marked = g.marks_.find(p);
    if (p.size() < depth) {
      const Node a = g.node(p.child(false));
      const Node b = g.node(p.child(true));
      n.rank = std::max(a.rank, b.rank);
      n.colors = a.colors | b.colors;
    }
    if (marked != g.marks_.end()) {
      ++n.rank;
      if (marked->second >= 1 && marked->second <= kMaxColors) n.colors |= color_bit(marked->second);
    }
  }
  return g;
}

ColoringGame::Node ColoringGame::node(const BitString& v) const {
  auto it = cache_.find(v);
  return it == cache_.end() ? Node{} : it->second;
}

std::size_t ColoringGame::marked_rank(const BitString& v) const { return node(v).rank; }

ColorSet ColoringGame::subtree_colors(const BitString& v) const { return node(v).colors; }

std::size_t ColoringGame::marked_ancestors(const BitString& v) const {
  std::size_t count = 0;
  for (std::size_t len = 0; len < v.size(); ++len) count += marks_.count(v.prefix(len));
  return count;
}

bool ColoringGame::can_mark(const BitString& v) const {
  if (v.size() > depth_ || marks_.count(v) != 0) return false;
  return marked_ancestors(v) + 1 + marked_rank(v) <= k_;
}

void ColoringGame::mark(const BitString& v) {
  check_vertex(v, depth_);
  if (pending_) throw ConfigError("vertex \"" + pending_->str() + "\" is still uncolored");
  if (marks_.count(v) != 0) throw ConfigError("vertex \"" + v.str() + "\" is already marked");
  if (!can_mark(v)) {
    throw PathBudgetExceeded("marking \"" + v.str() + "\" puts more than " +
                             std::to_string(k_) + " marks on a branch");
  }
  marks_.emplace(v, 0);
  pending_ = v;
  refresh_ranks(v);
}

void ColoringGame::refresh_ranks(const BitString& v) {
  for (const auto& x : path_to_root(v)) {
    const std::size_t below = std::max(marked_rank(x.child(false)), marked_rank(x.child(true)));
    cache_[x].rank = below + marks_.count(x);
  }
}

void ColoringGame::assign(const BitString& v, Color c) {
  if (c == 0 || c > k_) {
    throw InvariantViolation("Bob needs color " + std::to_string(c) + " but k = " +
                             std::to_string(k_));
  }
  marks_[v] = c;
  for (const auto& x : path_to_root(v)) cache_[x].colors |= color_bit(c);
  pending_.reset();
}

void ColoringGame::require_pending(const BitString& v) const {
  if (!pending_ || *pending_ != v) {
    throw ConfigError("vertex \"" + v.str() + "\" is not the pending uncolored mark");
  }
}

Color ColoringGame::color_first_fit(const BitString& v) {
  require_pending(v);
  ColorSet used = subtree_colors(v);
  for (std::size_t len = 0; len < v.size(); ++len) {
    auto it = marks_.find(v.prefix(len));
    if (it != marks_.end()) used |= color_bit(it->second);
  }
  const Color c = lowest_missing(used);
  assign(v, c);
  return c;
}

Color ColoringGame::color_rank_based(const BitString& v) {
  require_pending(v);
  // Walk up while the rank increase keeps propagating. It stops at the
  // parent of `side` as soon as the other child is at least as heavy.
  BitString side = v;
  while (!side.empty()) {
    const BitString other = side.sibling();
    if (marked_rank(side) <= marked_rank(other)) {
      const ColorSet spare = subtree_colors(other) & ~subtree_colors(side);
      if (spare == 0) {
        throw InvariantViolation("rank strategy found no spare color below \"" +
                                 side.parent().str() + "\"");
      }
      const Color c = lowest_in(spare);
      assign(v, c);
      return c;
    }
    side = side.parent();
  }
  const Color c = lowest_missing(subtree_colors(BitString{}));
  assign(v, c);
  return c;
}

Color ColoringGame::play(const BitString& v, ColoringStrategy strategy) {
  mark(v);
  return strategy == ColoringStrategy::FirstFit ? color_first_fit(v) : color_rank_based(v);
}

bool ColoringGame::rank_invariant_holds() const {
  return std::all_of(cache_.begin(), cache_.end(), [](const auto& kv) {
    return color_count(kv.second.colors) == kv.second.rank;
  });
}

bool verify_coloring(const ColoringGame& game) {
  const auto& marks = game.marks();
  for (const auto& [v, c] : marks) {
    if (c == 0) continue;
    if (c > game.k()) return false;
    for (std::size_t len = 0; len < v.size(); ++len) {
      auto it = marks.find(v.prefix(len));
      if (it != marks.end() && it->second == c) return false;
    }
  }
  return true;
}

namespace {

BitString random_vertex(Rng& rng, std::size_t depth) {
  const std::size_t len = uniform(rng, 0, depth);
  return BitString::from_uint(uniform(rng, 0, ~std::uint64_t{0}), len);
}

class RandomAlice : public AlicePlayer {
 public:
  explicit RandomAlice(std::size_t attempts) : attempts_(attempts) {}
  std::optional<BitString> next(const ColoringGame& game, Rng& rng) override {
    for (std::size_t i = 0; i < attempts_; ++i) {
      BitString v = random_vertex(rng, game.depth());
      if (game.can_mark(v)) return v;
    }
    return std::nullopt;
  }

 private:
  std::size_t attempts_;
};

class ClimbingAlice : public AlicePlayer {
 public:
  explicit ClimbingAlice(std::size_t attempts) : attempts_(attempts) {}
  std::optional<BitString> next(const ColoringGame& game, Rng& rng) override {
    const auto& marks = game.marks();
    for (std::size_t i = 0; i < attempts_; ++i) {
      BitString v;
      if (marks.empty() || coin(rng, 0.3)) {
        // Start deep so later marks have to go above it.
        v = BitString::from_uint(uniform(rng, 0, ~std::uint64_t{0}), game.depth());
      } else {
        auto it = marks.begin();
        std::advance(it, static_cast<long>(uniform(rng, 0, marks.size() - 1)));
        const BitString& base = it->first;
        if (coin(rng, 0.5) && !base.empty()) {
          v = base.prefix(uniform(rng, 0, base.size() - 1));  // an ancestor
        } else if (!base.empty()) {
          // Deep vertex under the sibling of some ancestor.
          BitString branch = base.prefix(uniform(rng, 1, base.size())).sibling();
          const std::size_t extra = uniform(rng, 0, game.depth() - branch.size());
          v = branch + BitString::from_uint(uniform(rng, 0, ~std::uint64_t{0}), extra);
        }
      }
      if (game.can_mark(v)) return v;
    }
    return std::nullopt;
  }

 private:
  std::size_t attempts_;
};

class ScriptedAlice : public AlicePlayer {
 public:
  explicit ScriptedAlice(std::vector<BitString> moves) : moves_(std::move(moves)) {}
  std::optional<BitString> next(const ColoringGame&, Rng&) override {
    if (pos_ == moves_.size()) return std::nullopt;
    return moves_[pos_++];
  }

 private:
  std::vector<BitString> moves_;
  std::size_t pos_ = 0;
};

}  // namespace

std::unique_ptr<AlicePlayer> random_alice(std::size_t attempts) {
  return std::make_unique<RandomAlice>(attempts);
}

std::unique_ptr<AlicePlayer> climbing_alice(std::size_t attempts) {
  return std::make_unique<ClimbingAlice>(attempts);
}

std::unique_ptr<AlicePlayer> scripted_alice(std::vector<BitString> moves) {
  return std::make_unique<ScriptedAlice>(std::move(moves));
}

std::map<BitString, std::size_t> final_bounds(const UpperBoundSchedule& schedule,
                                              std::size_t depth) {
  std::map<BitString, std::size_t> out;
  for (const auto& a : schedule) {
    check_vertex(a.vertex, depth);
    if (a.bound == 0) throw ConfigError("bound 0 announced for \"" + a.vertex.str() + "\"");
    auto [it, fresh] = out.emplace(a.vertex, a.bound);
    if (!fresh) {
      if (a.bound >= it->second) {
        throw ConfigError("bound for \"" + a.vertex.str() + "\" does not decrease");
      }
      it->second = a.bound;
    }
  }
  return out;
}

bool schedule_in_class(const UpperBoundSchedule& schedule, std::size_t depth) {
  const auto bounds = final_bounds(schedule, depth);
  // Maximal chains of announced vertices end at announced vertices.
  for (const auto& [w, unused] : bounds) {
    std::map<std::size_t, std::size_t> by_bound;
    for (const auto& p : path_to_root(w)) {
      auto it = bounds.find(p);
      if (it != bounds.end()) ++by_bound[it->second];
    }
    std::size_t below = 0;  // vertices with bound <= n, i.e. S < n
    for (const auto& [b, count] : by_bound) {
      below += count;
      if (b < 63 && below >= (std::size_t{1} << b)) return false;
    }
  }
  return true;
}

std::map<FamilyKey, PrefixFreeSet> schedule_to_families(const UpperBoundSchedule& schedule,
                                                        std::size_t depth,
                                                        ColoringStrategy strategy) {
  const auto bounds = final_bounds(schedule, depth);
  std::size_t top = 0;
  for (const auto& [v, b] : bounds) top = std::max(top, b);
  if (top > 6) throw ConfigError("bounds above 6 would need more than 64 colors");

  std::vector<ColoringGame> games;
  for (std::size_t n = 1; n <= top; ++n) games.emplace_back(std::size_t{1} << n, depth);

  std::map<FamilyKey, StringSet> families;
  for (const auto& a : schedule) {
    for (std::size_t n = a.bound; n <= top; ++n) {
      ColoringGame& g = games[n - 1];
      if (g.marks().count(a.vertex) != 0) continue;
      const Color c = g.play(a.vertex, strategy);
      families[{n, BitString::from_uint(c - 1, n)}].insert(a.vertex);
    }
  }
  std::map<FamilyKey, PrefixFreeSet> out;
  for (auto& [key, members] : families) out.emplace(key, PrefixFreeSet(std::move(members)));
  return out;
}

}  // namespace stoptime
