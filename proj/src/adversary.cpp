#include "stoptime/adversary.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "stoptime/errors.hpp"

namespace stoptime {
namespace {

class SilentAssigner : public Assigner {
 public:
  std::string name() const override { return "silent"; }
  std::optional<BitString> respond(const AdversaryBoard&, const Declaration&, Rng&) override {
    return std::nullopt;
  }
};

class GreedyAssigner : public Assigner {
 public:
  std::string name() const override { return "greedy"; }
  std::optional<BitString> respond(const AdversaryBoard& board, const Declaration& d,
                                   Rng&) override {
    auto choices = board.legal_choices(d.object, d.vertex);
    if (choices.empty()) return std::nullopt;
    return choices.front();
  }
};

class AlwaysServeAssigner : public Assigner {
 public:
  std::string name() const override { return "always-serve"; }
  std::optional<BitString> respond(const AdversaryBoard& board, const Declaration& d,
                                   Rng&) override {
    auto choices = board.legal_choices(d.object, d.vertex);
    if (choices.empty()) return std::nullopt;
    return choices.back();
  }
};

class RandomAssigner : public Assigner {
 public:
  std::string name() const override { return "random"; }
  std::optional<BitString> respond(const AdversaryBoard& board, const Declaration& d,
                                   Rng& rng) override {
    auto choices = board.legal_choices(d.object, d.vertex);
    if (choices.empty() || coin(rng, 0.05)) return std::nullopt;
    return choices[uniform(rng, 0, choices.size() - 1)];
  }
};

class CheatingAssigner : public Assigner {
 public:
  std::string name() const override { return "cheater"; }
  std::optional<BitString> respond(const AdversaryBoard&, const Declaration&, Rng&) override {
    return BitString{};
  }
};

class ScriptedAssigner : public Assigner {
 public:
  explicit ScriptedAssigner(std::vector<std::optional<BitString>> answers)
      : answers_(std::move(answers)) {}
  std::string name() const override { return "scripted"; }
  std::optional<BitString> respond(const AdversaryBoard&, const Declaration&, Rng&) override {
    if (pos_ == answers_.size()) return std::nullopt;
    return answers_[pos_++];
  }

 private:
  std::vector<std::optional<BitString>> answers_;
  std::size_t pos_ = 0;
};

// Early exit from the recursion with a final outcome.
struct Finished {
  AdversaryOutcome outcome;
  Declaration witness;
  std::string reason;
};

// Result of one tower-building call: at `vertex` only `object` is declared and it
// holds `descriptions`; `top` was allocated at the call's root.
struct Tower {
  BitString vertex;
  ObjectId object;
  std::set<BitString> descriptions;
  BitString top;
};

class Adversary {
 public:
  Adversary(std::size_t n, Assigner& assigner, std::size_t c, std::uint64_t seed)
      : n_(n), assigner_(assigner), rng_(seed) {
    result_.board.n = n;
    result_.board.max_length = static_cast<int>(2 * n) - static_cast<int>(c);
  }

  AdversaryResult run() {
    try {
      BitString root;
      for (std::size_t t = 0; t < adversary_iterations(n_); ++t) {
        ++result_.iterations;
        root = build_tower(root, adversary_levels(n_)).vertex;
      }
      result_.outcome = AdversaryOutcome::StrategyExhausted;
      result_.reason = "every declaration was served; the description supply is large enough";
    } catch (const Finished& f) {
      result_.outcome = f.outcome;
      result_.witness = f.witness;
      result_.reason = f.reason;
    }
    result_.objects_used = next_object_;
    return std::move(result_);
  }

 private:
  Tower build_tower(const BitString& root, std::size_t level) {
    if (level == 0) {
      const ObjectId z = next_object_++;
      BitString d = declare({z, root}, 0);
      return {root, z, {d}, d};
    }
    ++result_.pigeonhole_stages;
    std::vector<Tower> towers;
    std::map<BitString, std::size_t> first_with_top;
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    for (auto& w : extensions_of_length(root, root.size() + 2 * n_)) {
      towers.push_back(build_tower(w, level - 1));
      auto [it, fresh] = first_with_top.emplace(towers.back().top, towers.size() - 1);
      if (!fresh && !pair) pair = {it->second, towers.size() - 1};
    }
    if (!pair) throw InvariantViolation("no two subtrees share a top description");
    ++result_.collisions;
    Tower chosen = towers[pair->first];
    result_.events.push_back({"collision", chosen.object, towers[pair->second].vertex, chosen.top,
                              level});
    BitString e = declare({chosen.object, root}, level);
    if (chosen.descriptions.count(e) != 0) {
      throw InvariantViolation("re-declared object received one of its blocked descriptions");
    }
    chosen.descriptions.insert(e);
    chosen.top = e;
    return chosen;
  }

  BitString declare(const Declaration& d, std::size_t level) {
    AdversaryBoard& board = result_.board;
    board.declarations.push_back(d);
    result_.events.push_back({"declare", d.object, d.vertex, std::nullopt, level});
    check_budget(d.vertex);
    std::optional<BitString> answer = assigner_.respond(board, d, rng_);
    if (!answer) {
      result_.events.push_back({"pass", d.object, d.vertex, std::nullopt, level});
      throw Finished{AdversaryOutcome::GoalAchieved, d,
                     "no description of length <= 2n - c for the declared object"};
    }
    if (!board.legal(d.object, d.vertex, *answer)) {
      result_.events.push_back({"allocate", d.object, d.vertex, answer, level});
      throw Finished{AdversaryOutcome::AssignerContradiction, d,
                     "assigner allocated \"" + answer->str() +
                         "\" against its own constraints"};
    }
    board.allocations.push_back({d.object, d.vertex, *answer});
    result_.events.push_back({"allocate", d.object, d.vertex, answer, level});
    return *answer;
  }

  void check_budget(const BitString& v) {
    const auto& decls = result_.board.declarations;
    auto count_at = [&](const BitString& w) { return declared_at(decls, w).size(); };
    std::size_t worst = count_at(v);
    for (const auto& e : decls) {
      if (is_prefix(v, e.vertex)) worst = std::max(worst, count_at(e.vertex));
    }
    result_.max_declared = std::max(result_.max_declared, worst);
    if (worst > adversary_budget(n_)) {
      throw BudgetViolation(std::to_string(worst) + " objects declared at one vertex, budget " +
                            std::to_string(adversary_budget(n_)));
    }
  }

  std::size_t n_;
  Assigner& assigner_;
  Rng rng_;
  AdversaryResult result_;
  ObjectId next_object_ = 0;
};

}  // namespace

bool AdversaryBoard::legal(ObjectId object, const BitString& v, const BitString& d) const {
  if (static_cast<int>(d.size()) > max_length) return false;
  return std::none_of(allocations.begin(), allocations.end(), [&](const Allocation& a) {
    return a.description == d && a.object != object && are_compatible(a.vertex, v);
  });
}

std::vector<BitString> AdversaryBoard::legal_choices(ObjectId object, const BitString& v) const {
  std::vector<BitString> out;
  if (max_length < 0) return out;
  for (const auto& d : strings_up_to(static_cast<std::size_t>(max_length))) {
    if (legal(object, v, d)) out.push_back(d);
  }
  return out;
}

std::unique_ptr<Assigner> silent_assigner() { return std::make_unique<SilentAssigner>(); }
std::unique_ptr<Assigner> greedy_assigner() { return std::make_unique<GreedyAssigner>(); }
std::unique_ptr<Assigner> always_serve_assigner() {
  return std::make_unique<AlwaysServeAssigner>();
}
std::unique_ptr<Assigner> random_assigner() { return std::make_unique<RandomAssigner>(); }
std::unique_ptr<Assigner> cheating_assigner() { return std::make_unique<CheatingAssigner>(); }
std::unique_ptr<Assigner> scripted_assigner(std::vector<std::optional<BitString>> answers) {
  return std::make_unique<ScriptedAssigner>(std::move(answers));
}

std::unique_ptr<Assigner> assigner_by_name(const std::string& name) {
  if (name == "silent") return silent_assigner();
  if (name == "greedy") return greedy_assigner();
  if (name == "always-serve") return always_serve_assigner();
  if (name == "random") return random_assigner();
  if (name == "cheater") return cheating_assigner();
  throw ConfigError("unknown assigner: " + name);
}

std::string to_string(AdversaryOutcome o) {
  switch (o) {
    case AdversaryOutcome::GoalAchieved:
      return "goal-achieved";
    case AdversaryOutcome::AssignerContradiction:
      return "assigner-contradiction";
    case AdversaryOutcome::StrategyExhausted:
      return "strategy-exhausted";
  }
  return "?";
}

std::size_t adversary_budget(std::size_t n) { return std::size_t{1} << (n - 1); }

std::size_t adversary_iterations(std::size_t n) { return n >= 2 ? std::size_t{1} << (n - 2) : 1; }

std::size_t adversary_levels(std::size_t n) { return adversary_iterations(n) - 1; }

AdversaryResult run_adversary(std::size_t n, Assigner& assigner, std::size_t c,
                              std::uint64_t seed) {
  if (n < 1 || n > 3) throw ConfigError("adversary needs 1 <= n <= 3");
  if (c < 1) throw ConfigError("gap constant c must be at least 1");
  return Adversary(n, assigner, c, seed).run();
}

}  // namespace stoptime
