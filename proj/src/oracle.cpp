#include "stoptime/oracle.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "stoptime/config.hpp"
#include "stoptime/errors.hpp"

namespace stoptime {
namespace {

void check_horizon(const DescriptionMode& mode, const BitString& x, std::size_t horizon) {
  if (x.size() > horizon || horizon > mode.depth()) {
    throw ConfigError("need |x| <= horizon <= mode depth");
  }
}

// Does every length-`horizon` extension of v have a prefix in `cylinders`?
bool covers(const StringSet& cylinders, const BitString& v, std::size_t horizon) {
  for (const auto& p : path_to_root(v)) {
    if (cylinders.count(p) != 0) return true;
  }
  // Only cylinders strictly below v can still help.
  auto it = cylinders.upper_bound(v);
  if (it == cylinders.end() || !is_prefix(v, *it)) return false;
  if (v.size() >= horizon) return false;
  return covers(cylinders, v.child(false), horizon) && covers(cylinders, v.child(true), horizon);
}

// Cylinders where some description shorter than n yields `object`.
StringSet cylinders_below(const DescriptionMode& mode, const BitString& object, std::size_t n) {
  StringSet out;
  for (const auto& t : mode.triples()) {
    if (t.object == object && t.description.size() < n) out.insert(t.condition);
  }
  return out;
}

std::size_t longest_description(const DescriptionMode& mode, const BitString& object) {
  std::size_t m = 0;
  for (const auto& t : mode.triples()) {
    if (t.object == object) m = std::max(m, t.description.size());
  }
  return m;
}

Complexity least_cover(const DescriptionMode& mode, const BitString& object,
                       const BitString& root, std::size_t horizon) {
  const std::size_t limit = longest_description(mode, object) + 1;
  for (std::size_t n = 1; n <= limit; ++n) {
    if (covers(cylinders_below(mode, object, n), root, horizon)) return n - 1;
  }
  return std::nullopt;
}

}  // namespace

StringSet describes_with_oracle(const DescriptionMode& mode, const BitString& p,
                                const BitString& x) {
  StringSet out;
  for (const auto& t : mode.triples()) {
    if (t.description == p && t.object == x) out.insert(t.condition);
  }
  return out;
}

bool covered_below(const DescriptionMode& mode, const BitString& x, std::size_t n,
                   std::size_t horizon) {
  check_horizon(mode, x, horizon);
  return covers(cylinders_below(mode, x, n), x, horizon);
}

Complexity max_over_extensions(const DescriptionMode& mode, const BitString& x,
                               std::size_t horizon) {
  check_horizon(mode, x, horizon);
  return least_cover(mode, x, x, horizon);
}

Complexity max_over_extensions(const DescriptionMode& mode, const BitString& x) {
  return max_over_extensions(mode, x, mode.depth());
}

bool check_oracle_inequality(const DescriptionMode& mode, const BitString& x,
                             std::size_t horizon) {
  return complexity_leq(max_over_extensions(mode, x, horizon), complexity_monotone(mode, x, x));
}

bool cardinality_check_oracle(const DescriptionMode& mode, std::size_t horizon) {
  check_depth_bound(horizon);
  if (horizon > mode.depth()) throw ConfigError("horizon exceeds mode depth");
  std::map<BitString, std::size_t> value;  // finite S(x) only
  for (const auto& x : strings_up_to(horizon)) {
    if (auto s = max_over_extensions(mode, x, horizon)) value.emplace(x, *s);
  }
  for (const auto& leaf : strings_of_length(horizon)) {
    std::vector<std::size_t> on_branch;
    for (const auto& p : path_to_root(leaf)) {
      auto it = value.find(p);
      if (it != value.end()) on_branch.push_back(it->second);
    }
    std::sort(on_branch.begin(), on_branch.end());
    // With values sorted, #{S < n} is smallest just above each value.
    for (std::size_t i = 0; i < on_branch.size(); ++i) {
      const std::size_t n = on_branch[i] + 1;
      const std::size_t count = static_cast<std::size_t>(
          std::upper_bound(on_branch.begin(), on_branch.end(), on_branch[i]) - on_branch.begin());
      if (n < 63 && count >= (std::size_t{1} << n)) return false;
    }
  }
  return true;
}

Complexity finite_extension_max(const DescriptionMode& mode, const BitString& x,
                                std::size_t horizon) {
  check_horizon(mode, x, horizon);
  Complexity worst = std::size_t{0};
  for (std::size_t len = x.size(); len <= horizon; ++len) {
    for (const auto& z : extensions_of_length(x, len)) {
      const Complexity c = complexity_plain(mode, x, z);
      if (!c) return std::nullopt;
      worst = std::max(*worst, *c);
    }
  }
  return worst;
}

Complexity oracle_pair_max(const DescriptionMode& mode, const BitString& x, const BitString& y,
                           std::size_t horizon) {
  check_horizon(mode, y, horizon);
  return least_cover(mode, x, y, horizon);
}

}  // namespace stoptime
