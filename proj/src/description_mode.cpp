#include "stoptime/description_mode.hpp"

#include <algorithm>

#include "stoptime/config.hpp"
#include "stoptime/errors.hpp"

namespace stoptime {
namespace {

bool conflicts(const Triple& a, const Triple& b) {
  return a.description == b.description && a.object != b.object &&
         are_compatible(a.condition, b.condition);
}

}  // namespace

bool complexity_leq(const Complexity& a, const Complexity& b) {
  if (!b) return true;
  return a && *a <= *b;
}

DescriptionMode::DescriptionMode(std::vector<Triple> triples, std::size_t depth)
    : triples_(std::move(triples)), depth_(depth) {
  for (const auto& t : triples_) check_vertex(t.condition, depth_);
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
}

std::optional<BitString> DescriptionMode::evaluate(const BitString& description,
                                                   const BitString& condition) const {
  for (const auto& t : triples_) {
    if (t.description == description && is_prefix(t.condition, condition)) return t.object;
  }
  return std::nullopt;
}

ValidationReport validate_mode(const DescriptionMode& mode) {
  ValidationReport report;
  const auto& ts = mode.triples();
  // Triples are sorted by description, so each group is a contiguous run.
  for (std::size_t begin = 0; begin < ts.size();) {
    std::size_t end = begin;
    while (end < ts.size() && ts[end].description == ts[begin].description) ++end;
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = i + 1; j < end; ++j) {
        if (conflicts(ts[i], ts[j])) report.violations.push_back({ts[i], ts[j]});
      }
    }
    begin = end;
  }
  return report;
}

DescriptionMode trim_to_mode(const TripleStream& stream, std::size_t depth) {
  std::vector<Triple> kept;
  for (const auto& t : stream) {
    check_vertex(t.condition, depth);
    const bool clash = std::any_of(kept.begin(), kept.end(),
                                   [&](const Triple& k) { return conflicts(k, t); });
    if (!clash) kept.push_back(t);
  }
  return DescriptionMode(std::move(kept), depth);
}

Complexity complexity_monotone(const DescriptionMode& mode, const BitString& object,
                               const BitString& condition) {
  check_vertex(condition, mode.depth());
  Complexity best;
  for (const auto& t : mode.triples()) {
    if (t.object == object && is_prefix(t.condition, condition)) {
      if (!best || t.description.size() < *best) best = t.description.size();
    }
  }
  return best;
}

Complexity complexity_plain(const DescriptionMode& mode, const BitString& object,
                            const BitString& condition) {
  check_vertex(condition, mode.depth());
  Complexity best;
  for (const auto& t : mode.triples()) {
    if (t.object == object && t.condition == condition) {
      if (!best || t.description.size() < *best) best = t.description.size();
    }
  }
  return best;
}

DescriptionMode exact_closure(const DescriptionMode& mode) {
  std::vector<Triple> out;
  for (const auto& t : mode.triples()) {
    for (std::size_t len = t.condition.size(); len <= mode.depth(); ++len) {
      for (auto& x : extensions_of_length(t.condition, len)) {
        out.push_back({t.description, std::move(x), t.object});
      }
    }
  }
  return DescriptionMode(std::move(out), mode.depth());
}

DescriptionMode join_modes(const std::vector<DescriptionMode>& modes) {
  std::vector<Triple> out;
  std::size_t depth = 0;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    depth = std::max(depth, modes[m].depth());
    const BitString frame = BitString::repeat(false, m).child(true);
    for (const auto& t : modes[m].triples()) {
      out.push_back({frame + t.description, t.condition, t.object});
    }
  }
  return DescriptionMode(std::move(out), depth);
}

std::size_t length_code_width(std::size_t depth) {
  std::size_t width = 0;
  while ((std::size_t{1} << width) < depth + 1) ++width;
  return width;
}

BitString encode_length(std::size_t length, std::size_t depth) {
  if (length > depth) {
    throw ConfigError("length " + std::to_string(length) + " has no code at depth " +
                      std::to_string(depth));
  }
  return BitString::from_uint(length, length_code_width(depth));
}

LengthModeResult to_length_mode(const DescriptionMode& mode) {
  LengthModeResult result;
  std::vector<Triple> kept;
  for (const auto& t : mode.triples()) {
    if (t.object.size() > mode.depth()) {
      result.dropped.push_back(t);
      continue;
    }
    Triple mapped{t.description, t.condition, encode_length(t.object.size(), mode.depth())};
    const bool clash = std::any_of(kept.begin(), kept.end(),
                                   [&](const Triple& k) { return conflicts(k, mapped); });
    if (clash) {
      result.dropped.push_back(t);
    } else {
      kept.push_back(std::move(mapped));
    }
  }
  result.mode = DescriptionMode(std::move(kept), mode.depth());
  return result;
}

DescriptionMode from_length_mode(const DescriptionMode& mode) {
  const std::size_t width = length_code_width(mode.depth());
  std::vector<Triple> out;
  for (const auto& t : mode.triples()) {
    if (t.object.size() != width) continue;  // not a length code
    const std::size_t n = t.object.to_uint();
    if (n > mode.depth()) continue;
    if (t.condition.size() >= n) {
      out.push_back({t.description, t.condition, t.condition.prefix(n)});
    } else {
      for (auto& w : extensions_of_length(t.condition, n)) {
        out.push_back({t.description, w, w});
      }
    }
  }
  return DescriptionMode(std::move(out), mode.depth());
}

std::map<BitString, PrefixFreeSet> mode_to_families(const DescriptionMode& mode) {
  std::map<BitString, StringSet> sets;
  for (const auto& t : mode.triples()) {
    if (t.object.size() <= mode.depth() && is_prefix(t.condition, t.object)) {
      sets[t.description].insert(t.object);
    }
  }
  std::map<BitString, PrefixFreeSet> out;
  for (auto& [p, s] : sets) {
    if (!check_prefix_free(s)) {
      throw InvariantViolation("diagonal family of \"" + p.str() +
                               "\" is not prefix-free; the mode is invalid");
    }
    out.emplace(p, PrefixFreeSet(std::move(s)));
  }
  return out;
}

DescriptionMode families_to_mode(const std::map<BitString, std::vector<BitString>>& families,
                                 std::size_t depth) {
  std::vector<Triple> out;
  for (const auto& [p, emitted] : families) {
    if (!check_prefix_free(emitted)) {
      throw ConfigError("family of \"" + p.str() + "\" is not prefix-free; trim it first");
    }
    for (const auto& y : emitted) out.push_back({p, y, y});
  }
  return DescriptionMode(std::move(out), depth);
}

}  // namespace stoptime
