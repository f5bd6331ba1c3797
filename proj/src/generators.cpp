#include "stoptime/generators.hpp"

#include <algorithm>
#include <map>

namespace stoptime {

BitString random_bits(Rng& rng, std::size_t max_length) {
  const std::size_t len = uniform(rng, 0, max_length);
  return BitString::from_uint(uniform(rng, 0, ~std::uint64_t{0}), len);
}

EnumeratorScript random_prefix_free_script(Rng& rng, std::size_t count, std::size_t max_length) {
  EnumeratorScript raw;
  for (std::size_t i = 0; i < count; ++i) {
    // Empty strings would swallow everything; keep them rare.
    BitString s = random_bits(rng, max_length);
    if (s.empty() && !coin(rng, 0.02)) s = BitString::repeat(coin(rng, 0.5), 1);
    raw.push_back(std::move(s));
  }
  return trim_script(raw);
}

TripleStream random_triples(Rng& rng, std::size_t count, std::size_t depth,
                            std::size_t max_description, std::size_t max_object) {
  TripleStream out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({random_bits(rng, max_description), random_bits(rng, depth),
                   random_bits(rng, max_object)});
  }
  return out;
}

DescriptionMode random_valid_mode(Rng& rng, std::size_t count, std::size_t depth) {
  TripleStream ts = random_triples(rng, count, depth);
  // Diagonal triples exercise the x = y quantities.
  for (std::size_t i = 0; i < count / 2; ++i) {
    BitString x = random_bits(rng, depth);
    ts.push_back({random_bits(rng, 3), x, x});
  }
  std::shuffle(ts.begin(), ts.end(), rng);
  return trim_to_mode(ts, depth);
}

UpperBoundSchedule random_upper_bound_schedule(Rng& rng, std::size_t count, std::size_t depth,
                                               std::size_t max_bound) {
  UpperBoundSchedule out;
  std::map<BitString, std::size_t> current;
  for (std::size_t i = 0; i < count; ++i) {
    Announcement a{random_bits(rng, depth), 0};
    auto it = current.find(a.vertex);
    const std::size_t top = it == current.end() ? max_bound : it->second - 1;
    if (top == 0) continue;
    a.bound = uniform(rng, 1, top);
    out.push_back(a);
    if (schedule_in_class(out, depth)) {
      current[a.vertex] = a.bound;
    } else {
      out.pop_back();
    }
  }
  return out;
}

PairSchedule random_pair_schedule(Rng& rng, std::size_t count, std::size_t objects,
                                  std::size_t depth, std::size_t max_bound) {
  PairSchedule out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({uniform(rng, 0, objects - 1), random_bits(rng, depth),
                   uniform(rng, 0, max_bound)});
    if (!pair_schedule_in_class(out)) out.pop_back();
  }
  return out;
}

}  // namespace stoptime
