#pragma once

#include <cstddef>

#include "stoptime/allocation.hpp"
#include "stoptime/bitstring.hpp"
#include "stoptime/coloring.hpp"
#include "stoptime/description_mode.hpp"
#include "stoptime/random.hpp"
#include "stoptime/stop_machine.hpp"

namespace stoptime {

// Seeded random instances for property suites.

/// Uniform length in [0, max_length], uniform bits.
BitString random_bits(Rng& rng, std::size_t max_length);

/// Random strings trimmed to a prefix-free script of at most `count` strings.
EnumeratorScript random_prefix_free_script(Rng& rng, std::size_t count, std::size_t max_length);

/// Triples with short descriptions and objects, conditions up to `depth`.
TripleStream random_triples(Rng& rng, std::size_t count, std::size_t depth,
                            std::size_t max_description = 3, std::size_t max_object = 3);

/// trim_to_mode of a random stream.
DescriptionMode random_valid_mode(Rng& rng, std::size_t count, std::size_t depth);

/// A random schedule of decreasing bounds in 1..max_bound, kept only while
/// it stays in the cardinality class.
UpperBoundSchedule random_upper_bound_schedule(Rng& rng, std::size_t count, std::size_t depth,
                                               std::size_t max_bound);

/// Random pair announcements over `objects` objects, kept only while the
/// schedule stays in the two-argument class.
PairSchedule random_pair_schedule(Rng& rng, std::size_t count, std::size_t objects,
                                  std::size_t depth, std::size_t max_bound);

}  // namespace stoptime
