#pragma once

#include <cstddef>

#include "stoptime/bitstring.hpp"
#include "stoptime/description_mode.hpp"

namespace stoptime {

/// Conditions z with (p, z, x) stored: each z is the cylinder of oracles
/// X extending z for which p describes x.
StringSet describes_with_oracle(const DescriptionMode& mode, const BitString& p,
                                const BitString& x);

/// True iff every length-`horizon` extension of `x` lies in a cylinder
/// z with (p, z, x) stored for some |p| < n, i.e. C^X(x) < n for every
/// oracle X extending x. Requires |x| <= horizon <= mode depth.
bool covered_below(const DescriptionMode& mode, const BitString& x, std::size_t n,
                   std::size_t horizon);

/// S(x): the maximum over oracles X extending x of C^X(x). Computed as the
/// least covering n, minus one; nullopt if no n covers.
Complexity max_over_extensions(const DescriptionMode& mode, const BitString& x,
                               std::size_t horizon);
Complexity max_over_extensions(const DescriptionMode& mode, const BitString& x);

/// S(x) <= C(x | x*), with nullopt as +infinity.
bool check_oracle_inequality(const DescriptionMode& mode, const BitString& x,
                             std::size_t horizon);

/// On every length-`horizon` branch and for every n, fewer than 2^n
/// prefixes x of the branch have S(x) < n.
bool cardinality_check_oracle(const DescriptionMode& mode, std::size_t horizon);

// Exploratory quantities with no known relation to assert.

/// max over finite extensions z of x (|z| <= horizon) of C(x | z), with
/// exact-condition semantics.
Complexity finite_extension_max(const DescriptionMode& mode, const BitString& x,
                                std::size_t horizon);

/// max over oracles Y extending y of C^Y(x).
Complexity oracle_pair_max(const DescriptionMode& mode, const BitString& x, const BitString& y,
                           std::size_t horizon);

}  // namespace stoptime
