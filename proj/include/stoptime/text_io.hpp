#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stoptime/bitstring.hpp"
#include "stoptime/description_mode.hpp"

namespace stoptime {

// Text formats shared by the CLI and the fixtures.
//
// Modes: one triple per line, `p<TAB>x<TAB>y`. Scripts: one string per line.
// In both, '#' starts a comment line, blank lines are skipped and the empty
// string is written as `-`.

BitString parse_field(const std::string& field);
std::string format_field(const BitString& s);

TripleStream read_triples(std::istream& in);
void write_mode(std::ostream& out, const DescriptionMode& mode);

std::vector<BitString> read_script(std::istream& in);
void write_script(std::ostream& out, const std::vector<BitString>& script);

}  // namespace stoptime
