#include "stoptime/text_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "stoptime/errors.hpp"

namespace stoptime {
namespace {

std::string strip(const std::string& line) {
  const auto b = line.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = line.find_last_not_of(" \t\r");
  return line.substr(b, e - b + 1);
}

bool skip(const std::string& line) { return line.empty() || line.front() == '#'; }

}  // namespace

BitString parse_field(const std::string& field) {
  if (field == "-") return BitString{};
  return BitString::parse(field);
}

std::string format_field(const BitString& s) { return s.empty() ? "-" : s.str(); }

TripleStream read_triples(std::istream& in) {
  TripleStream out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip(raw);
    if (skip(line)) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, '\t');) fields.push_back(strip(f));
    if (fields.size() != 3) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected p<TAB>x<TAB>y");
    }
    try {
      out.push_back({parse_field(fields[0]), parse_field(fields[1]), parse_field(fields[2])});
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_mode(std::ostream& out, const DescriptionMode& mode) {
  for (const auto& t : mode.triples()) {
    out << format_field(t.description) << '\t' << format_field(t.condition) << '\t'
        << format_field(t.object) << '\n';
  }
}

std::vector<BitString> read_script(std::istream& in) {
  std::vector<BitString> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip(raw);
    if (skip(line)) continue;
    try {
      out.push_back(parse_field(line));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_script(std::ostream& out, const std::vector<BitString>& script) {
  for (const auto& s : script) out << format_field(s) << '\n';
}

}  // namespace stoptime
