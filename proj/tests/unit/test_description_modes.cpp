#include "doctest.h"
#include "oracles.hpp"
#include "stoptime/description_mode.hpp"
#include "stoptime/errors.hpp"
#include "stoptime/generators.hpp"

using namespace stoptime;

namespace {
BitString b(const char* s) { return BitString::parse(s); }
Triple t(const char* p, const char* x, const char* y) { return {b(p), b(x), b(y)}; }
DescriptionMode mode(std::vector<Triple> ts, std::size_t depth = 4) {
  return DescriptionMode(std::move(ts), depth);
}
}  // namespace

TEST_CASE("validate_mode") {
  CHECK(validate_mode(mode({t("0", "1", "11")})).ok());
  const auto report = validate_mode(mode({t("0", "1", "11"), t("0", "10", "00")}));
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].first.condition == b("1"));
  CHECK(report.violations[0].second.condition == b("10"));
  CHECK(validate_mode(mode({})).ok());
  // Same object on compatible conditions is fine.
  CHECK(validate_mode(mode({t("0", "1", "11"), t("0", "10", "11")})).ok());
  // Incomparable conditions never clash.
  CHECK(validate_mode(mode({t("0", "0", "1"), t("0", "1", "0")})).ok());
}

TEST_CASE("trim_to_mode is order dependent") {
  CHECK(trim_to_mode({t("0", "1", "11")}, 4) == mode({t("0", "1", "11")}));
  CHECK(trim_to_mode({t("0", "1", "11"), t("0", "10", "00")}, 4) == mode({t("0", "1", "11")}));
  CHECK(trim_to_mode({t("0", "10", "00"), t("0", "1", "11")}, 4) == mode({t("0", "10", "00")}));
}

TEST_CASE("complexity_monotone") {
  CHECK(complexity_monotone(mode({t("", "", "1")}), b("1"), b("0110")) == 0);
  CHECK(complexity_monotone(mode({t("0", "1", "1"), t("00", "0", "0")}), b("1"), b("11")) == 1);
  CHECK_FALSE(complexity_monotone(mode({t("0", "1", "1")}), b("0"), b("1")).has_value());
}

TEST_CASE("complexity_plain uses exact conditions") {
  CHECK(complexity_plain(mode({t("0", "1", "1")}), b("1"), b("1")) == 1);
  CHECK_FALSE(complexity_plain(mode({t("0", "1", "1")}), b("1"), b("11")).has_value());
  CHECK(complexity_plain(mode({t("", "0", "1"), t("00", "0", "1")}), b("1"), b("0")) == 0);
}

TEST_CASE("join_modes") {
  CHECK(join_modes({mode({t("", "", "1")})}) == mode({t("1", "", "1")}));
  CHECK(join_modes({mode({}), mode({t("0", "1", "1")})}) == mode({t("010", "1", "1")}));
  CHECK(join_modes({}).empty());
}

TEST_CASE("to_length_mode") {
  const DescriptionMode d = mode({t("0", "11", "11")});
  const auto r = to_length_mode(d);
  CHECK(r.mode.triples() == std::vector<Triple>{{b("0"), b("11"), encode_length(2, 4)}});
  CHECK(r.dropped.empty());
  // Both objects have length 1, so they map to the same code and stay.
  const auto same = to_length_mode(mode({t("0", "1", "1"), t("0", "11", "0")}));
  CHECK(same.mode.size() == 2);
  CHECK(same.dropped.empty());
  CHECK(to_length_mode(mode({})).mode.empty());
  // Objects longer than the depth have no length code.
  const auto too_long = to_length_mode(mode({t("0", "1", "11111")}));
  CHECK(too_long.mode.empty());
  CHECK(too_long.dropped.size() == 1);
}

TEST_CASE("from_length_mode") {
  const auto one = from_length_mode(mode({{b("0"), b("11"), encode_length(1, 4)}}));
  CHECK(std::find(one.triples().begin(), one.triples().end(), t("0", "11", "1")) !=
        one.triples().end());
  const auto two = from_length_mode(mode({{b("0"), b("1"), encode_length(2, 4)}}));
  CHECK(two.triples() == std::vector<Triple>{t("0", "10", "10"), t("0", "11", "11")});
  CHECK(from_length_mode(mode({})).empty());
}

TEST_CASE("mode_to_families") {
  const auto fams = mode_to_families(mode({t("0", "1", "1"), t("0", "0", "0")}));
  REQUIRE(fams.size() == 1);
  CHECK(fams.at(b("0")).members() == StringSet{b("0"), b("1")});
  CHECK(mode_to_families(mode({t("0", "1", "1")})).at(b("0")).members() == StringSet{b("1")});
  CHECK(mode_to_families(mode({})).empty());
  CHECK_THROWS_AS(mode_to_families(mode({t("0", "1", "1"), t("0", "11", "11")})),
                  InvariantViolation);
}

TEST_CASE("families_to_mode") {
  CHECK(families_to_mode({{b("0"), {b("1")}}}, 4) == mode({t("0", "1", "1")}));
  CHECK(families_to_mode({{b("0"), {b("1"), b("00")}}}, 4) ==
        mode({t("0", "1", "1"), t("0", "00", "00")}));
  CHECK(families_to_mode({}, 4).empty());
  CHECK_THROWS_AS(families_to_mode({{b("0"), {b("1"), b("10")}}}, 4), ConfigError);
}

TEST_CASE("conditions deeper than the mode are rejected") {
  CHECK_THROWS_AS(mode({t("0", "00000", "1")}), DepthExceeded);
}

TEST_CASE("exact_closure copies every triple downward") {
  const auto c = exact_closure(mode({t("0", "1", "1")}, 2));
  CHECK(c.triples() == std::vector<Triple>{t("0", "1", "1"), t("0", "10", "1"), t("0", "11", "1")});
}

TEST_CASE("random modes agree with the brute-force oracles") {
  Rng rng(derive_seed(21, 0));
  for (int i = 0; i < 300; ++i) {
    const std::size_t depth = uniform(rng, 1, 5);
    const TripleStream stream = random_triples(rng, 16, depth);
    const DescriptionMode d = trim_to_mode(stream, depth);
    CHECK(oracle::pairwise_valid(d.triples()));
    CHECK(validate_mode(DescriptionMode(stream, depth)).ok() == oracle::pairwise_valid(stream));
    const DescriptionMode other = random_valid_mode(rng, 8, depth);
    const DescriptionMode joined = join_modes({d, other});
    for (const auto& x : strings_up_to(depth)) {
      for (const auto& tr : stream) {
        CHECK(complexity_monotone(d, tr.object, x) == oracle::monotone(d.triples(), tr.object, x));
        CHECK(complexity_monotone(joined, tr.object, x) ==
              oracle::join({d.triples(), other.triples()}, tr.object, x));
      }
    }
  }
}
