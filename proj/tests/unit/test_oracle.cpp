#include "doctest.h"
#include "oracles.hpp"
#include "stoptime/errors.hpp"
#include "stoptime/generators.hpp"
#include "stoptime/oracle.hpp"

using namespace stoptime;

namespace {
BitString b(const char* s) { return BitString::parse(s); }
Triple t(const char* p, const char* x, const char* y) { return {b(p), b(x), b(y)}; }
DescriptionMode mode(std::vector<Triple> ts, std::size_t depth = 2) {
  return DescriptionMode(std::move(ts), depth);
}
}  // namespace

TEST_CASE("describes_with_oracle") {
  const auto d = mode({t("0", "00", "0")});
  CHECK(describes_with_oracle(d, b("0"), b("0")) == StringSet{b("00")});
  CHECK(describes_with_oracle(d, b("1"), b("0")).empty());
  CHECK(describes_with_oracle(mode({t("0", "00", "0"), t("0", "01", "0")}), b("0"), b("0")) ==
        StringSet{b("00"), b("01")});
}

TEST_CASE("covered_below") {
  CHECK(covered_below(mode({t("", "", "0")}), b("0"), 1, 2));
  const auto two = mode({t("0", "00", "0"), t("1", "01", "0")});
  CHECK(covered_below(two, b("0"), 2, 2));
  CHECK_FALSE(covered_below(two, b("0"), 1, 2));
  CHECK_THROWS_AS(covered_below(two, b("0"), 1, 3), ConfigError);
  CHECK_THROWS_AS(covered_below(two, b("000"), 1, 2), ConfigError);
}

TEST_CASE("max_over_extensions") {
  CHECK(max_over_extensions(mode({t("", "", "0")}), b("0")) == 0);
  CHECK(max_over_extensions(mode({t("0", "00", "0"), t("1", "01", "0")}), b("0")) == 1);
  CHECK_FALSE(max_over_extensions(mode({t("0", "00", "0")}), b("0")).has_value());
}

TEST_CASE("check_oracle_inequality") {
  CHECK(check_oracle_inequality(mode({t("", "", "0")}), b("0"), 2));
  CHECK(check_oracle_inequality(mode({t("0", "00", "0"), t("1", "01", "0")}), b("0"), 2));
  CHECK(check_oracle_inequality(mode({t("0", "0", "0")}), b("0"), 2));
}

TEST_CASE("cardinality_check_oracle") {
  CHECK(cardinality_check_oracle(mode({}), 2));
  CHECK(cardinality_check_oracle(mode({t("", "", "0")}), 2));
}

TEST_CASE("exploratory quantities") {
  const auto d = mode({t("0", "00", "0"), t("1", "01", "0"), t("", "0", "0")});
  CHECK(finite_extension_max(d, b("0"), 2) == 1);
  CHECK(oracle_pair_max(d, b("0"), b("0"), 2) == 0);
  CHECK(oracle_pair_max(mode({t("0", "00", "1")}), b("1"), b("00"), 2) == 1);
}

TEST_CASE("max_over_extensions matches enumeration of all oracles") {
  Rng rng(derive_seed(51, 0));
  for (int i = 0; i < 300; ++i) {
    const std::size_t depth = uniform(rng, 1, 6);
    const DescriptionMode d = random_valid_mode(rng, 20, depth);
    for (const auto& x : strings_up_to(depth)) {
      const std::size_t horizon = uniform(rng, x.size(), depth);
      CHECK(max_over_extensions(d, x, horizon) == oracle::oracle_max(d.triples(), x, horizon));
    }
    CHECK(cardinality_check_oracle(d, depth));
  }
}
