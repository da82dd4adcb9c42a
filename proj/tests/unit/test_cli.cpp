#include "../../tools/cli_support.hpp"

#include <doctest.h>

#include <numbers>

using namespace rydion;

TEST_SUITE("cli") {

TEST_CASE("frequency suffixes") {
  const double w = 2 * std::numbers::pi * 220e3;
  CHECK(cli::parse_angular_frequency("2pi*220kHz") == doctest::Approx(w));
  CHECK(cli::parse_angular_frequency("220 kHz") == doctest::Approx(w));
  CHECK(cli::parse_angular_frequency("0.22MHz") == doctest::Approx(w));
  CHECK(cli::parse_angular_frequency("1e6 rad/s") == doctest::Approx(1e6));
  CHECK_THROWS_AS(cli::parse_angular_frequency("220"), UnitError);
  CHECK_THROWS_AS(cli::parse_angular_frequency("220 furlongs"), UnitError);
}

TEST_CASE("grids") {
  const auto g = cli::parse_grid("0:2:5");
  REQUIRE(g.size() == 5);
  CHECK(g[4] == 2.0);
  CHECK(g[1] == doctest::Approx(0.5));
  CHECK(cli::parse_grid("0.5,1,3").size() == 3);
  CHECK(cli::parse_grid("1.5").size() == 1);
  CHECK_THROWS_AS(cli::parse_grid("2:1:3"), ConfigError);
  CHECK_THROWS_AS(cli::parse_grid("1,1"), ConfigError);
  CHECK_THROWS_AS(cli::parse_grid("a:b:c"), ConfigError);
  CHECK(cli::parse_int_list("30,40,50") == std::vector<int>{30, 40, 50});
  CHECK_THROWS_AS(cli::parse_int_list("30.5"), ConfigError);
}

TEST_CASE("hash is stable") {
  CHECK(cli::fnv1a("") == 1469598103934665603ull);
  CHECK(cli::fnv1a("a") != cli::fnv1a("b"));
}

}
