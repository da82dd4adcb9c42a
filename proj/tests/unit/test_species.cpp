#include "rydion/errors.hpp"
#include "rydion/species.hpp"

#include "../support.hpp"

#include <doctest.h>

using namespace rydion;

TEST_SUITE("species") {

TEST_CASE("shipped species load") {
  const auto ca = testing_support::species("ca40", 5);
  CHECK(ca.label == "ca40");
  CHECK(ca.z_nuc == 20);
  CHECK(ca.lmax() == 5);
  CHECK(ca.alpha_cp == doctest::Approx(3.26));
  CHECK(ca.n_min(0) == 4);
  CHECK(ca.n_min(2) == 3);
  CHECK(ca.spin_orbit);
  const auto h = testing_support::species("hydrogenic");
  CHECK_FALSE(h.spin_orbit);
  CHECK(h.n_min(3) == 4);
}

TEST_CASE("missing l row is a config error") {
  CHECK_THROWS_AS(testing_support::species("ca40", 7), ConfigError);
  CHECK_THROWS_AS(parse_species("x 20 40 0\n0 1 0 0 1\n2 1 0 0 1\n"), ConfigError);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(parse_species(""), ConfigError);
  CHECK_THROWS_AS(parse_species("x 20 40\n"), ConfigError);
  CHECK_THROWS_AS(parse_species("x 20 40 0\n0 1 0 zero 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_species("x 20 40 0\n0 1 0 0 -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_species("x 20 40 0\n0 1 0 0 1\n0 1 0 0 1\n"), ConfigError);
  CHECK_THROWS_AS(resolve_species_path("nonexistent", RYDION_TEST_DATA_DIR), ConfigError);
}

TEST_CASE("comments and hash") {
  const auto a = parse_species("# c\nx 20 40 0  # tail\nspin_orbit off\n0 1 0 0 1\n");
  const auto b = parse_species("x 20 40 0\nspin_orbit off\n0 1 0 0 1\n");
  CHECK(a.hash() == b.hash());
  const auto c = parse_species("x 20 40 0\nspin_orbit off\n0 1.01 0 0 1\n");
  CHECK(a.hash() != c.hash());
}

}
