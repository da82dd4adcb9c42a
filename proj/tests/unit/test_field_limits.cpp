#include "rydion/errors.hpp"
#include "rydion/field_limits.hpp"
#include "rydion/units.hpp"

#include <doctest.h>

#include <cmath>

using namespace rydion;

TEST_SUITE("field_limits") {

TEST_CASE("ionization gradient") {
  CHECK(ionization_gradient(50) == doctest::Approx(9.2e10).epsilon(0.02));
  CHECK(ionization_gradient(25) / ionization_gradient(50) == doctest::Approx(64.0));
  CHECK(std::abs(ionization_n(1e7) - 228) <= 1);
  const int n = ionization_n(1e9);
  CHECK(ionization_gradient(n) >= 1e9);
  CHECK(ionization_gradient(n + 1) < 1e9);
  CHECK_THROWS_AS(ionization_n(0.0), DomainError);
}

TEST_CASE("Landau threshold") {
  CHECK(std::abs(landau_threshold_n(2.0) - 52) <= 1);
  const int n = landau_threshold_n(2.0);
  CHECK(landau_threshold_field(n) < 2.0);
  CHECK(landau_threshold_field(n - 1) >= 2.0);
  CHECK(landau_threshold_field(20) / landau_threshold_field(40) == doctest::Approx(std::pow(2.0, 3.5)));
  CHECK_THROWS_AS(landau_threshold_n(0.0), DomainError);
}

TEST_CASE("quadrupole dominance gradient") {
  // e beta = e^2 B^2 / 8 m_e
  CHECK(quadrupole_dominance_gradient(1.0) == doctest::Approx(si::e / (8 * si::me)));
  CHECK(quadrupole_dominance_gradient(2.0) / quadrupole_dominance_gradient(1.0) == doctest::Approx(4.0));
}

}
