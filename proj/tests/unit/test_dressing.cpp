#include "rydion/crystal.hpp"
#include "rydion/dressing.hpp"
#include "rydion/errors.hpp"
#include "rydion/internal_hamiltonian.hpp"
#include "rydion/tracking.hpp"
#include "rydion/units.hpp"

#include "../support.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

using namespace rydion;

TEST_SUITE("dressing") {

TEST_CASE("dressed states diagonalize the S-P block") {
  for (double dmw : {-3.0, -0.4, 0.0, 0.7, 5.0})
    for (double omw : {0.0, 0.3, 1.0, 4.0}) {
      if (dmw == 0 && omw == 0) continue;
      const double dL = 0.25;
      const DressedPair p = dressed_states(dmw, omw, dL);
      Eigen::Matrix2d H;
      H << dL, -omw / 2, -omw / 2, dL + dmw;
      CHECK((H * p.plus - p.delta_plus * p.plus).norm() < 1e-12);
      CHECK((H * p.minus - p.delta_minus * p.minus).norm() < 1e-12);
      const Eigen::Matrix2d id = p.plus * p.plus.transpose() + p.minus * p.minus.transpose();
      CHECK((id - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(p.delta_plus + p.delta_minus == doctest::Approx(2 * dL + dmw));
      CHECK(p.delta_plus - p.delta_minus == doctest::Approx(std::hypot(dmw, omw)));
    }
  CHECK_THROWS_AS(dressed_states(0, 0), DomainError);
}

TEST_CASE("resonant dressing is an equal superposition") {
  const DressedPair p = dressed_states(0.0, 1.0);
  CHECK(std::abs(p.minus(0)) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(std::abs(p.minus(1)) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(p.c_plus == doctest::Approx(1.0));
  const TwoLevelDrive t = two_level_drive(0.0, 1.0, 0.2, 0.8);
  CHECK(t.Omega == doctest::Approx(0.8 / (2 * std::sqrt(2.0))));
  CHECK(t.Delta == doctest::Approx(p.delta_minus + 0.2));
}

TEST_CASE("pair interaction geometry") {
  const double d = 900 * si::a0, R = 17.5e-6;
  const auto side = pair_interaction(d, R);
  CHECK(side.energy == doctest::Approx(si::coulomb_k * si::e * si::e * d * d / (R * R * R)));
  CHECK(side.nu == doctest::Approx(side.omega / (2 * std::numbers::pi)));
  const auto magic = pair_interaction(d, R, std::acos(1 / std::sqrt(3.0)));
  CHECK(std::abs(magic.angular) < 1e-15);
  CHECK(pair_interaction(d, R, 0.0).energy == doctest::Approx(-2 * side.energy));
  // R^-3 scaling, hence V0 ~ w_rho^2 through R0^3 ~ 1 / w_rho^2
  CHECK(pair_interaction(d, R / 2).energy == doctest::Approx(8 * side.energy));
  CHECK_THROWS_AS(pair_interaction(d, 0.0), DomainError);
}

TEST_CASE("charge-dipole coefficients are antisymmetric") {
  const double M = 39.962591 * si::amu, wr = 2 * std::numbers::pi * 220e3;
  const CrystalConfig cfg{3, M, wr, wr, 2 * wr, true};
  const Equilibrium eq = solve_equilibrium(cfg);
  const Eigen::MatrixXd c = charge_dipole_coefficients(eq, 900 * si::a0);
  CHECK((c + c.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * c.cwiseAbs().maxCoeff());
}

TEST_CASE("quadrupole gradient shift") {
  CHECK(quadrupole_gradient_shift(10e-6) == doctest::Approx(1.44e6).epsilon(0.01));
  CHECK(quadrupole_gradient_shift(20e-6) == doctest::Approx(quadrupole_gradient_shift(10e-6) / 8));
  CHECK(quadrupole_gradient_shift(17.5e-6) == doctest::Approx(2.7e5).epsilon(0.02));
}

TEST_CASE("V0 along a B sweep") {
  const auto sp = testing_support::species("ca40", 5);
  const BasisSet basis = build_basis(30, sp, 5);
  const RadialSet radial(sp, basis.radial_keys());
  const AdiabaticTrack tr = sweep_and_track(basis, radial, {0.5, 1.0, 1.5, 2.0});
  const Eigen::MatrixXd z = dipole_matrix(basis, radial, 0);
  const auto pts = v0_of_B(tr, z, 30, sp.mass_kg(), 2.0);
  REQUIRE(pts.size() == 4);
  for (const auto& p : pts) {
    CHECK(p.wz / p.wrho == doctest::Approx(2.0));
    CHECK(p.planar_ok);
    CHECK(p.V0_nu == doctest::Approx(p.V0 / si::h));
    CHECK(p.V0 == doctest::Approx(pair_interaction(p.d, p.R0).energy));
  }
  // w_rho ~ B at fixed ratio; below l-mixing V0 grows
  CHECK(pts[1].V0 > pts[0].V0);
  CHECK_FALSE(v0_of_B(tr, z, 30, sp.mass_kg(), 1.5)[0].planar_ok);
}

}
