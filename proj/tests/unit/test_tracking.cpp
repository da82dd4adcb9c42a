#include "rydion/errors.hpp"
#include "rydion/internal_hamiltonian.hpp"
#include "rydion/tracking.hpp"

#include "../support.hpp"

#include <doctest.h>

#include <set>

using namespace rydion;
using testing_support::species;

TEST_SUITE("tracking") {

TEST_CASE("tracks are continuous and labelled bijectively") {
  const auto sp = species("ca40", 5);
  const BasisSet basis = build_basis(30, sp, 5);
  const RadialSet radial(sp, basis.radial_keys());
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.2 * i);
  TrackOptions opt;
  const AdiabaticTrack tr = sweep_and_track(basis, radial, grid, 0.0, opt);
  REQUIRE(tr.tracks() == basis.size());
  std::set<PBLabel> seen(tr.labels.begin(), tr.labels.end());
  CHECK(seen.size() == tr.tracks());
  for (size_t p = 1; p < grid.size(); ++p)
    for (size_t k = 0; k < tr.tracks(); ++k) CHECK(tr.overlap_prev[p][k] >= opt.fail_below);
  // vectors are eigenvectors of H at every stored point
  for (size_t p : {size_t(0), size_t(7), grid.size() - 1}) {
    const Eigen::MatrixXd H = assemble(basis, radial, {tr.B[p], 0.0});
    const Eigen::MatrixXd R = H * tr.vectors[p] - tr.vectors[p] * tr.energies[p].asDiagonal();
    CHECK(R.cwiseAbs().maxCoeff() < 1e-12);
  }
  // at 4 T the nS track is nearly pure Paschen-Back
  const PBLabel s{30, 0, 0, -1};
  const size_t k = tr.track_of(s);
  CHECK(uncoupled_weight(basis, tr.vectors.back().col(static_cast<Eigen::Index>(k)), s) > 0.9);
  CHECK(tr.twomj[k] == -1);
  CHECK_THROWS_AS(tr.track_of(PBLabel{31, 0, 0, -1}), LookupError);
  CHECK_THROWS_AS(tr.point_of(0.1), LookupError);
}

TEST_CASE("dipole element along tracks") {
  const auto sp = species("ca40", 2);
  const BasisSet basis = build_basis(30, sp, 2);
  const RadialSet radial(sp, basis.radial_keys());
  const AdiabaticTrack tr = sweep_and_track(basis, radial, {0.0, 0.5, 1.0, 1.5, 2.0});
  const Eigen::MatrixXd z = dipole_matrix(basis, radial, 0);
  const PBLabel s{30, 0, 0, -1}, p{30, 1, 0, -1};
  const double d = dipole_element(tr, z, s, p, 2.0);
  CHECK(d == doctest::Approx(dipole_element(tr, z, p, s, 2.0)));
  // Paschen-Back limit: |<s 0|r cos|p 0>| = R / sqrt(3)
  const double R = std::abs(radial.integral({30, 0, 1}, {30, 1, 3}, 1));
  CHECK(d == doctest::Approx(R / std::sqrt(3.0)).epsilon(0.05));
  CHECK_THROWS_AS(dipole_element(tr, z, s, p, 0.7), LookupError);
}

TEST_CASE("labels do not depend on the grid") {
  // 45S sits inside the 43 high-l manifold; coarse and fine sweeps must agree on which track is S
  const auto sp = species("ca40", 5);
  const BasisSet basis = build_basis(45, sp, 5);
  const RadialSet radial(sp, basis.radial_keys());
  const Eigen::MatrixXd z = dipole_matrix(basis, radial, 0);
  std::vector<double> fine;
  for (int i = 1; i <= 80; ++i) fine.push_back(0.05 * i);
  const AdiabaticTrack a = sweep_and_track(basis, radial, {0.5, 1.0, 1.5, 2.0});
  const AdiabaticTrack b = sweep_and_track(basis, radial, fine);
  const PBLabel s{45, 0, 0, -1}, p{45, 1, 0, -1};
  CHECK(dipole_element(a, z, s, p, 2.0) == doctest::Approx(dipole_element(b, z, s, p, 2.0)).epsilon(1e-3));
  CHECK(uncoupled_weight(basis, b.vectors[b.point_of(2.0)].col(b.track_of(s)), s) > 0.5);
}

TEST_CASE("thread count does not change results") {
  const auto sp = species("ca40", 3);
  const BasisSet basis = build_basis(25, sp, 3);
  const RadialSet r1(sp, basis.radial_keys(), {}, 1);
  const RadialSet r4(sp, basis.radial_keys(), {}, 4);
  TrackOptions o1, o4;
  o1.threads = 1;
  o4.threads = 4;
  const AdiabaticTrack a = sweep_and_track(basis, r1, {0.0, 1.0, 2.0}, 0.0, o1);
  const AdiabaticTrack b = sweep_and_track(basis, r4, {0.0, 1.0, 2.0}, 0.0, o4);
  for (size_t p = 0; p < 3; ++p) CHECK((a.energies[p] - b.energies[p]).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.labels == b.labels);
}

TEST_CASE("grid validation") {
  const auto sp = species("ca40", 2);
  const BasisSet basis = build_basis(20, sp, 2);
  const RadialSet radial(sp, basis.radial_keys());
  CHECK_THROWS_AS(sweep_and_track(basis, radial, {1.0, 0.5}), DomainError);
  CHECK_THROWS_AS(sweep_and_track(basis, radial, {}), DomainError);
}

}
