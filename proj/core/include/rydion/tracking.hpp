#pragma once

#include "rydion/internal_hamiltonian.hpp"

#include <Eigen/Dense>
#include <vector>

namespace rydion {

struct TrackOptions {
  double refine_below = 0.9;  // bisect a step when a best overlap drops under this
  double fail_below = 0.5;    // give up if still under this at max depth
  int max_depth = 10;
  double degeneracy_tol = 1e-12;  // hartree
  int threads = 0;
  // Field where Paschen-Back labels are read off. Negative: the grid point with
  // the purest Paschen-Back assignment.
  double label_B = -1;
};

// Tracks are columns; index t is the same adiabatic state at every grid point.
struct AdiabaticTrack {
  std::vector<double> B;  // T, ascending
  double beta = 0;
  std::vector<Eigen::VectorXd> energies;  // hartree, per point
  std::vector<Eigen::MatrixXd> vectors;   // basis coordinates, per point
  std::vector<std::vector<double>> overlap_prev;  // per point, per track: smallest sub-step overlap since the previous point
  std::vector<PBLabel> labels;
  std::vector<int> twomj;
  size_t label_point = 0;
  int refinements = 0;

  size_t tracks() const { return labels.size(); }
  size_t track_of(const PBLabel& lab) const;  // LookupError if absent
  size_t point_of(double B) const;           // LookupError if B not on the grid
};

AdiabaticTrack sweep_and_track(const BasisSet& basis, const RadialSet& radial, const std::vector<double>& B_grid,
                               double beta = 0, const TrackOptions& opt = {});

// |<E_a(B)| z |E_b(B)>| in bohr; B must be a grid point
double dipole_element(const AdiabaticTrack& tr, const Eigen::MatrixXd& z, const PBLabel& a, const PBLabel& b,
                      double B);

}  // namespace rydion
