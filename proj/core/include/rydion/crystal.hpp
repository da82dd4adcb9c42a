#pragma once

#include "rydion/trap.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace rydion {

// Ions in a rotating-frame harmonic well: radial (wx, wy) and axial wz, rad/s.
struct CrystalConfig {
  int N = 3;
  double M = 0;  // kg
  double wx = 0, wy = 0, wz = 0;
  bool planar = true;  // z frozen at 0

  static CrystalConfig from_trap(int N, double M, const TrapFrequencies& f, bool planar = true);
};

struct Equilibrium {
  std::vector<Eigen::Vector3d> pos;  // m, centre of mass at the origin
  double energy = 0;                 // J, potential energy
  double grad_norm = 0;              // dimensionless
  double length_unit = 0;            // (e^2 / (4 pi eps0 M wx^2))^(1/3), m
  bool saddle = false;
  Eigen::MatrixXd distance;          // R_ij, m
  Eigen::MatrixXd theta, phi;        // polar angle from z and azimuth of R_i - R_j

  int size() const { return static_cast<int>(pos.size()); }
};

// Lowest minimum over seeded restarts. Throws ConvergenceError on failure.
Equilibrium solve_equilibrium(const CrystalConfig& cfg, std::uint64_t seed = 1, int restarts = 8);

// Rotate about z so ion 0 sits on +x and the rest follow counter-clockwise.
Equilibrium canonical_orientation(const Equilibrium& eq);

struct Planarity {
  bool planar = false;
  double ratio = 0;             // w_z / w_rho of the input
  double critical_ratio = 0;    // threshold applied
  double hessian_crossover = 0; // ratio where the lowest out-of-plane eigenvalue vanishes
  double min_out_of_plane = 0;  // lowest out-of-plane eigenvalue at the input ratio, units of w_rho^2
};

Planarity planarity_check(int N, const TrapFrequencies& f);

struct ModeDecomposition {
  Eigen::MatrixXd K;        // s^-2, coordinates (X1..XN, Y1..YN[, Z1..ZN])
  Eigen::MatrixXd modes;    // orthonormal columns, ascending frequency
  Eigen::VectorXd omega;    // rad/s
  Eigen::VectorXd ell;      // sqrt(hbar / 2 M w), 0 for zero modes
  std::vector<std::string> label;
  std::vector<int> zero_modes;
};

// Mass-scaled Hessian at the equilibrium.
Eigen::MatrixXd hessian(const Equilibrium& eq, const CrystalConfig& cfg);
ModeDecomposition normal_modes(const Equilibrium& eq, const CrystalConfig& cfg);

// W[alpha](i, j): linear change of an R^-3 pair energy equal to V0 at R_ij, per unit (a + a^dagger).
std::vector<Eigen::MatrixXd> spin_phonon_couplings(double V0, const Equilibrium& eq, const ModeDecomposition& m);

}  // namespace rydion
