#pragma once

#include "rydion/crystal.hpp"
#include "rydion/internal_hamiltonian.hpp"
#include "rydion/tracking.hpp"

#include <Eigen/Dense>
#include <numbers>
#include <vector>

namespace rydion {

// Rydberg block H = D_L |S><S| + (D_L + D_MW)|P><P| - (W_MW/2)(|S><P| + h.c.).
// Components are (S, P).
struct DressedPair {
  double c_plus = 0, c_minus = 0;
  double delta_plus = 0, delta_minus = 0;
  Eigen::Vector2d plus, minus;
};

DressedPair dressed_states(double delta_mw, double omega_mw, double delta_L = 0);

// Two-level reduction onto |down> = |G>, |up> = |->.
struct TwoLevelDrive {
  double Delta = 0;  // = Delta_-
  double Omega = 0;  // = Omega_L / (2 sqrt 2)
};
TwoLevelDrive two_level_drive(double delta_mw, double omega_mw, double delta_L, double omega_L);

struct PairInteraction {
  int i = 0, j = 1;
  double R = 0;        // m
  double theta = 0;    // rad from z
  double d = 0;        // <S|z|P>, m
  double angular = 1;  // 1 - 3 cos^2 theta
  double energy = 0;   // J
  double omega = 0;    // energy / hbar, rad/s
  double nu = 0;       // energy / h, Hz
};

PairInteraction pair_interaction(double d, double R, double theta = std::numbers::pi / 2, int i = 0, int j = 1);

struct V0Point {
  double B = 0, beta = 0;
  double wz = 0, wrho = 0;  // rad/s
  double R0 = 0;            // m
  double d = 0;             // m
  double V0 = 0;            // J
  double V0_omega = 0;      // V0 / hbar, rad/s
  double V0_nu = 0;         // V0 / h, Hz
  bool planar_ok = false;
};

// V0(B) for a planar triangle with fixed w_z / w_rho. S = (n,0,0,ms), P = (n,1,0,ms).
std::vector<V0Point> v0_of_B(const AdiabaticTrack& tr, const Eigen::MatrixXd& z, int n, double M, double wz_over_wr,
                             int twoms = -1);

// e^2 d cos(theta_ij) / (4 pi eps0 R_ij^2), J
Eigen::MatrixXd charge_dipole_coefficients(const Equilibrium& eq, double d);

// e / (4 pi eps0 R0^3), V/m^2
double quadrupole_gradient_shift(double R0);

}  // namespace rydion
