#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

namespace rydion {

// H = Omega sum sigma^x - Delta sum P_up + (1/2) sum_{i != j} V_ij P_up_i P_up_j.
// Product basis index: bit i set means site i+1 is up.
struct SpinModelParams {
  int N = 3;
  double Omega = 0, Delta = 0;
  Eigen::MatrixXd V;  // symmetric, zero diagonal

  static SpinModelParams uniform(int N, double Omega, double Delta, double V0);
};

constexpr int kMaxSpins = 12;

Eigen::MatrixXd build_hamiltonian(const SpinModelParams& p);

struct SpinLevel {
  double energy = 0;
  int multiplicity = 0;
};

struct SpinSpectrum {
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXd vectors;
  std::vector<SpinLevel> levels;  // grouped with tolerance 1e-9 max|E|
};

SpinSpectrum diagonalize(const SpinModelParams& p);
std::vector<SpinLevel> group_levels(const Eigen::VectorXd& e, double rel_tol = 1e-9);

// Site relabelling i -> i+1 (mod N) acting on the product basis.
Eigen::MatrixXd cyclic_permutation(int N);
// Site swap 2 <-> 3 (reflection through site 1).
Eigen::MatrixXd reflection(int N);

// Three-site symmetry-adapted states. Index 0 is r = +1, index 1 is r = -1.
// C2 is built on hole positions with the C3 eigenvalue of C1 and the phase
// that makes <C2| sum sigma^x |C1> = +1.
struct SymmetryStates {
  Eigen::VectorXcd S1, S2, Sp, Sm;
  std::array<Eigen::VectorXcd, 2> C1, C2, Cp, Cm;
};
SymmetryStates symmetry_states();

struct PerturbativeLevel {
  double energy = 0;
  int multiplicity = 1;
  std::string label;
};

// First-order levels of the six-fold manifold at the facilitation point (one and two
// excitations degenerate, V0 = Delta here), ascending for Omega > 0.
std::vector<PerturbativeLevel> perturbative_energies(double Omega, double Delta);

struct GroundStateReport {
  double energy = 0;
  int degeneracy = 0;
  double overlap_S_minus = 0, overlap_S_plus = 0;  // <S|P_gs|S>
  double overlap_manifold = 0;  // weight of the ground space inside span{S, C}, averaged
  double entropy = 0;           // single-site von Neumann entropy, nats
};

GroundStateReport ground_state_report(const SpinModelParams& p);

}  // namespace rydion
