#pragma once

#include "rydion/angular.hpp"
#include "rydion/radial.hpp"
#include "rydion/species.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace rydion {

struct BasisSet {
  int n_ref = 0;
  int lmax = 5;
  std::vector<CoupledLabel> states;

  size_t size() const { return states.size(); }
  std::vector<RadialKey> radial_keys() const;
  static RadialKey key(const CoupledLabel& s) { return {s.n, s.l, static_cast<int>(2 * s.j + 0.5)}; }
};

// Neighbouring-manifold recipe: (n-2) l>=3, (n-1) l>=2, n l<=1, all l <= lmax.
BasisSet build_basis(int n, const SpeciesParams& sp, int lmax = 5);

struct FieldPoint {
  double B = 0;     // T
  double beta = 0;  // V/m^2
};

// Conserved (m_j, parity) sector. Parity is (-1)^l.
struct Block {
  int twomj = 0;
  int parity = 1;
  std::vector<int> index;  // positions in the basis
};
std::vector<Block> blocks(const BasisSet& basis);

// H = H0 + b Z + b^2 D + g Q in hartree with b, g the field and gradient in atomic units.
struct HamiltonianTerms {
  Eigen::MatrixXd h0, zeeman, diamagnetic, quadrupole;
  Eigen::MatrixXd at(const FieldPoint& f) const;
};

HamiltonianTerms assemble_terms(const BasisSet& basis, const RadialSet& radial);
Eigen::MatrixXd assemble(const BasisSet& basis, const RadialSet& radial, const FieldPoint& field);

// Matrix of r C^1_q in the coupled basis, bohr.
Eigen::MatrixXd dipole_matrix(const BasisSet& basis, const RadialSet& radial, int q = 0);

// Paschen-Back label |n l m_l m_s>.
struct PBLabel {
  int n = 0, l = 0, ml = 0;
  int twoms = -1;
  auto operator<=>(const PBLabel&) const = default;
  double ms() const { return 0.5 * twoms; }
  std::string str() const;
};

// |<n l m_l m_s | v>|^2 summed over the j components of v
double uncoupled_weight(const BasisSet& basis, const Eigen::VectorXd& v, const PBLabel& lab);
std::vector<PBLabel> uncoupled_labels(const BasisSet& basis);

}  // namespace rydion
