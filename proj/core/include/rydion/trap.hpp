#pragma once

#include "rydion/internal_hamiltonian.hpp"
#include "rydion/tracking.hpp"

#include <string>
#include <vector>

namespace rydion {

struct TrapConfig {
  double B = 0;     // T
  double beta = 0;  // V/m^2
  double M = 0;     // kg
};

struct TrapFrequencies {
  double wz = 0, wc = 0, wrho = 0;  // rad/s
  bool stable = false;
};

TrapFrequencies confinement_frequencies(const TrapConfig& t);

// beta giving w_z / w_rho = ratio at field B
double gradient_for_ratio(double B, double M, double ratio);

enum class CouplingMode { nearest_state, full_sum };

struct CouplingCorrections {
  double M_tilde = 0;       // kg, infinite at B = 0
  double wrho2_tilde = 0;   // rad^2/s^2
  double wz2_tilde = 0;
  double wc_tilde = 0;      // rad/s; also the Y P_x coefficient
  double dwrho = 0, dwz = 0, dwc = 0, dM = 0;
  double dwrho_rel = 0, dwz_rel = 0, dwc_rel = 0, dM_rel = 0;
  std::vector<std::string> excluded;  // near-degenerate terms left out
};

// Second-order internal-external couplings for the tracked state `target` at grid field trap.B.
CouplingCorrections coupling_corrections(const AdiabaticTrack& tr, const BasisSet& basis, const RadialSet& radial,
                                         const PBLabel& target, const TrapConfig& trap,
                                         CouplingMode mode = CouplingMode::full_sum);

}  // namespace rydion
