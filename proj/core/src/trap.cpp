#include "rydion/trap.hpp"

#include "rydion/errors.hpp"
#include "rydion/units.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace rydion {

TrapFrequencies confinement_frequencies(const TrapConfig& t) {
  if (!(t.M > 0)) throw DomainError("trap mass must be positive");
  if (t.B < 0 || t.beta < 0) throw DomainError("B and beta must be non-negative");
  TrapFrequencies f;
  f.wz = std::sqrt(4 * si::e * t.beta / t.M);
  f.wc = si::e * t.B / t.M;
  const double d = f.wc * f.wc - 2 * f.wz * f.wz;
  f.stable = d > 0;
  f.wrho = f.stable ? 0.5 * std::sqrt(d) : 0.0;
  return f;
}

double gradient_for_ratio(double B, double M, double ratio) {
  // w_rho = w_c / sqrt(4 + 2 ratio^2)
  const double wc = si::e * B / M;
  const double wz = ratio * wc / std::sqrt(4 + 2 * ratio * ratio);
  return M * wz * wz / (4 * si::e);
}

CouplingCorrections coupling_corrections(const AdiabaticTrack& tr, const BasisSet& basis, const RadialSet& radial,
                                         const PBLabel& target, const TrapConfig& trap, CouplingMode mode) {
  const size_t p = tr.point_of(trap.B);
  const auto t0 = static_cast<Eigen::Index>(tr.track_of(target));
  if (mode == CouplingMode::nearest_state && target.l != 0)
    throw DomainError("nearest-state corrections assume an S target");
  const TrapFrequencies f = confinement_frequencies(trap);

  const Eigen::MatrixXd& V = tr.vectors[p];
  const Eigen::VectorXd& E = tr.energies[p];
  const double e0 = E(t0);
  const Eigen::VectorXd v0 = V.col(t0);

  CouplingCorrections c;
  std::vector<Eigen::Index> partners;
  double e_avg = 0;
  for (size_t t = 0; t < tr.tracks(); ++t) {
    const auto& lab = tr.labels[t];
    if (static_cast<Eigen::Index>(t) == t0) continue;
    if (mode == CouplingMode::nearest_state) {
      if (lab.n != target.n || lab.l != 1 || lab.twoms != target.twoms) continue;
      e_avg += E(static_cast<Eigen::Index>(t));
    }
    partners.push_back(static_cast<Eigen::Index>(t));
  }
  if (mode == CouplingMode::nearest_state) {
    if (partners.empty()) throw LookupError("no nP partner tracks for " + target.str());
    e_avg /= static_cast<double>(partners.size());
  }

  // G_0 and G_pm in bohr^2 / hartree
  double g0 = 0, gpm = 0;
  for (int q : {-1, 0, 1}) {
    const Eigen::VectorXd d = dipole_matrix(basis, radial, q).transpose() * v0;  // <L| r C^1_q |.>
    for (auto t : partners) {
      const double amp = d.dot(V.col(t));
      if (amp == 0) continue;
      const double de = (mode == CouplingMode::nearest_state ? e_avg : E(t)) - e0;
      if (std::abs(de) < 1e-6 * std::abs(e0)) {
        if (amp * amp > 1e-12) {
          std::ostringstream os;
          os << tr.labels[static_cast<size_t>(t)].str() << " (dE=" << de << " Eh)";
          c.excluded.push_back(os.str());
        }
        continue;
      }
      const double term = amp * amp / de;
      if (q == 0) g0 += term; else gpm += 0.5 * term;
    }
  }
  const double k = si::a0 * si::a0 / si::Eh;  // bohr^2/hartree -> m^2/J
  g0 *= k;
  gpm *= k;

  const double e = si::e, M = trap.M, B = trap.B, b = trap.beta;
  c.M_tilde = (B == 0 || gpm == 0) ? std::numeric_limits<double>::infinity() : -M * M / (e * e * B * B * gpm);
  const double a = 2 * e * b - e * e * B * B / (2 * M);
  c.wrho2_tilde = -(a * a / M) * gpm;
  c.wz2_tilde = -(32 * e * e * b * b / M) * g0;
  c.wc_tilde = -(2 * e * B / M) * (4 * e * b - e * e * B * B / M) * gpm;

  c.dwrho = f.wrho > 0 ? c.wrho2_tilde / (2 * f.wrho) : 0;
  c.dwz = f.wz > 0 ? c.wz2_tilde / (2 * f.wz) : 0;
  c.dwc = c.wc_tilde;
  // printed convention; with 1/M_eff = 1/M + 1/M_tilde the mass change M_eff - M is -dM
  c.dM = std::isinf(c.M_tilde) ? 0 : M * M / (M + c.M_tilde);
  c.dwrho_rel = f.wrho > 0 ? c.dwrho / f.wrho : 0;
  c.dwz_rel = f.wz > 0 ? c.dwz / f.wz : 0;
  c.dwc_rel = f.wc > 0 ? c.dwc / f.wc : 0;
  c.dM_rel = c.dM / M;
  return c;
}

}  // namespace rydion
