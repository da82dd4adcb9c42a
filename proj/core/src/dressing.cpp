#include "rydion/dressing.hpp"

#include "rydion/errors.hpp"
#include "rydion/units.hpp"

#include <cmath>

namespace rydion {

DressedPair dressed_states(double delta_mw, double omega_mw, double delta_L) {
  if (delta_mw == 0 && omega_mw == 0) throw DomainError("dressed_states: detuning and Rabi frequency both zero");
  if (omega_mw < 0) throw DomainError("dressed_states: Omega_MW must be non-negative");
  const double g = std::hypot(delta_mw, omega_mw);
  DressedPair d;
  d.c_plus = std::sqrt(std::max(0.0, 1 + delta_mw / g));
  d.c_minus = -std::sqrt(std::max(0.0, 1 - delta_mw / g));
  d.delta_plus = delta_L + 0.5 * (delta_mw + g);
  d.delta_minus = delta_L + 0.5 * (delta_mw - g);
  // |+-> = [c_+- |P> +- c_-+ |S>] / sqrt 2
  d.plus = Eigen::Vector2d(d.c_minus, d.c_plus) / std::numbers::sqrt2;
  d.minus = Eigen::Vector2d(-d.c_plus, d.c_minus) / std::numbers::sqrt2;
  return d;
}

TwoLevelDrive two_level_drive(double delta_mw, double omega_mw, double delta_L, double omega_L) {
  const DressedPair d = dressed_states(delta_mw, omega_mw, delta_L);
  return {d.delta_minus, omega_L / (2 * std::numbers::sqrt2)};
}

PairInteraction pair_interaction(double d, double R, double theta, int i, int j) {
  if (!(R > 0)) throw DomainError("pair_interaction: R must be positive");
  PairInteraction p;
  p.i = i;
  p.j = j;
  p.R = R;
  p.theta = theta;
  p.d = d;
  const double c = std::cos(theta);
  p.angular = 1 - 3 * c * c;
  if (std::abs(p.angular) < 1e-15) p.angular = 0;
  p.energy = si::e * si::e * si::coulomb_k * d * d / (R * R * R) * p.angular;
  p.omega = p.energy / si::hbar;
  p.nu = p.energy / si::h;
  return p;
}

std::vector<V0Point> v0_of_B(const AdiabaticTrack& tr, const Eigen::MatrixXd& z, int n, double M, double wz_over_wr,
                             int twoms) {
  if (!(M > 0) || !(wz_over_wr > 0)) throw DomainError("v0_of_B: mass and frequency ratio must be positive");
  const PBLabel S{n, 0, 0, twoms}, P{n, 1, 0, twoms};
  // planarity depends only on the ratio
  const bool planar = planarity_check(3, {wz_over_wr, 0, 1.0, true}).planar;
  std::vector<V0Point> out;
  for (double B : tr.B) {
    V0Point v;
    v.B = B;
    v.d = dipole_element(tr, z, S, P, B) * si::a0;
    if (B > 0) {
      v.beta = gradient_for_ratio(B, M, wz_over_wr);
      const TrapFrequencies f = confinement_frequencies({B, v.beta, M});
      v.wz = f.wz;
      v.wrho = f.wrho;
      v.planar_ok = f.stable && planar;
      v.R0 = std::cbrt(3 * si::e * si::e * si::coulomb_k / (M * f.wrho * f.wrho));
      v.V0 = pair_interaction(v.d, v.R0).energy;
    }
    v.V0_omega = v.V0 / si::hbar;
    v.V0_nu = v.V0 / si::h;
    out.push_back(v);
  }
  return out;
}

Eigen::MatrixXd charge_dipole_coefficients(const Equilibrium& eq, double d) {
  const int N = eq.size();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      const double R = eq.distance(i, j);
      double ct = std::cos(eq.theta(i, j));
      if (std::abs(ct) < 1e-12) ct = 0;
      c(i, j) = si::e * si::e * si::coulomb_k * d * ct / (R * R);
    }
  return c;
}

double quadrupole_gradient_shift(double R0) {
  if (!(R0 > 0)) throw DomainError("quadrupole_gradient_shift: R0 must be positive");
  return si::e * si::coulomb_k / (R0 * R0 * R0);
}

}  // namespace rydion
