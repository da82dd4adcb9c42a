// One line per acceptance criterion; exit status is the number of failures.

#include "rydion/crystal.hpp"
#include "rydion/dressing.hpp"
#include "rydion/field_limits.hpp"
#include "rydion/internal_hamiltonian.hpp"
#include "rydion/radial.hpp"
#include "rydion/spin_model.hpp"
#include "rydion/tracking.hpp"
#include "rydion/trap.hpp"
#include "rydion/units.hpp"

#include "support.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>

using namespace rydion;
using testing_support::rel;
using testing_support::species;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string f(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

int failures = 0;

void run(int id, const char* name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("criterion %2d %-28s %s  %s  [%.2f s]\n", id, name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), dt);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

Outcome trap_frequencies() {
  const auto ca = confinement_frequencies({1.85, 7.0e5, species("ca40").mass_kg()});
  const auto be = confinement_frequencies({4.46, 2.0e6, 9.0121831 * si::amu});
  const double e1 = rel(ca.wz / kTwoPi, 412e3), e2 = rel(ca.wc / kTwoPi, 707e3);
  const double e3 = rel(be.wz / kTwoPi, 1.47e6), e4 = rel(be.wc / kTwoPi, 7.58e6);
  const double worst = std::max({e1, e2, e3, e4});
  return {worst < 0.01, f("Ca+ wz=2pi*%.1f kHz wc=2pi*%.1f kHz; Be+ wz=2pi*%.3f MHz wc=2pi*%.3f MHz; worst rel %.2e",
                          ca.wz / kTwoPi / 1e3, ca.wc / kTwoPi / 1e3, be.wz / kTwoPi / 1e6, be.wc / kTwoPi / 1e6, worst)};
}

Outcome ionization() {
  const double b = ionization_gradient(50);
  const int n = ionization_n(1e7);
  return {rel(b, 9.2e10) < 0.02 && std::abs(n - 228) <= 1, f("beta_ion(50)=%.3e V/m^2, n_ion(1e7 V/m^2)=%d", b, n)};
}

Outcome landau() {
  const int n = landau_threshold_n(2.0);
  return {std::abs(n - 52) <= 1, f("n_dia(2 T)=%d, B_th(52)=%.3f T", n, landau_threshold_field(52))};
}

Outcome quadrupole_shift() {
  const double d = quadrupole_gradient_shift(10e-6);
  return {rel(d, 1.5e6) < 0.05, f("delta_beta(10 um)=%.3e V/m^2 (e/4pi eps0 R0^3 reading)", d)};
}

Outcome hydrogenic() {
  const auto sp = species("hydrogenic");
  double worst = 0;
  int bad_nodes = 0, solved = 0;
  for (int n = 1; n <= 60; ++n)
    for (int l = 0; l <= std::min(n - 1, sp.lmax()); ++l) {
      const RadialState s = solve_bound_state(sp, n, l, l + 0.5);
      worst = std::max(worst, rel(s.energy, -2.0 / (n * n)));
      if (s.nodes != n - l - 1) ++bad_nodes;
      ++solved;
    }
  const RadialState s45 = solve_bound_state(sp, 45, 0, 0.5);
  const double rho2 = radial_integral(s45, s45, 2) * 2.0 / 3.0;
  const double ratio = rho2 / (5.0 * std::pow(45.0, 4) / 12);
  return {worst < 1e-8 && bad_nodes == 0 && std::abs(ratio - 1) < 0.02,
          f("%d states n<=60: worst rel energy %.2e, node mismatches %d; <rho^2>(45s)/(5n^4/12)=%.5f", solved, worst,
            bad_nodes, ratio)};
}

int find_state(const BasisSet& b, int n, int l, double j, double mj) {
  for (size_t i = 0; i < b.size(); ++i) {
    const auto& s = b.states[i];
    if (s.n == n && s.l == l && s.j == j && s.mj == mj) return static_cast<int>(i);
  }
  return -1;
}

Outcome basis_structure() {
  const auto sp = species("ca40", 5);
  const BasisSet basis = build_basis(45, sp, 5);
  const RadialSet radial(sp, basis.radial_keys());
  const HamiltonianTerms t = assemble_terms(basis, radial);
  const Eigen::MatrixXd H = t.at({2.0, 8e5});
  const double asym = (H - H.transpose()).cwiseAbs().maxCoeff();
  int leaks = 0;
  for (size_t a = 0; a < basis.size(); ++a)
    for (size_t b = 0; b < basis.size(); ++b) {
      const auto& sa = basis.states[a];
      const auto& sb = basis.states[b];
      if ((sa.mj != sb.mj || (sa.l - sb.l) % 2 != 0) && H(a, b) != 0) ++leaks;
    }
  // zero field: every (n, l, j) level shows up once in each of its 2j+1 m_j blocks
  const Eigen::MatrixXd H0 = t.at({0.0, 0.0});
  std::map<std::tuple<int, int, int>, int> count;
  for (const auto& blk : blocks(basis)) {
    Eigen::MatrixXd h(blk.index.size(), blk.index.size());
    for (size_t a = 0; a < blk.index.size(); ++a)
      for (size_t b = 0; b < blk.index.size(); ++b) h(a, b) = H0(blk.index[a], blk.index[b]);
    const Eigen::VectorXd e = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly).eigenvalues();
    for (Eigen::Index k = 0; k < e.size(); ++k)
      for (const auto& key : basis.radial_keys())
        if (std::abs(radial.energy(key) - e(k)) < 1e-15) ++count[{key.n, key.l, key.twoj}];
  }
  int bad_deg = 0;
  for (const auto& key : basis.radial_keys())
    if (count[{key.n, key.l, key.twoj}] != key.twoj + 1) ++bad_deg;
  // small-B diamagnetic shift of 45s and 45p3/2 (m_j = 3/2) against perturbation theory
  const double B = 0.01, b = B / constants().B_au;
  double worst_pt = 0;
  struct Probe {
    int l;
    double j, mj, sin2;
  };
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t.at({B, 0.0}));
  for (const Probe pr : {Probe{0, 0.5, 0.5, 2.0 / 3}, Probe{1, 1.5, 1.5, 0.8}}) {
    const int a = find_state(basis, 45, pr.l, pr.j, pr.mj);
    Eigen::Index k;
    es.eigenvectors().row(a).cwiseAbs().maxCoeff(&k);
    const double shift = es.eigenvalues()(k) - t.h0(a, a) - b * t.zeeman(a, a);
    double pt = 0;
    for (size_t c = 0; c < basis.size(); ++c)
      if (static_cast<int>(c) != a && t.zeeman(a, c) != 0) pt += std::pow(b * t.zeeman(a, c), 2) / (t.h0(a, a) - t.h0(c, c));
    const RadialKey key = BasisSet::key(basis.states[a]);
    pt += b * b * radial.integral(key, key, 2) * pr.sin2 / 8;
    worst_pt = std::max(worst_pt, rel(shift, pt));
  }
  const bool pass = basis.size() == 126 && asym == 0 && leaks == 0 && bad_deg == 0 && worst_pt < 0.01;
  return {pass, f("dim=%zu, max|H-H^T|=%.1e, off-block elements=%d, wrong 2j+1 degeneracies=%d, diamagnetic PT rel err %.2e",
                  basis.size(), asym, leaks, bad_deg, worst_pt)};
}

Outcome coupling() {
  const auto sp = species("ca40", 5);
  const double M = sp.mass_kg();
  std::vector<double> grid;
  for (int i = 1; i <= 8; ++i) grid.push_back(0.25 * i);
  double worst = 0;
  std::string where;
  for (int n : {30, 40, 50}) {
    const BasisSet basis = build_basis(n, sp, 5);
    const RadialSet radial(sp, basis.radial_keys());
    const AdiabaticTrack tr = sweep_and_track(basis, radial, grid);
    for (double B : grid)
      for (double beta : {gradient_for_ratio(B, M, 2.0), gradient_for_ratio(B, M, 1.84)})
        for (auto mode : {CouplingMode::full_sum, CouplingMode::nearest_state}) {
          const auto c = coupling_corrections(tr, basis, radial, {n, 0, 0, -1}, {B, beta, M}, mode);
          for (double v : {c.dwrho_rel, c.dwz_rel, c.dwc_rel, c.dM_rel})
            if (std::abs(v) > worst) {
              worst = std::abs(v);
              where = f("n=%d B=%.2f T beta=%.3g", n, B, beta);
            }
        }
  }
  return {worst < 1e-3, f("max |relative shift| = %.2e at %s (n in {30,40,50}, B <= 2 T)", worst, where.c_str())};
}

Outcome normal_modes_check() {
  const double M = species("ca40").mass_kg(), wr = kTwoPi * 220e3;
  const CrystalConfig cfg{3, M, wr, wr, 2 * wr, true};
  const Equilibrium eq = canonical_orientation(solve_equilibrium(cfg));
  const Eigen::MatrixXd K = hessian(eq, cfg) / (wr * wr);
  const double s = std::sqrt(3.0) / 4;
  Eigen::MatrixXd P(6, 6);
  P << 11.0 / 6, -5.0 / 12, -5.0 / 12, 0, s, -s, -5.0 / 12, 13.0 / 12, 1.0 / 3, s, -s, 0, -5.0 / 12, 1.0 / 3, 13.0 / 12,
      -s, 0, s, 0, s, -s, 5.0 / 6, 1.0 / 12, 1.0 / 12, s, -s, 0, 1.0 / 12, 19.0 / 12, -2.0 / 3, -s, 0, s, 1.0 / 12,
      -2.0 / 3, 19.0 / 12;
  const double kerr = (K - P).cwiseAbs().maxCoeff();
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(K).eigenvalues();
  const double expect[] = {0, 1, 1, 1.5, 1.5, 3};
  double werr = std::abs(ev(0));
  for (int a = 1; a < 6; ++a) werr = std::max(werr, rel(ev(a), expect[a]));
  const ModeDecomposition m = normal_modes(eq, cfg);
  Eigen::VectorXd rot(6);
  for (int i = 0; i < 3; ++i) {
    rot(i) = -eq.pos[static_cast<size_t>(i)].y();
    rot(3 + i) = eq.pos[static_cast<size_t>(i)].x();
  }
  rot.normalize();
  const double rot_overlap = m.zero_modes.size() == 1 ? std::abs(rot.dot(m.modes.col(m.zero_modes[0]))) : 0.0;
  const CrystalConfig aniso{3, M, wr, 1.05 * wr, 2 * wr, true};
  const ModeDecomposition ma = normal_modes(solve_equilibrium(aniso), aniso);
  const bool lifted = ma.zero_modes.empty() && ma.omega(0) > 0;
  return {kerr < 1e-10 && werr < 1e-8 && std::abs(rot_overlap - 1) < 1e-10 && lifted,
          f("|K-K_printed|max=%.1e, spectrum rel err %.1e, |<rotation|zero mode>|=%.12f, 5%% anisotropy: w0=%.3f w_rho",
            kerr, werr, rot_overlap, ma.omega(0) / wr)};
}

Outcome dipole_strength() {
  const auto sp = species("ca40", 5);
  const double M = sp.mass_kg();
  // operating point: B = 2 T, beta = 0.8e6 V/m^2, n = 45
  const BasisSet b45 = build_basis(45, sp, 5);
  const RadialSet r45(sp, b45.radial_keys());
  std::vector<double> g;
  for (int i = 1; i <= 40; ++i) g.push_back(0.05 * i);
  const AdiabaticTrack tr = sweep_and_track(b45, r45, g, 0.8e6);
  const Eigen::MatrixXd z = dipole_matrix(b45, r45, 0);
  const double d = dipole_element(tr, z, {45, 0, 0, -1}, {45, 1, 0, -1}, 2.0) * si::a0;
  const auto fr = confinement_frequencies({2.0, 0.8e6, M});
  const double R0 = std::cbrt(3 * si::coulomb_k * si::e * si::e / (M * fr.wrho * fr.wrho));
  const PairInteraction V = pair_interaction(d, R0);
  const double v_ang = V.omega / 1e6;  // 1e6 rad/s
  const double v_nu = V.nu / 1e6;      // MHz
  const bool strength = v_ang > 0.5 && v_ang < 2.0;

  // V0(B) at w_z = 2 w_rho: decrease beyond the peak, larger n peaks earlier
  std::vector<double> grid;
  for (int i = 1; i <= 50; ++i) grid.push_back(0.1 * i);
  std::map<int, double> peak_B;
  bool monotone = true;
  for (int n : {40, 45, 50}) {
    const BasisSet basis = build_basis(n, sp, 5);
    const RadialSet radial(sp, basis.radial_keys());
    const AdiabaticTrack t = sweep_and_track(basis, radial, grid);
    const auto curve = v0_of_B(t, dipole_matrix(basis, radial, 0), n, M, 2.0);
    size_t pk = 0;
    for (size_t i = 0; i < curve.size(); ++i)
      if (curve[i].V0 > curve[pk].V0) pk = i;
    peak_B[n] = curve[pk].B;
    for (size_t i = pk + 1; i < curve.size() && curve[i].V0 > 0.05 * curve[pk].V0; ++i)
      if (curve[i].V0 > curve[i - 1].V0) monotone = false;
    for (size_t i = 1; i <= pk; ++i)
      if (curve[i].V0 < curve[i - 1].V0) monotone = false;
  }
  const bool order = peak_B[50] < peak_B[45] && peak_B[45] < peak_B[40];
  return {strength && monotone && order,
          f("n=45, 2 T: d=%.0f a0, R0=%.2f um, V0/hbar=%.3f x 1e6 rad/s (V0/h=%.3f MHz; angular reading used, see notes); "
            "peak B n=40/45/50: %.1f/%.1f/%.1f T, monotone=%d",
            d / si::a0, R0 * 1e6, v_ang, v_nu, peak_B[40], peak_B[45], peak_B[50], monotone ? 1 : 0)};
}

Outcome spin() {
  const double Delta = 1.0;
  // facilitation: one and two excitations degenerate
  const SpinSpectrum s0 = diagonalize(SpinModelParams::uniform(3, 0.0, Delta, Delta));
  const bool zero_ok = s0.levels.size() == 2 && std::abs(s0.levels[0].energy + Delta) < 1e-12 &&
                       s0.levels[0].multiplicity == 6 && std::abs(s0.levels[1].energy) < 1e-12 &&
                       s0.levels[1].multiplicity == 2;
  const double h = 1e-6;
  const SpinSpectrum s1 = diagonalize(SpinModelParams::uniform(3, h, Delta, Delta));
  const double expect[] = {-2, -1, -1, 1, 1, 2};
  double slope_err = 0;
  for (int k = 0; k < 6; ++k) slope_err = std::max(slope_err, std::abs((s1.energies(k) + Delta) / h - expect[k]));
  const GroundStateReport g = ground_state_report(SpinModelParams::uniform(3, 0.01, Delta, Delta));
  // Kronecker-free oracle: direct bit manipulation over sigma^x and projectors
  double oracle_err = 0;
  for (double om : {0.0, 0.3, 2.0}) {
    const Eigen::MatrixXd H = build_hamiltonian(SpinModelParams::uniform(3, om, Delta, Delta));
    Eigen::MatrixXd O = Eigen::MatrixXd::Zero(8, 8);
    for (int a = 0; a < 8; ++a) {
      const int ups = __builtin_popcount(static_cast<unsigned>(a));
      O(a, a) = -Delta * ups + Delta * ups * (ups - 1) / 2;
      for (int i = 0; i < 3; ++i) O(a ^ (1 << i), a) = om;
    }
    oracle_err = std::max(oracle_err, (H - O).cwiseAbs().maxCoeff());
  }
  return {zero_ok && slope_err < 1e-4 && g.overlap_S_minus > 0.99 && oracle_err < 1e-12,
          f("Omega=0: {-D x%d, 0 x%d}; slope err %.1e; |<S-|gs>|^2=%.5f at Omega=0.01 D; 8x8 oracle diff %.1e",
            s0.levels.empty() ? 0 : s0.levels[0].multiplicity, s0.levels.size() > 1 ? s0.levels[1].multiplicity : 0,
            slope_err, g.overlap_S_minus, oracle_err)};
}

Outcome decoupling() {
  const double M = species("ca40").mass_kg();
  double lo = 1, hi = 0;
  for (double B = 0.5; B <= 3.0 + 1e-9; B += 0.25) {
    const auto fr = confinement_frequencies({B, gradient_for_ratio(B, M, 2.0), M});
    const CrystalConfig cfg{3, M, fr.wrho, fr.wrho, fr.wz, true};
    const Equilibrium eq = solve_equilibrium(cfg);
    const ModeDecomposition m = normal_modes(eq, cfg);
    double w = 0;
    for (const auto& Wa : spin_phonon_couplings(1.0, eq, m)) w = std::max(w, Wa.cwiseAbs().maxCoeff());
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  return {lo > 1e-4 && hi < 1e-2, f("max|W|/V0 ranges %.2e..%.2e for B in [0.5, 3] T at w_z = 2 w_rho", lo, hi)};
}

}  // namespace

int main() {
  run(1, "trap-frequencies", trap_frequencies);
  run(2, "ionization-thresholds", ionization);
  run(3, "landau-threshold", landau);
  run(4, "charge-quadrupole-shift", quadrupole_shift);
  run(5, "hydrogenic-oracle", hydrogenic);
  run(6, "basis-and-spectrum", basis_structure);
  run(7, "coupling-corrections", coupling);
  run(8, "normal-modes", normal_modes_check);
  run(9, "dipole-dipole-strength", dipole_strength);
  run(10, "spin-model", spin);
  run(11, "spin-phonon-decoupling", decoupling);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures;
}
