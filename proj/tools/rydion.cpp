#include "cli_support.hpp"

#include "rydion/crystal.hpp"
#include "rydion/dressing.hpp"
#include "rydion/errors.hpp"
#include "rydion/field_limits.hpp"
#include "rydion/internal_hamiltonian.hpp"
#include "rydion/spin_model.hpp"
#include "rydion/tracking.hpp"
#include "rydion/trap.hpp"
#include "rydion/units.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <optional>

#ifndef RYDION_DEFAULT_DATA_DIR
#define RYDION_DEFAULT_DATA_DIR "data"
#endif

using namespace rydion;
using cli::fmt;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

struct Common {
  std::string species = "ca40";
  std::string data_dir;
  std::string out = "-";
  int threads = 0;
  std::string command;
  std::string config_text;
};

std::string data_dir(const Common& c) {
  if (!c.data_dir.empty()) return c.data_dir;
  if (const char* env = std::getenv("RYDION_DATA_DIR")) return env;
  return RYDION_DEFAULT_DATA_DIR;
}

SpeciesParams species(const Common& c, int lmax = -1) {
  return load_species(resolve_species_path(c.species, data_dir(c)), lmax);
}

std::vector<std::string> header(const Common& c, const std::vector<std::string>& extra = {}) {
  char h[32];
  std::snprintf(h, sizeof h, "%016llx", static_cast<unsigned long long>(cli::fnv1a(c.config_text)));
  std::vector<std::string> out{std::string("rydion ") + RYDION_VERSION, "command: " + c.command,
                               std::string("config_hash: ") + h};
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

std::string species_line(const SpeciesParams& sp) {
  char h[32];
  std::snprintf(h, sizeof h, "%016llx", static_cast<unsigned long long>(sp.hash()));
  return "species: " + sp.label + " (" + h + ")";
}

// ---- trap

struct TrapOpts {
  double B = 1.85, beta = 7e5;
  std::optional<double> mass_amu;
};

int run_trap(const Common& c, const TrapOpts& o) {
  const SpeciesParams sp = species(c);
  const double amu = o.mass_amu.value_or(sp.mass_amu);
  const TrapFrequencies f = confinement_frequencies({o.B, o.beta, amu * si::amu});
  cli::Table t(c.out, header(c, {species_line(sp)}),
               {"B_tesla", "beta_V_per_m2", "mass_amu", "wz_2pi_kHz", "wc_2pi_kHz", "wrho_2pi_kHz", "stable"});
  t.row({fmt(o.B), fmt(o.beta), fmt(amu), fmt(f.wz / kTwoPi / 1e3), fmt(f.wc / kTwoPi / 1e3),
         fmt(f.wrho / kTwoPi / 1e3), f.stable ? "1" : "0"});
  t.close();
  if (!f.stable) {
    std::fprintf(stderr, "unstable: w_c = 2pi*%.4g kHz <= sqrt(2) w_z = 2pi*%.4g kHz\n", f.wc / kTwoPi / 1e3,
                 std::sqrt(2.0) * f.wz / kTwoPi / 1e3);
    return 2;
  }
  return 0;
}

// ---- spectrum

struct SpectrumOpts {
  int n = 45, lmax = 5;
  std::string B = "0:2:200";
  double beta = 0;
  std::optional<double> block_mj;
};

int run_spectrum(const Common& c, const SpectrumOpts& o) {
  const SpeciesParams sp = species(c, o.lmax);
  const BasisSet basis = build_basis(o.n, sp, o.lmax);
  const RadialSet radial(sp, basis.radial_keys(), {}, c.threads);
  TrackOptions topt;
  topt.threads = c.threads;
  const auto grid = cli::parse_grid(o.B);
  if (grid.back() > landau_threshold_field(o.n))
    std::fprintf(stderr, "warning: B = %.3g T exceeds the Landau threshold for n = %d\n", grid.back(), o.n);
  const AdiabaticTrack tr = sweep_and_track(basis, radial, grid, o.beta, topt);
  cli::Table t(c.out,
               header(c, {species_line(sp), "basis_dim: " + std::to_string(basis.size()),
                          "refinements: " + std::to_string(tr.refinements)}),
               {"B_tesla", "block_mj", "track_label", "energy_GHz", "overlap_prev"});
  const double to_ghz = si::Eh / si::h / 1e9;
  for (size_t p = 0; p < tr.B.size(); ++p)
    for (size_t k = 0; k < tr.tracks(); ++k) {
      const double mj = 0.5 * tr.twomj[k];
      if (o.block_mj && std::abs(*o.block_mj - mj) > 1e-9) continue;
      t.row({fmt(tr.B[p]), fmt(mj), tr.labels[k].str(), fmt(tr.energies[p](static_cast<Eigen::Index>(k)) * to_ghz, 12),
             fmt(tr.overlap_prev[p][k], 8)});
    }
  return 0;
}

// ---- v0

struct V0Opts {
  std::string n = "40,45,50";
  std::string B = "0.05:3:60";
  std::string ratio = "2,4";
  int lmax = 5;
};

int run_v0(const Common& c, const V0Opts& o) {
  const SpeciesParams sp = species(c, o.lmax);
  const auto grid = cli::parse_grid(o.B);
  const auto ratios = cli::parse_grid(o.ratio);
  cli::Table t(c.out, header(c, {species_line(sp), "V0_MHz = V0/h; V0_rad_per_us = V0/hbar * 1e-6"}),
               {"B_tesla", "n", "wz_over_wr", "V0_MHz", "planar_ok", "V0_rad_per_us", "dipole_a0"});
  bool all_planar = true;
  for (int n : cli::parse_int_list(o.n)) {
    const BasisSet basis = build_basis(n, sp, o.lmax);
    const RadialSet radial(sp, basis.radial_keys(), {}, c.threads);
    TrackOptions topt;
    topt.threads = c.threads;
    const AdiabaticTrack tr = sweep_and_track(basis, radial, grid, 0.0, topt);
    const Eigen::MatrixXd z = dipole_matrix(basis, radial, 0);
    for (double ratio : ratios) {
      for (const auto& v : v0_of_B(tr, z, n, sp.mass_kg(), ratio)) {
        all_planar = all_planar && (v.B == 0 || v.planar_ok);
        t.row({fmt(v.B), fmt(n), fmt(ratio), fmt(v.V0_nu / 1e6), v.planar_ok ? "1" : "0", fmt(v.V0_omega / 1e6),
               fmt(v.d / si::a0)});
      }
    }
  }
  if (!all_planar) std::fprintf(stderr, "warning: some points violate the planarity criterion (planar_ok = 0)\n");
  return 0;
}

// ---- coupling corrections

struct CouplingOpts {
  std::string n = "30,40,50";
  std::string B = "0.25:2:8";
  double ratio = 2;
  std::string mode = "full";
  int lmax = 5;
};

int run_coupling(const Common& c, const CouplingOpts& o) {
  const SpeciesParams sp = species(c, o.lmax);
  if (o.mode != "full" && o.mode != "nearest") throw ConfigError("--mode must be full or nearest");
  const CouplingMode mode = o.mode == "full" ? CouplingMode::full_sum : CouplingMode::nearest_state;
  const auto grid = cli::parse_grid(o.B);
  cli::Table t(c.out, header(c, {species_line(sp), "target: nS(ml=0,ms=-1/2); w_z/w_rho fixed"}),
               {"n", "B_tesla", "beta", "dwr_rel", "dwz_rel", "dwc_rel", "dM_rel", "mode"});
  for (int n : cli::parse_int_list(o.n)) {
    const BasisSet basis = build_basis(n, sp, o.lmax);
    const RadialSet radial(sp, basis.radial_keys(), {}, c.threads);
    TrackOptions topt;
    topt.threads = c.threads;
    const AdiabaticTrack tr = sweep_and_track(basis, radial, grid, 0.0, topt);
    for (double B : grid) {
      const double beta = B > 0 ? gradient_for_ratio(B, sp.mass_kg(), o.ratio) : 0.0;
      const auto cc = coupling_corrections(tr, basis, radial, {n, 0, 0, -1}, {B, beta, sp.mass_kg()}, mode);
      for (const auto& ex : cc.excluded) std::fprintf(stderr, "warning: n=%d B=%g: excluded %s\n", n, B, ex.c_str());
      t.row({fmt(n), fmt(B), fmt(beta), fmt(cc.dwrho_rel), fmt(cc.dwz_rel), fmt(cc.dwc_rel), fmt(cc.dM_rel), o.mode});
    }
  }
  return 0;
}

// ---- modes

struct ModesOpts {
  int N = 3;
  std::string wr = "2pi*220kHz";
  std::string wz;
  double anisotropy = 0;
  bool full3d = false;
  std::uint64_t seed = 1;
};

int run_modes(const Common& c, const ModesOpts& o) {
  const SpeciesParams sp = species(c);
  const double wr = cli::parse_angular_frequency(o.wr);
  const double wz = o.wz.empty() ? 2 * wr : cli::parse_angular_frequency(o.wz);
  const TrapFrequencies f{wz, 0, wr, true};
  if (o.N >= 2 && o.N <= 7 && !o.full3d) {
    const Planarity pl = planarity_check(o.N, f);
    if (!pl.planar) {
      std::fprintf(stderr, "not planar: w_z/w_rho = %.4g < %.4g (Hessian crossover %.4g)\n", pl.ratio,
                   pl.critical_ratio, pl.hessian_crossover);
      return 2;
    }
  }
  CrystalConfig cfg{o.N, sp.mass_kg(), wr, wr * (1 + o.anisotropy), wz, !o.full3d};
  Equilibrium eq = canonical_orientation(solve_equilibrium(cfg, o.seed));
  if (eq.saddle) {
    std::fprintf(stderr, "equilibrium is a saddle point\n");
    return 2;
  }
  const ModeDecomposition m = normal_modes(eq, cfg);
  const auto W = spin_phonon_couplings(1.0, eq, m);
  std::vector<std::string> extra{species_line(sp)};
  for (int i = 0; i < eq.size(); ++i) {
    const auto& p = eq.pos[static_cast<size_t>(i)];
    extra.push_back("ion " + std::to_string(i + 1) + " position_um: " + fmt(p.x() * 1e6, 8) + " " +
                    fmt(p.y() * 1e6, 8) + " " + fmt(p.z() * 1e6, 8));
  }
  cli::Table t(c.out, header(c, extra), {"alpha", "freq_over_wr", "class_label", "ell_nm", "max_abs_W_over_V0"});
  for (Eigen::Index a = 0; a < m.omega.size(); ++a) {
    const double w = W[static_cast<size_t>(a)].cwiseAbs().maxCoeff();
    const bool zero = std::find(m.zero_modes.begin(), m.zero_modes.end(), a) != m.zero_modes.end();
    t.row({fmt(static_cast<int>(a)), fmt(m.omega(a) / wr), m.label[static_cast<size_t>(a)] + (zero ? " (zero mode)" : ""),
           fmt(m.ell(a) * 1e9), fmt(w)});
  }
  return 0;
}

// ---- spin

struct SpinOpts {
  int N = 3;
  std::string omega = "0:0.5:100";
  double delta = 1;
  std::optional<double> V0;
  bool facilitation = false;
};

std::string symmetry_label(const Eigen::VectorXd& v) {
  const SymmetryStates st = symmetry_states();
  const Eigen::VectorXcd x = v.cast<std::complex<double>>();
  std::vector<std::pair<double, std::string>> w{
      {std::norm(st.Sm.dot(x)), "S-"},
      {std::norm(st.Sp.dot(x)), "S+"},
      {std::norm(st.Cm[0].dot(x)) + std::norm(st.Cm[1].dot(x)), "C-"},
      {std::norm(st.Cp[0].dot(x)) + std::norm(st.Cp[1].dot(x)), "C+"},
      {v(0) * v(0), "ddd"},
      {v(7) * v(7), "uuu"},
  };
  auto best = std::max_element(w.begin(), w.end());
  return best->second;
}

int run_spin(const Common& c, const SpinOpts& o) {
  if (o.facilitation && o.V0) throw ConfigError("--facilitation and --V0 are mutually exclusive");
  // facilitation: one and two excitations degenerate at Omega = 0 (V0 = Delta with the -Delta sum P convention)
  const double V0 = o.facilitation ? o.delta : o.V0.value_or(o.delta);
  cli::Table t(c.out, header(c, {"energies in units of |Delta|", "V0_over_Delta: " + fmt(V0 / o.delta)}),
               {"Omega_over_Delta", "level_index", "energy_over_Delta", "symmetry_label"});
  const double unit = std::abs(o.delta) > 0 ? std::abs(o.delta) : 1.0;
  for (double om : cli::parse_grid(o.omega)) {
    const SpinSpectrum s = diagonalize(SpinModelParams::uniform(o.N, om * unit, o.delta, V0));
    for (Eigen::Index k = 0; k < s.energies.size(); ++k)
      t.row({fmt(om), fmt(static_cast<int>(k)), fmt(s.energies(k) / unit, 12),
             o.N == 3 ? symmetry_label(s.vectors.col(k)) : "-"});
  }
  return 0;
}

// ---- limits

struct LimitsOpts {
  int n = 50;
  double B = 2, beta = 1e7, R0_um = 10;
};

int run_limits(const Common& c, const LimitsOpts& o) {
  cli::Table t(c.out, header(c), {"quantity", "input", "value", "unit"});
  t.row({"beta_ion", "n=" + fmt(o.n), fmt(ionization_gradient(o.n), 6), "V/m^2"});
  t.row({"n_ion", "beta=" + fmt(o.beta), fmt(ionization_n(o.beta)), "-"});
  t.row({"n_dia", "B=" + fmt(o.B), fmt(landau_threshold_n(o.B)), "-"});
  t.row({"B_landau", "n=" + fmt(o.n), fmt(landau_threshold_field(o.n), 6), "T"});
  t.row({"beta_max", "B=" + fmt(o.B), fmt(quadrupole_dominance_gradient(o.B), 6), "V/m^2"});
  t.row({"delta_beta", "R0=" + fmt(o.R0_um) + "um", fmt(quadrupole_gradient_shift(o.R0_um * 1e-6), 6), "V/m^2"});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rydberg ions in a Penning trap: spectra, trap corrections, crystal modes, spin model"};
  app.set_version_flag("--version", std::string(RYDION_VERSION));
  app.set_config("--config", "", "structured config file (key = value, [subcommand] sections); flags override");
  app.require_subcommand(1);

  Common c;
  app.add_option("--species", c.species, "species name in the data directory or a path")->capture_default_str();
  app.add_option("--data-dir", c.data_dir, "species data directory");
  app.add_option("--out,-o", c.out, "output file ('-' for stdout)")->capture_default_str();
  app.add_option("--threads", c.threads, "worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);

  TrapOpts trap;
  auto* s_trap = app.add_subcommand("trap", "single-ion trap frequencies");
  s_trap->add_option("--B", trap.B, "magnetic field, T")->capture_default_str();
  s_trap->add_option("--beta", trap.beta, "electric field gradient, V/m^2")->capture_default_str();
  s_trap->add_option("--mass-amu", trap.mass_amu, "ion mass override, amu");

  SpectrumOpts spec;
  auto* s_spec = app.add_subcommand("spectrum", "internal spectrum versus B with adiabatic tracks");
  s_spec->add_option("--n", spec.n, "reference principal quantum number")->capture_default_str();
  s_spec->add_option("--lmax", spec.lmax, "highest l in the basis")->capture_default_str();
  s_spec->add_option("--B", spec.B, "field grid start:stop:count, T")->capture_default_str();
  s_spec->add_option("--beta", spec.beta, "field gradient, V/m^2")->capture_default_str();
  s_spec->add_option("--block-mj", spec.block_mj, "export only this m_j block");

  V0Opts v0;
  auto* s_v0 = app.add_subcommand("v0", "dipole-dipole strength V0 versus B for a planar triangle");
  s_v0->add_option("--n", v0.n, "comma list of n")->capture_default_str();
  s_v0->add_option("--B", v0.B, "field grid, T")->capture_default_str();
  s_v0->add_option("--ratio", v0.ratio, "comma list of w_z / w_rho")->capture_default_str();
  s_v0->add_option("--lmax", v0.lmax, "highest l in the basis")->capture_default_str();

  CouplingOpts cp;
  auto* s_cp = app.add_subcommand("coupling", "internal-external coupling corrections for nS");
  s_cp->add_option("--n", cp.n, "comma list of n")->capture_default_str();
  s_cp->add_option("--B", cp.B, "field grid, T")->capture_default_str();
  s_cp->add_option("--ratio", cp.ratio, "w_z / w_rho used to set beta(B)")->capture_default_str();
  s_cp->add_option("--mode", cp.mode, "full | nearest")->capture_default_str();
  s_cp->add_option("--lmax", cp.lmax, "highest l in the basis")->capture_default_str();

  ModesOpts md;
  auto* s_md = app.add_subcommand("modes", "crystal equilibrium and normal modes");
  s_md->add_option("--N", md.N, "ion count")->capture_default_str();
  s_md->add_option("--wr", md.wr, "radial frequency with unit, e.g. 2pi*220kHz")->capture_default_str();
  s_md->add_option("--wz", md.wz, "axial frequency with unit (default 2 w_r)");
  s_md->add_option("--anisotropy", md.anisotropy, "w_y / w_x - 1")->capture_default_str();
  s_md->add_flag("--3d", md.full3d, "free z coordinates");
  s_md->add_option("--seed", md.seed, "restart seed")->capture_default_str();

  SpinOpts sp;
  auto* s_sp = app.add_subcommand("spin", "exact spectrum of the facilitated Ising model");
  s_sp->add_option("--N", sp.N, "site count")->capture_default_str();
  s_sp->add_option("--Omega-sweep", sp.omega, "Omega/Delta grid")->capture_default_str();
  s_sp->add_option("--Delta", sp.delta, "detuning (energy unit)")->capture_default_str();
  s_sp->add_option("--V0", sp.V0, "uniform coupling, units of Delta's unit");
  s_sp->add_flag("--facilitation", sp.facilitation, "resonant facilitation, V0 = Delta in this sign convention");

  LimitsOpts lim;
  auto* s_lim = app.add_subcommand("limits", "ionization, Landau and quadrupole thresholds");
  s_lim->add_option("--n", lim.n, "principal quantum number")->capture_default_str();
  s_lim->add_option("--B", lim.B, "magnetic field, T")->capture_default_str();
  s_lim->add_option("--beta", lim.beta, "field gradient, V/m^2")->capture_default_str();
  s_lim->add_option("--R0-um", lim.R0_um, "ion spacing, um")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    auto* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    c.config_text = app.config_to_str(true, false);
    if (sub == s_trap) return run_trap(c, trap);
    if (sub == s_spec) return run_spectrum(c, spec);
    if (sub == s_v0) return run_v0(c, v0);
    if (sub == s_cp) return run_coupling(c, cp);
    if (sub == s_md) return run_modes(c, md);
    if (sub == s_sp) return run_spin(c, sp);
    if (sub == s_lim) return run_limits(c, lim);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    switch (e.kind()) {
      case ErrorKind::physics: return 2;
      case ErrorKind::convergence: return 3;
      default: return 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
