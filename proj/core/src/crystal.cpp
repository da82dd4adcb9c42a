#include "rydion/crystal.hpp"

#include "parallel.hpp"
#include "rydion/errors.hpp"
#include "rydion/units.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace rydion {

namespace {

// Dimensionless problem: lengths in l0, energies in M wx^2 l0^2.
struct Problem {
  int N;
  int dims;  // 2 or 3
  double fx2, fy2, fz2;

  int n() const { return N * dims; }
  // coordinate layout (X1..XN, Y1..YN, Z1..ZN)
  double c(const Eigen::VectorXd& q, int i, int a) const { return q(a * N + i); }

  double energy(const Eigen::VectorXd& q) const {
    double v = 0;
    const double f2[3] = {fx2, fy2, fz2};
    for (int i = 0; i < N; ++i)
      for (int a = 0; a < dims; ++a) v += 0.5 * f2[a] * c(q, i, a) * c(q, i, a);
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        double r2 = 0;
        for (int a = 0; a < dims; ++a) r2 += std::pow(c(q, i, a) - c(q, j, a), 2);
        v += 1 / std::sqrt(r2);
      }
    return v;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& q) const {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n());
    const double f2[3] = {fx2, fy2, fz2};
    for (int i = 0; i < N; ++i)
      for (int a = 0; a < dims; ++a) g(a * N + i) = f2[a] * c(q, i, a);
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        double d[3] = {0, 0, 0}, r2 = 0;
        for (int a = 0; a < dims; ++a) { d[a] = c(q, i, a) - c(q, j, a); r2 += d[a] * d[a]; }
        const double r3 = r2 * std::sqrt(r2);
        for (int a = 0; a < dims; ++a) {
          g(a * N + i) -= d[a] / r3;
          g(a * N + j) += d[a] / r3;
        }
      }
    return g;
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& q) const {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n(), n());
    const double f2[3] = {fx2, fy2, fz2};
    for (int i = 0; i < N; ++i)
      for (int a = 0; a < dims; ++a) h(a * N + i, a * N + i) = f2[a];
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        double d[3] = {0, 0, 0}, r2 = 0;
        for (int a = 0; a < dims; ++a) { d[a] = c(q, i, a) - c(q, j, a); r2 += d[a] * d[a]; }
        const double r5 = r2 * r2 * std::sqrt(r2);
        for (int a = 0; a < dims; ++a)
          for (int b = 0; b < dims; ++b) {
            const double t = (3 * d[a] * d[b] - (a == b ? r2 : 0.0)) / r5;
            h(a * N + i, b * N + i) += t;
            h(a * N + j, b * N + j) += t;
            h(a * N + i, b * N + j) -= t;
            h(a * N + j, b * N + i) -= t;
          }
      }
    return h;
  }
};

Problem make_problem(const CrystalConfig& cfg) {
  if (cfg.N < 1) throw DomainError("crystal: N must be >= 1");
  if (!(cfg.M > 0) || !(cfg.wx > 0) || !(cfg.wy > 0)) throw DomainError("crystal: mass and radial frequencies must be positive");
  if (!cfg.planar && !(cfg.wz > 0)) throw DomainError("crystal: 3D policy needs w_z > 0");
  const double fy = cfg.wy / cfg.wx, fz = cfg.wz / cfg.wx;
  return {cfg.N, cfg.planar ? 2 : 3, 1.0, fy * fy, fz * fz};
}

double length_unit(const CrystalConfig& cfg) {
  return std::cbrt(si::e * si::e * si::coulomb_k / (cfg.M * cfg.wx * cfg.wx));
}

struct Minimum {
  Eigen::VectorXd q;
  double v = 0, gnorm = 0;
  bool ok = false;
};

// Levenberg-Marquardt damped Newton on the gradient.
Minimum minimise(const Problem& p, Eigen::VectorXd q) {
  double lambda = 1e-3;
  double v = p.energy(q);
  Minimum m;
  for (int it = 0; it < 500; ++it) {
    const Eigen::VectorXd g = p.gradient(q);
    const double gn = g.norm();
    if (gn < 1e-13) break;
    const Eigen::MatrixXd h = p.hessian(q);
    bool moved = false;
    for (int tries = 0; tries < 40 && !moved; ++tries) {
      Eigen::MatrixXd a = h;
      a.diagonal().array() += lambda * (1.0 + h.diagonal().array().abs());
      const Eigen::VectorXd step = a.ldlt().solve(-g);
      const Eigen::VectorXd qn = q + step;
      const double vn = p.energy(qn);
      if (std::isfinite(vn) && vn <= v + 1e-15 * std::abs(v)) {
        q = qn;
        v = vn;
        lambda = std::max(lambda * 0.2, 1e-14);
        moved = true;
      } else {
        lambda *= 10;
      }
    }
    if (!moved) break;
  }
  m.q = q;
  m.v = v;
  m.gnorm = p.gradient(q).norm();
  m.ok = m.gnorm < 1e-10 * std::max(1.0, std::sqrt(static_cast<double>(p.N)));
  return m;
}

Equilibrium finish(const Problem& p, const Minimum& m, const CrystalConfig& cfg) {
  Equilibrium eq;
  const double l0 = length_unit(cfg);
  eq.length_unit = l0;
  eq.grad_norm = m.gnorm;
  eq.energy = m.v * cfg.M * cfg.wx * cfg.wx * l0 * l0;
  Eigen::Vector3d com = Eigen::Vector3d::Zero();
  for (int i = 0; i < p.N; ++i) {
    Eigen::Vector3d r = Eigen::Vector3d::Zero();
    for (int a = 0; a < p.dims; ++a) r(a) = p.c(m.q, i, a) * l0;
    eq.pos.push_back(r);
    com += r;
  }
  com /= p.N;
  for (auto& r : eq.pos) r -= com;
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(p.hessian(m.q)).eigenvalues();
  eq.saddle = ev.size() > 0 && ev.minCoeff() < -1e-8;
  eq.distance = Eigen::MatrixXd::Zero(p.N, p.N);
  eq.theta = Eigen::MatrixXd::Zero(p.N, p.N);
  eq.phi = Eigen::MatrixXd::Zero(p.N, p.N);
  for (int i = 0; i < p.N; ++i)
    for (int j = 0; j < p.N; ++j) {
      if (i == j) continue;
      const Eigen::Vector3d d = eq.pos[static_cast<size_t>(i)] - eq.pos[static_cast<size_t>(j)];
      eq.distance(i, j) = d.norm();
      eq.theta(i, j) = std::acos(std::clamp(d.z() / d.norm(), -1.0, 1.0));
      eq.phi(i, j) = std::atan2(d.y(), d.x());
    }
  return eq;
}

Eigen::VectorXd pack(const Equilibrium& eq, int dims) {
  const int N = eq.size();
  Eigen::VectorXd q(N * dims);
  for (int i = 0; i < N; ++i)
    for (int a = 0; a < dims; ++a) q(a * N + i) = eq.pos[static_cast<size_t>(i)](a) / eq.length_unit;
  return q;
}

}  // namespace

CrystalConfig CrystalConfig::from_trap(int N, double M, const TrapFrequencies& f, bool planar) {
  if (!f.stable) throw PhysicsError("trap is radially unstable (w_c <= sqrt(2) w_z)");
  return {N, M, f.wrho, f.wrho, f.wz, planar};
}

Equilibrium solve_equilibrium(const CrystalConfig& cfg, std::uint64_t seed, int restarts) {
  const Problem p = make_problem(cfg);
  restarts = std::max(restarts, 1);
  std::vector<Minimum> found(static_cast<size_t>(restarts));
  // each restart gets its own stream so results do not depend on scheduling
  detail::parallel_for(found.size(), 0, [&](size_t k) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * (k + 1));
    std::normal_distribution<double> jitter(0.0, 0.05);
    const double ring = std::cbrt(static_cast<double>(p.N)) * 0.8 + 0.2;
    Eigen::VectorXd q = Eigen::VectorXd::Zero(p.n());
    for (int i = 0; i < p.N; ++i) {
      const double ang = 2 * std::numbers::pi * i / p.N;
      const double rad = p.N == 1 ? 0.0 : ring;
      q(i) = rad * std::cos(ang) + jitter(rng);
      q(p.N + i) = rad * std::sin(ang) + jitter(rng);
      if (p.dims == 3) q(2 * p.N + i) = jitter(rng);
    }
    found[k] = minimise(p, q);
  });
  const Minimum* best = nullptr;
  for (const auto& m : found)
    if (m.ok && (!best || m.v < best->v)) best = &m;
  if (!best) {
    const auto& last = found.back();
    std::ostringstream os;
    os << "equilibrium search did not converge (last gradient norm " << last.gnorm << ")";
    throw ConvergenceError(os.str());
  }
  return finish(p, *best, cfg);
}

Equilibrium canonical_orientation(const Equilibrium& eq) {
  Equilibrium out = eq;
  if (eq.pos.empty()) return out;
  const double a0 = std::atan2(eq.pos[0].y(), eq.pos[0].x());
  const Eigen::Matrix3d rot = Eigen::AngleAxisd(-a0, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  std::vector<Eigen::Vector3d> p;
  for (const auto& r : eq.pos) p.push_back(rot * r);
  auto ang = [](const Eigen::Vector3d& r) {
    double a = std::atan2(r.y(), r.x());
    return a < -1e-12 ? a + 2 * std::numbers::pi : a;
  };
  std::stable_sort(p.begin() + 1, p.end(), [&](const auto& a, const auto& b) { return ang(a) < ang(b); });
  out.pos = p;
  const int N = eq.size();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      const Eigen::Vector3d d = p[static_cast<size_t>(i)] - p[static_cast<size_t>(j)];
      out.distance(i, j) = d.norm();
      out.theta(i, j) = std::acos(std::clamp(d.z() / d.norm(), -1.0, 1.0));
      out.phi(i, j) = std::atan2(d.y(), d.x());
    }
  return out;
}

Planarity planarity_check(int N, const TrapFrequencies& f) {
  if (N < 1 || N > 7) throw DomainError("planarity_check supports 1 <= N <= 7");
  if (!f.stable || !(f.wrho > 0)) throw PhysicsError("planarity_check: radially unstable trap");
  Planarity r;
  r.ratio = f.wz / f.wrho;
  // out-of-plane block at the planar minimum: (w_z/w_rho)^2 - C
  const CrystalConfig cfg{N, 1.0, 1.0, 1.0, 0.0, true};
  const Problem p = make_problem(cfg);
  const Equilibrium eq = solve_equilibrium(cfg);
  const Eigen::VectorXd q = pack(eq, 2);
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      const double rr = std::hypot(p.c(q, i, 0) - p.c(q, j, 0), p.c(q, i, 1) - p.c(q, j, 1));
      const double t = 1 / (rr * rr * rr);
      C(i, i) += t;
      C(j, j) += t;
      C(i, j) -= t;
      C(j, i) -= t;
    }
  const double cmax = N > 1 ? Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(C).eigenvalues().maxCoeff() : 0.0;
  r.hessian_crossover = std::sqrt(std::max(cmax, 0.0));
  r.min_out_of_plane = r.ratio * r.ratio - cmax;
  r.critical_ratio = N == 3 ? 1.84 : r.hessian_crossover;
  r.planar = r.ratio >= r.critical_ratio && r.min_out_of_plane > 0;
  return r;
}

Eigen::MatrixXd hessian(const Equilibrium& eq, const CrystalConfig& cfg) {
  const Problem p = make_problem(cfg);
  return p.hessian(pack(eq, p.dims)) * (cfg.wx * cfg.wx);
}

ModeDecomposition normal_modes(const Equilibrium& eq, const CrystalConfig& cfg) {
  const Problem p = make_problem(cfg);
  ModeDecomposition m;
  m.K = hessian(eq, cfg);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.K);
  if (es.info() != Eigen::Success) throw ConvergenceError("normal_modes: eigensolver failed");
  const double scale = cfg.wx * cfg.wx;
  if (es.eigenvalues().minCoeff() < -1e-8 * scale) throw PhysicsError("normal_modes: equilibrium is a saddle point");
  m.modes = es.eigenvectors();
  const int n = static_cast<int>(m.K.rows());
  m.omega.resize(n);
  m.ell.resize(n);
  const int N = p.N;
  Eigen::VectorXd breathe = pack(eq, p.dims);
  if (breathe.norm() > 0) breathe.normalize();
  for (int a = 0; a < n; ++a) {
    const double lam = es.eigenvalues()(a);
    const bool zero = std::abs(lam) < 1e-9 * scale;
    m.omega(a) = zero ? 0.0 : std::sqrt(std::max(lam, 0.0));
    m.ell(a) = zero ? 0.0 : std::sqrt(si::hbar / (2 * cfg.M * m.omega(a)));
    if (zero) m.zero_modes.push_back(a);
    const Eigen::VectorXd v = m.modes.col(a);
    double com = 0;
    for (int d = 0; d < p.dims; ++d) com += std::pow(v.segment(d * N, N).sum(), 2) / N;
    std::string lab;
    if (zero) lab = "rotation";
    else if (com > 0.99) lab = "center-of-mass";
    else if (std::abs(v.dot(breathe)) > 0.99) lab = "breathing";
    else lab = N == 3 && p.dims == 2 ? "rocking" : "mixed";
    m.label.push_back(lab);
  }
  return m;
}

std::vector<Eigen::MatrixXd> spin_phonon_couplings(double V0, const Equilibrium& eq, const ModeDecomposition& m) {
  const int N = eq.size();
  const int n = static_cast<int>(m.modes.rows());
  const int dims = n / std::max(N, 1);
  std::vector<Eigen::MatrixXd> W(static_cast<size_t>(m.modes.cols()), Eigen::MatrixXd::Zero(N, N));
  for (int a = 0; a < m.modes.cols(); ++a) {
    if (m.ell(a) == 0) continue;  // zero mode: no oscillator length
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        if (i == j) continue;
        const double R = eq.distance(i, j);
        Eigen::Vector3d nh = (eq.pos[static_cast<size_t>(i)] - eq.pos[static_cast<size_t>(j)]) / R;
        double proj = 0;
        for (int d = 0; d < dims; ++d) proj += nh(d) * (m.modes(d * N + i, a) - m.modes(d * N + j, a));
        // d/dR (V0 (R_ij/R)^3) = -3 V0 / R_ij
        W[static_cast<size_t>(a)](i, j) = -3 * V0 / R * m.ell(a) * proj;
      }
  }
  return W;
}

}  // namespace rydion
