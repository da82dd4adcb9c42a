#include "rydion/spin_model.hpp"

#include "rydion/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace rydion {

namespace {

void check(const SpinModelParams& p) {
  if (p.N < 1) throw DomainError("spin model: N must be >= 1");
  if (p.N > kMaxSpins) throw DomainError("spin model: N = " + std::to_string(p.N) + " exceeds exact-diagonalization capacity");
  if (p.V.rows() != p.N || p.V.cols() != p.N) throw DomainError("spin model: V must be N x N");
  if ((p.V - p.V.transpose()).cwiseAbs().maxCoeff() > 0) throw DomainError("spin model: V must be symmetric");
  if (p.V.diagonal().cwiseAbs().maxCoeff() > 0) throw DomainError("spin model: V must have zero diagonal");
}

Eigen::VectorXcd basis_state(int idx) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
  v(idx) = 1;
  return v;
}

// bit i <-> site i+1 up
int ket(bool s1, bool s2, bool s3) { return (s1 ? 1 : 0) | (s2 ? 2 : 0) | (s3 ? 4 : 0); }

}  // namespace

SpinModelParams SpinModelParams::uniform(int N, double Omega, double Delta, double V0) {
  SpinModelParams p;
  p.N = N;
  p.Omega = Omega;
  p.Delta = Delta;
  p.V = Eigen::MatrixXd::Constant(N, N, V0);
  p.V.diagonal().setZero();
  return p;
}

Eigen::MatrixXd build_hamiltonian(const SpinModelParams& p) {
  check(p);
  const int dim = 1 << p.N;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    double d = 0;
    for (int i = 0; i < p.N; ++i) {
      if (!(s >> i & 1)) continue;
      d -= p.Delta;
      for (int j = i + 1; j < p.N; ++j)
        if (s >> j & 1) d += p.V(i, j);  // (1/2) sum_{i != j} counts each pair once
    }
    h(s, s) = d;
    for (int i = 0; i < p.N; ++i) h(s ^ (1 << i), s) += p.Omega;
  }
  return h;
}

std::vector<SpinLevel> group_levels(const Eigen::VectorXd& e, double rel_tol) {
  std::vector<SpinLevel> out;
  if (e.size() == 0) return out;
  const double tol = rel_tol * std::max(1.0, e.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    if (!out.empty() && std::abs(e(i) - out.back().energy) <= tol) {
      auto& l = out.back();
      l.energy = (l.energy * l.multiplicity + e(i)) / (l.multiplicity + 1);
      ++l.multiplicity;
    } else {
      out.push_back({e(i), 1});
    }
  }
  return out;
}

SpinSpectrum diagonalize(const SpinModelParams& p) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_hamiltonian(p));
  if (es.info() != Eigen::Success) throw ConvergenceError("spin model: eigensolver failed");
  SpinSpectrum s;
  s.energies = es.eigenvalues();
  s.vectors = es.eigenvectors();
  s.levels = group_levels(s.energies);
  return s;
}

Eigen::MatrixXd cyclic_permutation(int N) {
  const int dim = 1 << N;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    int t = 0;
    for (int i = 0; i < N; ++i)
      if (s >> i & 1) t |= 1 << ((i + 1) % N);
    P(t, s) = 1;
  }
  return P;
}

Eigen::MatrixXd reflection(int N) {
  const int dim = 1 << N;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    int t = s;
    if (N >= 3) {
      const int b1 = s >> 1 & 1, b2 = s >> 2 & 1;
      t = (s & ~6) | (b2 << 1) | (b1 << 2);
    }
    P(t, s) = 1;
  }
  return P;
}

SymmetryStates symmetry_states() {
  using cd = std::complex<double>;
  const double k = 1 / std::sqrt(3.0);
  SymmetryStates st;
  const int u1 = ket(1, 0, 0), u2 = ket(0, 1, 0), u3 = ket(0, 0, 1);
  const int h3 = ket(1, 1, 0), h2 = ket(1, 0, 1), h1 = ket(0, 1, 1);  // hole on site
  st.S1 = k * (basis_state(u1) + basis_state(u2) + basis_state(u3));
  st.S2 = k * (basis_state(h3) + basis_state(h2) + basis_state(h1));
  st.Sp = (st.S1 + st.S2) / std::numbers::sqrt2;
  st.Sm = (st.S1 - st.S2) / std::numbers::sqrt2;
  for (int idx = 0; idx < 2; ++idx) {
    const int r = idx == 0 ? 1 : -1;
    const cd w = std::polar(1.0, 2 * std::numbers::pi * r / 3);
    st.C1[idx] = k * (basis_state(u1) + w * basis_state(u2) + w * w * basis_state(u3));
    st.C2[idx] = -k * (basis_state(h1) + w * basis_state(h2) + w * w * basis_state(h3));
    st.Cp[idx] = (st.C1[idx] + st.C2[idx]) / std::numbers::sqrt2;
    st.Cm[idx] = (st.C1[idx] - st.C2[idx]) / std::numbers::sqrt2;
  }
  return st;
}

std::vector<PerturbativeLevel> perturbative_energies(double Omega, double Delta) {
  // <S2| sum sigma^x |S1> = 2 and <C2| sum sigma^x |C1> = 1, so S_-/C_- move down for Omega > 0
  std::vector<PerturbativeLevel> v{
      {-Delta - 2 * Omega, 1, "S-"},
      {-Delta - Omega, 2, "C-"},
      {-Delta + Omega, 2, "C+"},
      {-Delta + 2 * Omega, 1, "S+"},
  };
  if (Omega < 0) std::reverse(v.begin(), v.end());
  return v;
}

GroundStateReport ground_state_report(const SpinModelParams& p) {
  const SpinSpectrum s = diagonalize(p);
  GroundStateReport g;
  g.energy = s.levels.front().energy;
  g.degeneracy = s.levels.front().multiplicity;
  const Eigen::MatrixXcd G = s.vectors.leftCols(g.degeneracy).cast<std::complex<double>>();
  if (p.N == 3) {
    const SymmetryStates st = symmetry_states();
    g.overlap_S_minus = (G.adjoint() * st.Sm).squaredNorm();
    g.overlap_S_plus = (G.adjoint() * st.Sp).squaredNorm();
    Eigen::MatrixXcd span(8, 6);
    span << st.S1, st.S2, st.C1[0], st.C1[1], st.C2[0], st.C2[1];
    g.overlap_manifold = (span.adjoint() * G).squaredNorm() / g.degeneracy;
  }
  // reduced density matrix of site 1, averaged over the ground space
  Eigen::Matrix2d rho = Eigen::Matrix2d::Zero();
  for (int c = 0; c < g.degeneracy; ++c) {
    const Eigen::VectorXd v = s.vectors.col(c);
    for (Eigen::Index st = 0; st < v.size(); ++st) {
      const int b = st & 1;
      rho(b, b) += v(st) * v(st);
      if (b == 0) rho(0, 1) += v(st) * v(st | 1);
    }
  }
  rho(1, 0) = rho(0, 1);
  rho /= g.degeneracy;
  const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(rho).eigenvalues();
  for (int i = 0; i < 2; ++i)
    if (ev(i) > 1e-15) g.entropy -= ev(i) * std::log(ev(i));
  return g;
}

}  // namespace rydion
