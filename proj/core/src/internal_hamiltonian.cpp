#include "rydion/internal_hamiltonian.hpp"

#include "rydion/errors.hpp"
#include "rydion/units.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace rydion {

namespace {

void add_manifold(BasisSet& b, int n, int l0, int l1) {
  for (int l = l0; l <= l1; ++l) {
    for (int twoj = std::abs(2 * l - 1); twoj <= 2 * l + 1; twoj += 2) {
      for (int twomj = -twoj; twomj <= twoj; twomj += 2)
        b.states.push_back({n, l, 0.5 * twoj, 0.5 * twomj});
    }
  }
}

int twice(double v) { return static_cast<int>(std::lround(2 * v)); }

// sum over m_s of CG products times f(m_l, m_s); both states share m_j
template <class F>
double spin_sum(const CoupledLabel& a, const CoupledLabel& b, F&& f) {
  double s = 0;
  for (int twoms : {-1, 1}) {
    const double ms = 0.5 * twoms;
    const double mla = a.mj - ms, mlb = b.mj - ms;
    if (std::abs(mla) > a.l + 1e-9 || std::abs(mlb) > b.l + 1e-9) continue;
    const int ia = static_cast<int>(std::lround(mla)), ib = static_cast<int>(std::lround(mlb));
    const double ca = clebsch_gordan(a.l, ia, ms, a.j, a.mj);
    const double cb = clebsch_gordan(b.l, ib, ms, b.j, b.mj);
    if (ca == 0 || cb == 0) continue;
    s += ca * cb * f(ia, ib, ms);
  }
  return s;
}

}  // namespace

std::vector<RadialKey> BasisSet::radial_keys() const {
  std::set<RadialKey> k;
  for (const auto& s : states) k.insert(key(s));
  return {k.begin(), k.end()};
}

BasisSet build_basis(int n, const SpeciesParams& sp, int lmax) {
  if (lmax < 1) throw DomainError("build_basis: lmax must be >= 1");
  if (n < lmax + 3) throw DomainError("build_basis: n must be >= lmax + 3");
  if (sp.lmax() < lmax)
    throw ConfigError("species " + sp.label + " has no model potential row for l=" + std::to_string(sp.lmax() + 1));
  BasisSet b;
  b.n_ref = n;
  b.lmax = lmax;
  add_manifold(b, n - 2, 3, lmax);
  add_manifold(b, n - 1, 2, lmax);
  add_manifold(b, n, 0, 1);
  return b;
}

std::vector<Block> blocks(const BasisSet& basis) {
  std::map<std::pair<int, int>, Block> m;
  for (size_t i = 0; i < basis.size(); ++i) {
    const auto& s = basis.states[i];
    const int p = s.l % 2 ? -1 : 1;
    auto& blk = m[{twice(s.mj), p}];
    blk.twomj = twice(s.mj);
    blk.parity = p;
    blk.index.push_back(static_cast<int>(i));
  }
  std::vector<Block> out;
  for (auto& [k, v] : m) out.push_back(std::move(v));
  return out;
}

Eigen::MatrixXd HamiltonianTerms::at(const FieldPoint& f) const {
  const double b = f.B / constants().B_au;
  const double g = f.beta / constants().gradient_au;
  Eigen::MatrixXd h = h0;
  if (b != 0) h += b * zeeman + b * b * diamagnetic;
  if (g != 0) h += g * quadrupole;
  return h;
}

HamiltonianTerms assemble_terms(const BasisSet& basis, const RadialSet& radial) {
  const auto N = static_cast<Eigen::Index>(basis.size());
  HamiltonianTerms t;
  t.h0 = Eigen::MatrixXd::Zero(N, N);
  t.zeeman = Eigen::MatrixXd::Zero(N, N);
  t.diamagnetic = Eigen::MatrixXd::Zero(N, N);
  t.quadrupole = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    const auto& a = basis.states[static_cast<size_t>(i)];
    t.h0(i, i) = radial.energy(BasisSet::key(a));
    for (Eigen::Index k = i; k < N; ++k) {
      const auto& b = basis.states[static_cast<size_t>(k)];
      if (twice(a.mj) != twice(b.mj)) continue;
      const auto ka = BasisSet::key(a), kb = BasisSet::key(b);
      if (a.l == b.l) {
        const double ov = radial.integral(ka, kb, 0);
        const double z = spin_sum(a, b, [](int ml, int mlb, double ms) {
          return ml == mlb ? ml + si::gs * ms : 0.0;
        });
        // (1/2)(l_z + g_s s_z)
        t.zeeman(i, k) = t.zeeman(k, i) = 0.5 * ov * z;
      }
      if (std::abs(a.l - b.l) % 2 == 0 && std::abs(a.l - b.l) <= 2) {
        const double r2 = radial.integral(ka, kb, 2);
        const double sin2 = spin_sum(a, b, [&](int ml, int mlb, double) {
          return angular_element(AngularOp::sin2_theta, a.l, ml, b.l, mlb);
        });
        const double q = spin_sum(a, b, [&](int ml, int mlb, double) {
          return angular_element(AngularOp::one_minus_3cos2, a.l, ml, b.l, mlb);
        });
        t.diamagnetic(i, k) = t.diamagnetic(k, i) = r2 * sin2 / 8.0;
        t.quadrupole(i, k) = t.quadrupole(k, i) = r2 * q;
      }
    }
  }
  return t;
}

Eigen::MatrixXd assemble(const BasisSet& basis, const RadialSet& radial, const FieldPoint& field) {
  if (field.B < 0 || field.beta < 0) throw DomainError("assemble: B and beta must be non-negative");
  return assemble_terms(basis, radial).at(field);
}

Eigen::MatrixXd dipole_matrix(const BasisSet& basis, const RadialSet& radial, int q) {
  const auto N = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    const auto& a = basis.states[static_cast<size_t>(i)];
    for (Eigen::Index k = 0; k < N; ++k) {
      const auto& b = basis.states[static_cast<size_t>(k)];
      if (std::abs(a.l - b.l) != 1 || twice(a.mj) != twice(b.mj) + 2 * q) continue;
      double ang = 0;
      for (int twoms : {-1, 1}) {
        const double ms = 0.5 * twoms;
        const double mla = a.mj - ms, mlb = b.mj - ms;
        if (std::abs(mla) > a.l + 1e-9 || std::abs(mlb) > b.l + 1e-9) continue;
        const int ia = static_cast<int>(std::lround(mla)), ib = static_cast<int>(std::lround(mlb));
        ang += clebsch_gordan(a.l, ia, ms, a.j, a.mj) * clebsch_gordan(b.l, ib, ms, b.j, b.mj) *
               ck_element(a.l, ia, 1, q, b.l, ib);
      }
      if (ang != 0) d(i, k) = ang * radial.integral(BasisSet::key(a), BasisSet::key(b), 1);
    }
  }
  return d;
}

std::string PBLabel::str() const {
  static const char* L = "SPDFGHIKLMNOQ";
  std::ostringstream os;
  os << n;
  if (l < 13) os << L[l]; else os << "[l=" << l << "]";
  os << "(ml=" << ml << ",ms=" << (twoms > 0 ? "+" : "-") << "1/2)";
  return os.str();
}

double uncoupled_weight(const BasisSet& basis, const Eigen::VectorXd& v, const PBLabel& lab) {
  const double mj = lab.ml + lab.ms();
  double amp = 0;
  for (size_t i = 0; i < basis.size(); ++i) {
    const auto& s = basis.states[i];
    if (s.n != lab.n || s.l != lab.l || twice(s.mj) != twice(mj)) continue;
    amp += clebsch_gordan(s.l, lab.ml, lab.ms(), s.j, s.mj) * v(static_cast<Eigen::Index>(i));
  }
  return amp * amp;
}

std::vector<PBLabel> uncoupled_labels(const BasisSet& basis) {
  std::set<PBLabel> out;
  for (const auto& s : basis.states)
    for (int twoms : {-1, 1}) {
      const int ml = static_cast<int>(std::lround(s.mj - 0.5 * twoms));
      if (std::abs(ml) <= s.l) out.insert({s.n, s.l, ml, twoms});
    }
  return {out.begin(), out.end()};
}

}  // namespace rydion
