#include "rydion/radial.hpp"

#include "parallel.hpp"
#include "rydion/errors.hpp"
#include "rydion/units.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace rydion {

namespace {

constexpr double kTiny = 1e-30;
constexpr double kHuge = 1e100;

struct Pieces {
  double v, dv;  // V_l and dV_l/dr (no spin-orbit)
};

Pieces central(const SpeciesParams& sp, int l, double r) {
  const LParams& p = sp.row(l);
  const double e1 = std::exp(-p.a1 * r), e3 = std::exp(-p.a3 * r);
  const double S = 2.0 + (sp.z_nuc - 2) * e1 + p.a2 * e3;
  const double dS = -(sp.z_nuc - 2) * p.a1 * e1 - p.a2 * p.a3 * e3;
  double v = -S / r;
  double dv = S / (r * r) - dS / r;
  if (sp.alpha_cp > 0) {
    const double q = std::pow(r / p.rc, 6);
    const double eq = std::exp(-q);
    const double r4 = r * r * r * r;
    v += -sp.alpha_cp / (2 * r4) * (1 - eq);
    dv += (2 * sp.alpha_cp * (1 - eq) - 3 * sp.alpha_cp * q * eq) / (r4 * r);
  }
  return {v, dv};
}

double ls_factor(int l, double j) {
  return 0.5 * (j * (j + 1) - l * (l + 1) - 0.75);
}

}  // namespace

double model_potential(const SpeciesParams& sp, int l, double j, double r) {
  if (!(r > 0)) throw DomainError("model_potential: r must be positive");
  const Pieces c = central(sp, l, r);
  if (l == 0 || !sp.spin_orbit) return c.v;
  if (std::abs(std::abs(j - l) - 0.5) > 1e-12) throw DomainError("model_potential: j must be l +- 1/2");
  const double c2 = au::c_light * au::c_light;
  const double reg = 1.0 - c.v / (2 * c2);
  return c.v + ls_factor(l, j) / (2 * c2 * r) * c.dv / (reg * reg);
}

double inner_cutoff(const SpeciesParams& sp) {
  return std::max(std::cbrt(sp.alpha_cp), 0.05);
}

RadialGrid make_grid(const SpeciesParams& sp, int n_max, int l_max, const GridPolicy& policy) {
  if (n_max < 1) throw DomainError("make_grid: n_max must be >= 1");
  RadialGrid g;
  g.regular_origin = sp.alpha_cp == 0;
  const double r_out = policy.r_max > 0 ? policy.r_max : 2.0 * n_max * (n_max + 15);
  const double x_out = std::sqrt(r_out);

  // local wavenumber in x is sqrt(8 x^2 (E - V)); E ~ 0 bounds it from above
  const double x_lo = g.regular_origin ? 0.05 : std::sqrt(inner_cutoff(sp));
  double kmax = 0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = x_lo + (x_out - x_lo) * i / 2000.0;
    for (int l = 0; l <= std::min(l_max, sp.lmax()); ++l) {
      const double v = central(sp, l, x * x).v;
      if (v < 0) kmax = std::max(kmax, std::sqrt(-8 * x * x * v));
    }
  }
  double h = policy.h_max;
  if (kmax > 0) h = std::min(h, 2 * std::numbers::pi / (policy.points_per_wavelength * kmax));

  if (g.regular_origin) {
    // start where the Numerov weights stay positive for the largest centrifugal term
    const double c = (2 * l_max + 0.5) * (2 * l_max + 1.5);
    g.x0 = h * std::max(1.0, std::ceil(std::sqrt(c / 6.0)));
  } else {
    g.x0 = std::sqrt(inner_cutoff(sp));
  }
  g.h = h;
  g.size = static_cast<int>(std::ceil((x_out - g.x0) / h)) + 1;
  return g;
}

double RadialState::u(int i) const { return std::sqrt(grid.x(i)) * chi[static_cast<size_t>(i)]; }

double RadialState::effective_n() const { return std::sqrt(-2.0 / energy); }

namespace {

class Shooter {
public:
  Shooter(const SpeciesParams& sp, int l, double j, const RadialGrid& g) : g_(g), l_(l) {
    vx_.resize(static_cast<size_t>(g.size));
    cent_ = (2 * l + 0.5) * (2 * l + 1.5);
    for (int i = 0; i < g.size; ++i) {
      const double x = g.x(i);
      vx_[static_cast<size_t>(i)] = 8 * x * x * model_potential(sp, l, j, x * x);
    }
    // Taylor coefficients of S(r) = -r V(r)
    const LParams& p = sp.row(l);
    double fact = 1;
    for (int m = 0; m < 16; ++m) {
      if (m) fact *= m;
      S_[m] = ((sp.z_nuc - 2) * std::pow(-p.a1, m) + p.a2 * std::pow(-p.a3, m)) / fact;
    }
    S_[0] += 2;
  }

  double f(int i, double E) const {
    const double x = g_.x(i);
    return vx_[static_cast<size_t>(i)] - 8 * x * x * E + cent_ / (x * x);
  }

  // Leading grid values: Frobenius series for the regular origin, a tiny
  // seed behind the hard wall otherwise. Returns the number of points set.
  int start(double E, double* c, int cap) const {
    if (!g_.regular_origin) {
      c[0] = 0;
      c[1] = 1e-20;
      return 2;
    }
    // u = sum_k b_k r^(l+1+k) with k(2l+1+k) b_k = -2 sum_m S_m b_(k-1-m) - 2E b_(k-2)
    constexpr int K = 16;
    double b[K] = {1.0};
    for (int k = 1; k < K; ++k) {
      double acc = 0;
      for (int m = 0; m <= k - 1; ++m) acc -= 2 * S_[m] * b[k - 1 - m];
      if (k >= 2) acc -= 2 * E * b[k - 2];
      b[k] = acc / (k * (2.0 * l_ + 1 + k));
    }
    int n = 0;
    const double r_series = 0.01 / std::max(1.0, S_[0] / 2);
    while (n < cap && (n < 2 || g_.r(n) <= r_series)) {
      const double r = g_.r(n);
      double sum = 0, rp = 1;
      for (int k = 0; k < K; ++k, rp *= r) sum += b[k] * rp;
      c[n] = std::pow(r, l_ + 1) * sum / std::sqrt(g_.x(n));
      ++n;
    }
    return n;
  }

  // Outward sweep over the whole grid; returns sign changes (Sturm count).
  int count_nodes(double E) const {
    const double k = g_.h * g_.h / 12;
    double seed[512];
    const int m = start(E, seed, std::min(512, g_.size));
    int nodes = 0;
    double prev = 0;
    for (int i = 0; i < m; ++i) {
      if (seed[i] != 0 && prev != 0 && (seed[i] < 0) != (prev < 0)) ++nodes;
      if (seed[i] != 0) prev = seed[i];
    }
    double w0 = (1 - k * f(m - 2, E)) * seed[m - 2], w1 = (1 - k * f(m - 1, E)) * seed[m - 1];
    for (int i = m - 1; i + 1 < g_.size; ++i) {
      const double fi = f(i, E);
      const double ci = w1 / (1 - k * fi);
      const double w2 = 2 * w1 - w0 + 12 * k * fi * ci;
      const double c2 = w2 / (1 - k * f(i + 1, E));
      if (c2 != 0 && prev != 0 && (c2 < 0) != (prev < 0)) ++nodes;
      if (c2 != 0) prev = c2;
      w0 = w1;
      w1 = w2;
      if (std::abs(w1) > kHuge) { w0 /= kHuge; w1 /= kHuge; prev /= kHuge; }
    }
    return nodes;
  }

  std::vector<double> matched(double E, int& match) const {
    const int N = g_.size;
    const double k = g_.h * g_.h / 12;
    std::vector<double> fv(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i) fv[static_cast<size_t>(i)] = f(i, E);
    match = N - 2;
    while (match > 2 && fv[static_cast<size_t>(match)] > 0) --match;
    if (match <= 2) match = N / 2;

    std::vector<double> c(static_cast<size_t>(N), 0.0);
    auto at = [&](int i) -> double& { return c[static_cast<size_t>(i)]; };
    auto F = [&](int i) { return 1 - k * fv[static_cast<size_t>(i)]; };

    const int m0 = start(E, c.data(), std::min(match, N));
    for (int i = m0 - 1; i < match; ++i) {
      at(i + 1) = ((2 + 10 * k * fv[static_cast<size_t>(i)]) * at(i) - F(i - 1) * at(i - 1)) / F(i + 1);
      if (std::abs(at(i + 1)) > kHuge)
        for (int m = 0; m <= i + 1; ++m) at(m) /= kHuge;
    }
    const double out_m = at(match);

    std::vector<double> in(static_cast<size_t>(N), 0.0);
    auto bt = [&](int i) -> double& { return in[static_cast<size_t>(i)]; };
    bt(N - 1) = 0;
    bt(N - 2) = kTiny;
    for (int i = N - 2; i > match; --i) {
      bt(i - 1) = ((2 + 10 * k * fv[static_cast<size_t>(i)]) * bt(i) - F(i + 1) * bt(i + 1)) / F(i - 1);
      if (std::abs(bt(i - 1)) > kHuge)
        for (int m = i - 1; m < N; ++m) bt(m) /= kHuge;
    }
    const double scale = out_m / bt(match);
    for (int i = match + 1; i < N; ++i) at(i) = bt(i) * scale;
    return c;
  }

private:
  const RadialGrid& g_;
  int l_;
  double cent_ = 0;
  double S_[16] = {};
  std::vector<double> vx_;
};

int sign_changes(const std::vector<double>& c) {
  int nodes = 0;
  double prev = 0;
  for (double v : c) {
    if (v == 0) continue;
    if (prev != 0 && (v < 0) != (prev < 0)) ++nodes;
    prev = v;
  }
  return nodes;
}

}  // namespace

RadialState solve_bound_state(const SpeciesParams& sp, int n, int l, double j, const RadialGrid& grid) {
  if (l < 0 || n <= l) throw DomainError("solve_bound_state: need n > l >= 0");
  if (l > sp.lmax()) throw ConfigError("species " + sp.label + " lacks l=" + std::to_string(l));
  if (l == 0) j = 0.5;
  const int target = n - sp.n_min(l);
  if (target < 0)
    throw DomainError("solve_bound_state: n=" + std::to_string(n) + " below lowest valence level for l=" +
                      std::to_string(l));

  Shooter sh(sp, l, j, grid);

  // bracket: hi has more than `target` nodes, lo has at most `target`
  const double guess = -2.0 / std::pow(n - 0.5 * (sp.n_min(l) - l - 1), 2);
  double hi = guess * 0.5, lo = guess * 2.0;
  int nh = sh.count_nodes(hi), nl = sh.count_nodes(lo);
  for (int it = 0; nh <= target && it < 60; ++it) { hi *= 0.5; nh = sh.count_nodes(hi); }
  for (int it = 0; nl > target && it < 60; ++it) { lo *= 2.0; nl = sh.count_nodes(lo); }
  if (nh <= target || nl > target) {
    std::ostringstream os;
    os << "no bracket for (n=" << n << ", l=" << l << ", j=" << j << "): nodes(" << lo << ")=" << nl
       << ", nodes(" << hi << ")=" << nh << ", target " << target;
    throw ConvergenceError(os.str());
  }
  for (int it = 0; it < 200 && hi - lo > 4e-16 * std::abs(lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sh.count_nodes(mid) > target) hi = mid; else lo = mid;
  }
  const double E = 0.5 * (lo + hi);

  RadialState st;
  st.n = n;
  st.l = l;
  st.j = j;
  st.energy = E;
  st.grid = grid;
  int match = 0;
  st.chi = sh.matched(E, match);

  double norm = 0;
  for (int i = 0; i < grid.size; ++i) {
    const double x = grid.x(i);
    norm += 2 * x * x * st.chi[static_cast<size_t>(i)] * st.chi[static_cast<size_t>(i)];
  }
  norm = std::sqrt(norm * grid.h);
  // first lobe positive
  double first = 0;
  for (double v : st.chi) if (std::abs(v) > 1e-8 * norm) { first = v; break; }
  const double s = (first < 0 ? -1.0 : 1.0) / norm;
  for (double& v : st.chi) v *= s;

  st.nodes = sign_changes(st.chi);
  if (st.nodes != target || !(E < 0)) {
    std::ostringstream os;
    os << "state (n=" << n << ", l=" << l << ", j=" << j << ") converged to E=" << E << " with " << st.nodes
       << " nodes, expected " << target << " (bracket [" << lo << ", " << hi << "])";
    throw ConvergenceError(os.str());
  }
  return st;
}

RadialState solve_bound_state(const SpeciesParams& sp, int n, int l, double j, const GridPolicy& policy) {
  return solve_bound_state(sp, n, l, j, make_grid(sp, n, l, policy));
}

namespace {

// cubic Lagrange interpolation of chi_b at x
double interp(const RadialState& b, double x) {
  const auto& g = b.grid;
  const double t = (x - g.x0) / g.h;
  if (t < 0 || t > g.size - 1) return 0.0;
  int i = std::clamp(static_cast<int>(std::floor(t)) - 1, 0, std::max(0, g.size - 4));
  const double s = t - i;
  const double* c = &b.chi[static_cast<size_t>(i)];
  const double l0 = -(s - 1) * (s - 2) * (s - 3) / 6, l1 = s * (s - 2) * (s - 3) / 2;
  const double l2 = -s * (s - 1) * (s - 3) / 2, l3 = s * (s - 1) * (s - 2) / 6;
  return c[0] * l0 + c[1] * l1 + c[2] * l2 + c[3] * l3;
}

}  // namespace

double radial_integral(const RadialState& a, const RadialState& b, int k) {
  const auto& g = a.grid;
  double sum = 0;
  if (g.same_as(b.grid)) {
    for (int i = 0; i < g.size; ++i) {
      const double x = g.x(i);
      sum += 2 * std::pow(x, 2 + 2 * k) * a.chi[static_cast<size_t>(i)] * b.chi[static_cast<size_t>(i)];
    }
    return sum * g.h;
  }
  const double lo = std::max(g.x0, b.grid.x0), hi = std::min(g.x(g.size - 1), b.grid.x(b.grid.size - 1));
  if (!(hi > lo)) throw DomainError("radial_integral: grids do not overlap");
  // b is carried in u, so re-express on a's x: chi_b(x) is grid independent
  for (int i = 0; i < g.size; ++i) {
    const double x = g.x(i);
    sum += 2 * std::pow(x, 2 + 2 * k) * a.chi[static_cast<size_t>(i)] * interp(b, x);
  }
  return sum * g.h;
}

RadialSet::RadialSet(const SpeciesParams& sp, std::vector<RadialKey> keys, const GridPolicy& policy,
                     int threads)
    : keys_(std::move(keys)) {
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  if (keys_.empty()) throw DomainError("RadialSet: no states requested");
  int nmax = 0, lmax = 0;
  for (const auto& k : keys_) { nmax = std::max(nmax, k.n); lmax = std::max(lmax, k.l); }
  grid_ = make_grid(sp, nmax, lmax, policy);
  states_.resize(keys_.size());
  detail::parallel_for(keys_.size(), threads, [&](size_t i) {
    states_[i] = solve_bound_state(sp, keys_[i].n, keys_[i].l, keys_[i].j(), grid_);
  });
  const size_t m = keys_.size();
  table_.assign(3 * m * m, 0.0);
  detail::parallel_for(m, threads, [&](size_t a) {
    for (size_t b = a; b < m; ++b)
      for (int k = 0; k < 3; ++k) {
        const double v = radial_integral(states_[a], states_[b], k);
        table_[(k * m + a) * m + b] = v;
        table_[(k * m + b) * m + a] = v;
      }
  });
}

size_t RadialSet::index(const RadialKey& k) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
  if (it == keys_.end() || *it != k)
    throw LookupError("radial state (n=" + std::to_string(k.n) + ", l=" + std::to_string(k.l) + ", 2j=" +
                      std::to_string(k.twoj) + ") not in set");
  return static_cast<size_t>(it - keys_.begin());
}

const RadialState& RadialSet::state(const RadialKey& k) const { return states_[index(k)]; }

double RadialSet::integral(const RadialKey& a, const RadialKey& b, int k) const {
  if (k < 0 || k > 2) return radial_integral(state(a), state(b), k);
  const size_t m = keys_.size();
  return table_[(static_cast<size_t>(k) * m + index(a)) * m + index(b)];
}

}  // namespace rydion
