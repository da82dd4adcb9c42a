#pragma once

#include "rydion/species.hpp"

#include <compare>
#include <map>
#include <vector>

namespace rydion {

struct GridPolicy {
  double points_per_wavelength = 40;
  double h_max = 0.005;  // step in sqrt(r), a0^(1/2)
  double r_max = 0;      // 0: 2 n (n + 15)
};

// Uniform in x = sqrt(r). Node i sits at x0 + i h.
struct RadialGrid {
  double x0 = 0;
  double h = 0;
  int size = 0;
  bool regular_origin = false;  // inner boundary is the r -> 0 regular solution, not a hard wall

  double x(int i) const { return x0 + h * i; }
  double r(int i) const { const double v = x(i); return v * v; }
  double r_min() const { return x0 * x0; }
  double r_max() const { return r(size - 1); }
  bool same_as(const RadialGrid& o) const {
    return x0 == o.x0 && h == o.h && size == o.size && regular_origin == o.regular_origin;
  }
};

// Hartree atomic units throughout.
struct RadialState {
  int n = 0, l = 0;
  double j = 0.5;
  double energy = 0;
  RadialGrid grid;
  std::vector<double> chi;  // u(r) = sqrt(x) chi(x)
  int nodes = 0;

  double u(int i) const;
  double effective_n() const;   // n* from E = -2 / n*^2
  double quantum_defect() const { return n - effective_n(); }
};

// V_c + V_p + V_so. Throws DomainError for r <= 0.
double model_potential(const SpeciesParams& sp, int l, double j, double r);

double inner_cutoff(const SpeciesParams& sp);
RadialGrid make_grid(const SpeciesParams& sp, int n_max, int l_max, const GridPolicy& policy = {});

RadialState solve_bound_state(const SpeciesParams& sp, int n, int l, double j, const RadialGrid& grid);
RadialState solve_bound_state(const SpeciesParams& sp, int n, int l, double j, const GridPolicy& policy = {});

// <a| r^k |b>; b is interpolated onto a's grid when the grids differ.
double radial_integral(const RadialState& a, const RadialState& b, int k);

struct RadialKey {
  int n = 0, l = 0, twoj = 1;
  auto operator<=>(const RadialKey&) const = default;
  double j() const { return 0.5 * twoj; }
};

// All states of a basis on one shared grid, with r^0..r^2 tables.
class RadialSet {
public:
  RadialSet(const SpeciesParams& sp, std::vector<RadialKey> keys, const GridPolicy& policy = {},
            int threads = 0);

  const RadialState& state(const RadialKey& k) const;
  double integral(const RadialKey& a, const RadialKey& b, int k) const;
  double energy(const RadialKey& k) const { return state(k).energy; }
  const RadialGrid& grid() const { return grid_; }
  const std::vector<RadialKey>& keys() const { return keys_; }

private:
  size_t index(const RadialKey& k) const;
  RadialGrid grid_;
  std::vector<RadialKey> keys_;
  std::vector<RadialState> states_;
  std::vector<double> table_;  // [k][a][b]
};

}  // namespace rydion
