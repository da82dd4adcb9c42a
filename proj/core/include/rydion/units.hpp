#pragma once

#include <numbers>
#include <string>

namespace rydion {

// CODATA 2018 (exact where SI fixes them).
namespace si {
inline constexpr double e = 1.602176634e-19;       // C
inline constexpr double me = 9.1093837015e-31;     // kg
inline constexpr double hbar = 1.054571817e-34;    // J s
inline constexpr double h = 6.62607015e-34;        // J s
inline constexpr double eps0 = 8.8541878128e-12;   // F/m
inline constexpr double a0 = 5.29177210903e-11;    // m
inline constexpr double Eh = 4.3597447222071e-18;  // J
inline constexpr double c = 299792458.0;           // m/s
inline constexpr double amu = 1.66053906660e-27;   // kg
inline constexpr double alpha = 7.2973525693e-3;
inline constexpr double gs = 2.00231930436256;     // |g| of the free electron
inline constexpr double eV = e;                    // J
inline constexpr double coulomb_k = 1.0 / (4.0 * std::numbers::pi * eps0);
}  // namespace si

struct PhysicalConstants {
  double e = si::e;
  double me = si::me;
  double hbar = si::hbar;
  double eps0 = si::eps0;
  double a0 = si::a0;
  double Eh = si::Eh;
  double c = si::c;
  double B_au = si::hbar / (si::e * si::a0 * si::a0);         // T
  double gradient_au = si::Eh / (si::e * si::a0 * si::a0);    // V/m^2
};

inline const PhysicalConstants& constants() {
  static const PhysicalConstants k{};
  return k;
}

// atomic <-> SI helpers
namespace au {
inline double tesla(double B_si) { return B_si / constants().B_au; }
inline double gradient(double beta_si) { return beta_si / constants().gradient_au; }
inline constexpr double c_light = 1.0 / si::alpha;
}  // namespace au

enum class Dim { energy, length, frequency, angular_frequency, magnetic_field, field_gradient, dimensionless };

enum class Unit {
  joule, hartree, electronvolt,
  meter, bohr, micrometer, nanometer,
  hertz, kilohertz, megahertz, gigahertz,
  rad_per_s,
  tesla, atomic_field,
  volt_per_m2, atomic_gradient,
  one
};

Dim dimension_of(Unit u);
double si_scale(Unit u);
std::string unit_name(Unit u);

// Value tagged with a unit; stored as given, compared in SI.
class Quantity {
public:
  Quantity(double value, Unit unit) : value_(value), unit_(unit) {}
  double value() const { return value_; }
  Unit unit() const { return unit_; }
  Dim dim() const { return dimension_of(unit_); }
  double si() const { return value_ * si_scale(unit_); }

  Quantity operator+(const Quantity& o) const;
  Quantity operator-(const Quantity& o) const;
  Quantity operator*(double s) const { return {value_ * s, unit_}; }

private:
  double value_;
  Unit unit_;
};

// Same-dimension rescale, or energy <-> frequency <-> angular frequency via h and hbar.
Quantity convert(const Quantity& q, Unit target);

}  // namespace rydion
