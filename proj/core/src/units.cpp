#include "rydion/units.hpp"

#include "rydion/errors.hpp"

#include <cmath>

namespace rydion {

Dim dimension_of(Unit u) {
  switch (u) {
    case Unit::joule: case Unit::hartree: case Unit::electronvolt: return Dim::energy;
    case Unit::meter: case Unit::bohr: case Unit::micrometer: case Unit::nanometer: return Dim::length;
    case Unit::hertz: case Unit::kilohertz: case Unit::megahertz: case Unit::gigahertz: return Dim::frequency;
    case Unit::rad_per_s: return Dim::angular_frequency;
    case Unit::tesla: case Unit::atomic_field: return Dim::magnetic_field;
    case Unit::volt_per_m2: case Unit::atomic_gradient: return Dim::field_gradient;
    case Unit::one: return Dim::dimensionless;
  }
  throw UnitError("unknown unit");
}

double si_scale(Unit u) {
  const auto& k = constants();
  switch (u) {
    case Unit::joule: return 1.0;
    case Unit::hartree: return k.Eh;
    case Unit::electronvolt: return si::eV;
    case Unit::meter: return 1.0;
    case Unit::bohr: return k.a0;
    case Unit::micrometer: return 1e-6;
    case Unit::nanometer: return 1e-9;
    case Unit::hertz: return 1.0;
    case Unit::kilohertz: return 1e3;
    case Unit::megahertz: return 1e6;
    case Unit::gigahertz: return 1e9;
    case Unit::rad_per_s: return 1.0;
    case Unit::tesla: return 1.0;
    case Unit::atomic_field: return k.B_au;
    case Unit::volt_per_m2: return 1.0;
    case Unit::atomic_gradient: return k.gradient_au;
    case Unit::one: return 1.0;
  }
  throw UnitError("unknown unit");
}

std::string unit_name(Unit u) {
  switch (u) {
    case Unit::joule: return "J";
    case Unit::hartree: return "Eh";
    case Unit::electronvolt: return "eV";
    case Unit::meter: return "m";
    case Unit::bohr: return "a0";
    case Unit::micrometer: return "um";
    case Unit::nanometer: return "nm";
    case Unit::hertz: return "Hz";
    case Unit::kilohertz: return "kHz";
    case Unit::megahertz: return "MHz";
    case Unit::gigahertz: return "GHz";
    case Unit::rad_per_s: return "rad/s";
    case Unit::tesla: return "T";
    case Unit::atomic_field: return "B_au";
    case Unit::volt_per_m2: return "V/m^2";
    case Unit::atomic_gradient: return "grad_au";
    case Unit::one: return "1";
  }
  return "?";
}

Quantity Quantity::operator+(const Quantity& o) const {
  if (dim() != o.dim()) throw UnitError("cannot add " + unit_name(unit_) + " and " + unit_name(o.unit_));
  return {value_ + o.si() / si_scale(unit_), unit_};
}

Quantity Quantity::operator-(const Quantity& o) const { return *this + o * -1.0; }

namespace {
// everything expressed as energy in J for cross-dimension hops
double to_joule(double si_value, Dim d) {
  switch (d) {
    case Dim::energy: return si_value;
    case Dim::frequency: return si::h * si_value;
    case Dim::angular_frequency: return si::hbar * si_value;
    default: throw UnitError("not convertible to energy");
  }
}
double from_joule(double J, Dim d) {
  switch (d) {
    case Dim::energy: return J;
    case Dim::frequency: return J / si::h;
    case Dim::angular_frequency: return J / si::hbar;
    default: throw UnitError("not convertible from energy");
  }
}
bool spectroscopic(Dim d) { return d == Dim::energy || d == Dim::frequency || d == Dim::angular_frequency; }
}  // namespace

Quantity convert(const Quantity& q, Unit target) {
  const Dim from = q.dim(), to = dimension_of(target);
  double si_value;
  if (from == to) {
    si_value = q.si();
  } else if (spectroscopic(from) && spectroscopic(to)) {
    si_value = from_joule(to_joule(q.si(), from), to);
  } else {
    throw UnitError("no conversion from " + unit_name(q.unit()) + " to " + unit_name(target));
  }
  return {si_value / si_scale(target), target};
}

}  // namespace rydion
