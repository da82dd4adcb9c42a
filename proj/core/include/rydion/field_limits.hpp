#pragma once

namespace rydion {

// Field at which the diamagnetic term overtakes the n -> n+1 spacing, T
double landau_threshold_field(int n);
// smallest n that is diamagnetically dominated at B (T)
int landau_threshold_n(double B);

// Saddle-point ionization gradient for a Z = 2 core, V/m^2. Scales as n^-6.
double ionization_gradient(int n);
// largest n still bound at gradient beta (V/m^2)
int ionization_n(double beta);

// gradient where e beta equals e^2 B^2 / 8 m_e, V/m^2
double quadrupole_dominance_gradient(double B);

}  // namespace rydion
