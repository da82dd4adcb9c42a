#pragma once

namespace rydion {

// Condon-Shortley phases throughout. Half-integers are passed as doubles and
// rounded to the nearest half; invalid combinations give 0.

struct CoupledLabel {
  int n = 0, l = 0;
  double j = 0.5, mj = 0.5;
};

struct UncoupledLabel {
  int n = 0, l = 0, ml = 0;
  double ms = 0.5;
};

// (j1 j2 j3; m1 m2 m3) with all arguments doubled
double wigner3j_2(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3);
double wigner3j(double j1, double j2, double j3, double m1, double m2, double m3);
double clebsch_gordan(double j1, double m1, double j2, double m2, double J, double M);

// <l ml; 1/2 ms | j mj>
double clebsch_gordan(int l, int ml, double ms, double j, double mj);

// <l m | C^k_q | l' m'>
double ck_element(int l, int m, int k, int q, int lp, int mp);

enum class AngularOp { cos_theta, sin2_theta, one_minus_3cos2 };

// <l m | op | l' m'>, real and symmetric
double angular_element(AngularOp op, int l, int m, int lp, int mp);

}  // namespace rydion
