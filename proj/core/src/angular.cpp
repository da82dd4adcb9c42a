#include "rydion/angular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

namespace rydion {

namespace {

// log-factorials cover every argument reachable for l <= ~80
const std::array<double, 400>& log_fact() {
  static const auto table = [] {
    std::array<double, 400> t{};
    for (size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] + std::log(static_cast<double>(i));
    return t;
  }();
  return table;
}

double lf(int n) { return log_fact()[static_cast<size_t>(n)]; }

int twice(double v) { return static_cast<int>(std::lround(2 * v)); }

}  // namespace

double wigner3j_2(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
  if (tm1 + tm2 + tm3 != 0) return 0;
  if (tj1 < 0 || tj2 < 0 || tj3 < 0) return 0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0;
  if ((tj1 + tm1) % 2 || (tj2 + tm2) % 2 || (tj3 + tm3) % 2) return 0;
  if (tj3 > tj1 + tj2 || tj3 < std::abs(tj1 - tj2) || (tj1 + tj2 + tj3) % 2) return 0;

  const int a = (tj1 + tj2 - tj3) / 2, b = (tj1 - tj2 + tj3) / 2, c = (-tj1 + tj2 + tj3) / 2;
  const int J = (tj1 + tj2 + tj3) / 2;
  const double tri = 0.5 * (lf(a) + lf(b) + lf(c) - lf(J + 1));
  const double pre = 0.5 * (lf((tj1 + tm1) / 2) + lf((tj1 - tm1) / 2) + lf((tj2 + tm2) / 2) +
                            lf((tj2 - tm2) / 2) + lf((tj3 + tm3) / 2) + lf((tj3 - tm3) / 2));

  const int k1 = (tj2 - tj3 - tm1) / 2;   // j2 - j3 - m1
  const int k2 = (tj1 - tj3 + tm2) / 2;   // j1 - j3 + m2
  const int k3 = a;                       // j1 + j2 - j3
  const int k4 = (tj1 - tm1) / 2;         // j1 - m1
  const int k5 = (tj2 + tm2) / 2;         // j2 + m2
  const int tmin = std::max({0, k1, k2});
  const int tmax = std::min({k3, k4, k5});
  double sum = 0;
  for (int t = tmin; t <= tmax; ++t) {
    const double term = std::exp(tri + pre - lf(t) - lf(t - k1) - lf(t - k2) - lf(k3 - t) - lf(k4 - t) - lf(k5 - t));
    sum += (t % 2 ? -term : term);
  }
  const int phase = (tj1 - tj2 - tm3) / 2;
  return (std::abs(phase) % 2 ? -sum : sum);
}

double wigner3j(double j1, double j2, double j3, double m1, double m2, double m3) {
  return wigner3j_2(twice(j1), twice(j2), twice(j3), twice(m1), twice(m2), twice(m3));
}

double clebsch_gordan(double j1, double m1, double j2, double m2, double J, double M) {
  const int tj1 = twice(j1), tj2 = twice(j2), tJ = twice(J), tM = twice(M);
  const double w = wigner3j_2(tj1, tj2, tJ, twice(m1), twice(m2), -tM);
  if (w == 0) return 0;
  const int phase = (tj1 - tj2 + tM) / 2;
  return (std::abs(phase) % 2 ? -1.0 : 1.0) * std::sqrt(tJ + 1.0) * w;
}

double clebsch_gordan(int l, int ml, double ms, double j, double mj) {
  return clebsch_gordan(static_cast<double>(l), static_cast<double>(ml), 0.5, ms, j, mj);
}

double ck_element(int l, int m, int k, int q, int lp, int mp) {
  const double a = wigner3j_2(2 * l, 2 * k, 2 * lp, 0, 0, 0);
  if (a == 0) return 0;
  const double b = wigner3j_2(2 * l, 2 * k, 2 * lp, -2 * m, 2 * q, 2 * mp);
  if (b == 0) return 0;
  const double s = (std::abs(m) % 2) ? -1.0 : 1.0;
  return s * std::sqrt((2 * l + 1.0) * (2 * lp + 1.0)) * a * b;
}

double angular_element(AngularOp op, int l, int m, int lp, int mp) {
  if (m != mp) return 0;
  switch (op) {
    case AngularOp::cos_theta:
      return ck_element(l, m, 1, 0, lp, mp);
    case AngularOp::sin2_theta:
      return (l == lp ? 2.0 / 3.0 : 0.0) - 2.0 / 3.0 * ck_element(l, m, 2, 0, lp, mp);
    case AngularOp::one_minus_3cos2:
      return -2.0 * ck_element(l, m, 2, 0, lp, mp);
  }
  return 0;
}

}  // namespace rydion
