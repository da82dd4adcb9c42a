// Fits a1 of one l-row so the quantum defect at a reference n hits a target.
// Used to generate data/ca40.species; kept for regeneration.
#include "rydion/errors.hpp"
#include "rydion/radial.hpp"
#include "rydion/species.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <stdexcept>

using namespace rydion;

int main(int argc, char** argv) {
  CLI::App app{"fit one model-potential row to a quantum defect"};
  std::string path;
  int l = 0, n = 45;
  double target = 0, lo = 0.3, hi = 20.0;
  app.add_option("species", path, "species file used as the template")->required();
  app.add_option("--l", l, "orbital angular momentum")->required();
  app.add_option("--n", n, "reference principal quantum number");
  app.add_option("--defect", target, "target quantum defect")->required();
  app.add_option("--lo", lo, "lower a1 bracket");
  app.add_option("--hi", hi, "upper a1 bracket");
  CLI11_PARSE(app, argc, argv);

  try {
    SpeciesParams sp = load_species(path);
    const double j = l == 0 ? 0.5 : l + 0.5;
    auto defect = [&](double a1) {
      sp.rows[static_cast<size_t>(l)].a1 = a1;
      return solve_bound_state(sp, n, l, j).quantum_defect();
    };
    double dlo = defect(lo), dhi = defect(hi);
    std::printf("# a1=%g -> %.6f, a1=%g -> %.6f\n", lo, dlo, hi, dhi);
    if ((dlo - target) * (dhi - target) > 0) {
      std::fprintf(stderr, "target not bracketed\n");
      return 3;
    }
    for (int it = 0; it < 80 && hi - lo > 1e-12 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double dm = defect(mid);
      if ((dm - target) * (dlo - target) > 0) { lo = mid; dlo = dm; } else { hi = mid; }
    }
    const double a1 = 0.5 * (lo + hi);
    std::printf("l=%d a1=%.10f defect=%.8f\n", l, a1, defect(a1));
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
