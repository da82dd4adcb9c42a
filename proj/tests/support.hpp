#pragma once

#include "rydion/species.hpp"

#include <string>

#ifndef RYDION_TEST_DATA_DIR
#define RYDION_TEST_DATA_DIR "data"
#endif

namespace testing_support {

inline rydion::SpeciesParams species(const std::string& name, int lmax = -1) {
  return rydion::load_species(rydion::resolve_species_path(name, RYDION_TEST_DATA_DIR), lmax);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace testing_support
