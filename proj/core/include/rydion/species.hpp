#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rydion {

// Per-l model potential row.
struct LParams {
  int l = 0;
  double a1 = 0, a2 = 0, a3 = 0;
  double rc = 1;
  int n_min = 0;  // lowest valence n of this l; 0 means l+1
};

struct SpeciesParams {
  std::string label;
  int z_nuc = 2;
  double mass_amu = 0;
  double alpha_cp = 0;      // a.u.
  bool spin_orbit = true;
  std::vector<LParams> rows;  // indexed by l

  int lmax() const { return static_cast<int>(rows.size()) - 1; }
  const LParams& row(int l) const;
  int n_min(int l) const;
  double mass_kg() const;
  // stable content hash, used in cache keys and output headers
  std::uint64_t hash() const;
};

// Parses the line-oriented species format; required_lmax < 0 skips the coverage check.
SpeciesParams load_species(const std::string& path, int required_lmax = -1);
SpeciesParams parse_species(const std::string& text, const std::string& origin = "<string>",
                            int required_lmax = -1);

// data/<name>.species lookup for bare names, otherwise a path
std::string resolve_species_path(const std::string& name_or_path, const std::string& data_dir);

}  // namespace rydion
