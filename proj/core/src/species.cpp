#include "rydion/species.hpp"

#include "rydion/errors.hpp"
#include "rydion/units.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace rydion {

const LParams& SpeciesParams::row(int l) const {
  if (l < 0 || l > lmax())
    throw ConfigError("species " + label + " has no model-potential row for l=" + std::to_string(l));
  return rows[static_cast<size_t>(l)];
}

int SpeciesParams::n_min(int l) const {
  const int n = row(l).n_min;
  return n > 0 ? n : l + 1;
}

double SpeciesParams::mass_kg() const { return mass_amu * si::amu; }

std::uint64_t SpeciesParams::hash() const {
  // FNV-1a over the numeric content
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* p, size_t n) {
    auto b = static_cast<const unsigned char*>(p);
    for (size_t i = 0; i < n; ++i) { h ^= b[i]; h *= 1099511628211ull; }
  };
  mix(label.data(), label.size());
  mix(&z_nuc, sizeof z_nuc);
  mix(&mass_amu, sizeof mass_amu);
  mix(&alpha_cp, sizeof alpha_cp);
  int so = spin_orbit ? 1 : 0;
  mix(&so, sizeof so);
  for (const auto& r : rows) {
    mix(&r.l, sizeof r.l);
    mix(&r.a1, sizeof r.a1); mix(&r.a2, sizeof r.a2); mix(&r.a3, sizeof r.a3);
    mix(&r.rc, sizeof r.rc); mix(&r.n_min, sizeof r.n_min);
  }
  return h;
}

namespace {

double number(const std::string& tok, const std::string& where) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size()) throw ConfigError(where + ": non-numeric field '" + tok + "'");
  return v;
}

int integer(const std::string& tok, const std::string& where) {
  const double v = number(tok, where);
  if (v != static_cast<int>(v)) throw ConfigError(where + ": expected integer, got '" + tok + "'");
  return static_cast<int>(v);
}

}  // namespace

SpeciesParams parse_species(const std::string& text, const std::string& origin, int required_lmax) {
  SpeciesParams sp;
  bool have_header = false;
  std::map<int, LParams> rows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno);

    if (!have_header) {
      if (tok.size() != 4) throw ConfigError(where + ": header must be 'species Z_nuc mass_amu alpha_cp'");
      sp.label = tok[0];
      sp.z_nuc = integer(tok[1], where);
      sp.mass_amu = number(tok[2], where);
      sp.alpha_cp = number(tok[3], where);
      if (sp.z_nuc < 2) throw ConfigError(where + ": Z_nuc must be >= 2");
      if (sp.mass_amu <= 0) throw ConfigError(where + ": mass must be positive");
      if (sp.alpha_cp < 0) throw ConfigError(where + ": alpha_cp must be >= 0");
      have_header = true;
      continue;
    }
    if (tok[0] == "spin_orbit") {
      if (tok.size() != 2 || (tok[1] != "on" && tok[1] != "off"))
        throw ConfigError(where + ": expected 'spin_orbit on|off'");
      sp.spin_orbit = tok[1] == "on";
      continue;
    }
    if (tok.size() != 5 && tok.size() != 6)
      throw ConfigError(where + ": row must be 'l a1 a2 a3 r_c [n_min]'");
    LParams r;
    r.l = integer(tok[0], where);
    r.a1 = number(tok[1], where);
    r.a2 = number(tok[2], where);
    r.a3 = number(tok[3], where);
    r.rc = number(tok[4], where);
    if (tok.size() == 6) r.n_min = integer(tok[5], where);
    if (r.l < 0) throw ConfigError(where + ": negative l");
    if (r.rc <= 0) throw ConfigError(where + ": r_c must be positive");
    if (r.n_min != 0 && r.n_min <= r.l) throw ConfigError(where + ": n_min must exceed l");
    if (rows.count(r.l)) throw ConfigError(where + ": duplicate row for l=" + tok[0]);
    rows[r.l] = r;
  }
  if (!have_header) throw ConfigError(origin + ": missing species header");
  if (rows.empty()) throw ConfigError(origin + ": no model-potential rows");
  const int lmax = rows.rbegin()->first;
  for (int l = 0; l <= lmax; ++l) {
    if (!rows.count(l)) throw ConfigError(origin + ": missing row for l=" + std::to_string(l));
    sp.rows.push_back(rows[l]);
  }
  if (required_lmax >= 0 && sp.lmax() < required_lmax)
    throw ConfigError(origin + ": rows cover l<=" + std::to_string(sp.lmax()) + " but l=" +
                      std::to_string(required_lmax) + " is required");
  return sp;
}

SpeciesParams load_species(const std::string& path, int required_lmax) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open species file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_species(ss.str(), path, required_lmax);
}

std::string resolve_species_path(const std::string& name_or_path, const std::string& data_dir) {
  namespace fs = std::filesystem;
  if (fs::exists(name_or_path)) return name_or_path;
  if (name_or_path.find('/') == std::string::npos) {
    fs::path p = fs::path(data_dir) / (name_or_path + ".species");
    if (fs::exists(p)) return p.string();
  }
  throw ConfigError("unknown species '" + name_or_path + "'");
}

}  // namespace rydion
