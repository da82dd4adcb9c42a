#include "cli_support.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

namespace rydion::cli {

namespace {

std::string strip(std::string s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

double to_double(const std::string& s, const std::string& ctx) {
  size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ConfigError("cannot parse number '" + s + "' in " + ctx);
  return v;
}

}  // namespace

double parse_angular_frequency(const std::string& text) {
  std::string s = strip(text);
  const std::string orig = s;
  bool two_pi = false;
  for (const std::string pre : {"2pi*", "2*pi*", "2π*", "2π×"}) {
    if (s.rfind(pre, 0) == 0) {
      s = s.substr(pre.size());
      two_pi = true;
      break;
    }
  }
  struct Suffix { const char* name; double scale; bool angular; };
  static const Suffix suffixes[] = {{"rad/s", 1, true}, {"GHz", 1e9, false}, {"MHz", 1e6, false},
                                    {"kHz", 1e3, false}, {"Hz", 1, false}};
  for (const auto& sf : suffixes) {
    const std::string n = sf.name;
    if (s.size() > n.size() && s.compare(s.size() - n.size(), n.size(), n) == 0) {
      const double v = to_double(s.substr(0, s.size() - n.size()), "frequency '" + orig + "'");
      if (sf.angular) {
        if (two_pi) throw UnitError("'" + orig + "': 2pi prefix with rad/s is ambiguous");
        return v;
      }
      // 2pi*X kHz and X kHz both name the angular frequency 2 pi X 10^3 rad/s
      return 2 * std::numbers::pi * v * sf.scale;
    }
  }
  throw UnitError("frequency '" + orig + "' needs a unit suffix (Hz, kHz, MHz, GHz, rad/s)");
}

std::vector<double> parse_grid(const std::string& text) {
  const std::string s = strip(text);
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError("grid '" + text + "' must be start:stop:count");
    const double a = to_double(parts[0], "grid"), b = to_double(parts[1], "grid");
    const double c = to_double(parts[2], "grid");
    const int n = static_cast<int>(c);
    if (n != c || n < 1) throw ConfigError("grid count must be a positive integer in '" + text + "'");
    if (n == 1) return {a};
    if (!(b > a)) throw ConfigError("grid '" + text + "' must be increasing");
    for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / (n - 1));
    return out;
  }
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(to_double(p, "list"));
  if (out.empty()) throw ConfigError("empty grid");
  for (size_t i = 1; i < out.size(); ++i)
    if (!(out[i] > out[i - 1])) throw ConfigError("grid '" + text + "' must be increasing");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(strip(text));
  for (std::string p; std::getline(ss, p, ',');) {
    const double v = to_double(p, "integer list");
    if (v != std::floor(v)) throw ConfigError("'" + p + "' is not an integer");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) { h ^= c; h *= 1099511628211ull; }
  return h;
}

Table::Table(std::string path, std::vector<std::string> header_lines, std::vector<std::string> columns)
    : ncol_(columns.size()) {
  if (path.empty() || path == "-") {
    f_ = stdout;
  } else {
    f_ = std::fopen(path.c_str(), "w");
    if (!f_) throw ConfigError("cannot open output file '" + path + "'");
    own_ = true;
  }
  for (const auto& h : header_lines) std::fprintf(f_, "# %s\n", h.c_str());
  std::string schema;
  for (size_t i = 0; i < columns.size(); ++i) schema += (i ? "," : "") + columns[i];
  std::fprintf(f_, "# schema: %s\n%s\n", schema.c_str(), schema.c_str());
}

void Table::row(const std::vector<std::string>& cells) {
  if (cells.size() != ncol_) throw ConfigError("internal: row width mismatch");
  std::string line;
  for (size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
  std::fprintf(f_, "%s\n", line.c_str());
}

void Table::close() {
  if (f_ && own_) std::fclose(f_);
  else if (f_) std::fflush(f_);
  f_ = nullptr;
}

Table::~Table() { close(); }

std::string fmt(double v, int prec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

std::string fmt(int v) { return std::to_string(v); }

}  // namespace rydion::cli
