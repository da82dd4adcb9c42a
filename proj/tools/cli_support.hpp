#pragma once

#include "rydion/errors.hpp"

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace rydion::cli {

// "2pi*220kHz", "220 kHz", "1.3MHz", "1e6 rad/s" -> rad/s. Bare numbers are rejected.
double parse_angular_frequency(const std::string& text);

// "start:stop:count" (inclusive) or a comma list
std::vector<double> parse_grid(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

std::uint64_t fnv1a(const std::string& s);

// Delimiter-separated table with '#' header lines. Rows are buffered by the
// caller and written here in order.
class Table {
public:
  Table(std::string path, std::vector<std::string> header_lines, std::vector<std::string> columns);
  void row(const std::vector<std::string>& cells);
  void close();
  ~Table();

private:
  std::FILE* f_ = nullptr;
  bool own_ = false;
  size_t ncol_;
};

std::string fmt(double v, int prec = 10);
std::string fmt(int v);

}  // namespace rydion::cli
