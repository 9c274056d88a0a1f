#ifndef KERSHAW_CSV_HPP
#define KERSHAW_CSV_HPP

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace kershaw {

/// 17 significant digits: doubles round-trip exactly through the CSVs.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct CsvWriter {
  std::ofstream out;

  explicit CsvWriter(const std::string& path) : out(path) {
    if (!out) throw std::runtime_error("cannot open " + path);
  }
  void row(const std::string& line) { out << line << '\n'; }
};

}  // namespace kershaw

#endif
