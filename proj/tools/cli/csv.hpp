#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace hlcu::cli {

std::string fmt(double v);
std::string fmt(std::int64_t v);
inline std::string fmt(int v) { return fmt(static_cast<std::int64_t>(v)); }
inline std::string fmt(std::uint64_t v) { return std::to_string(v); }
inline std::string fmt(const std::string& s) { return s; }
inline std::string fmt(const char* s) { return s; }

// Header row on open; a "# seed=... version=..." line on close.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header, std::uint64_t seed);
  ~CsvWriter();

  template <class... T>
  void row(const T&... v) {
    std::vector<std::string> cells{fmt(v)...};
    write(cells);
  }
  void write(const std::vector<std::string>& cells);
  void close();

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::uint64_t seed_;
  bool closed_ = false;
};

}  // namespace hlcu::cli
