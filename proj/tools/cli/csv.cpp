#include "cli/csv.hpp"

#include <charconv>

#include "hlcu/errors.hpp"

namespace hlcu::cli {

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);  // shortest round-trip form
  return std::string(buf, r.ptr);
}

std::string fmt(std::int64_t v) { return std::to_string(v); }

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header, std::uint64_t seed)
    : out_(path), columns_(header.size()), seed_(seed) {
  if (!out_) throw Error("cannot write '" + path + "'");
  write(header);
}

CsvWriter::~CsvWriter() {
  if (!closed_) close();
}

void CsvWriter::write(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw Error("CSV row has the wrong number of columns");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    if (cells[i].find(',') != std::string::npos)
      out_ << '"' << cells[i] << '"';
    else
      out_ << cells[i];
  }
  out_ << '\n';
}

void CsvWriter::close() {
  out_ << "# seed=" << seed_ << " version=" << HLCU_VERSION << '\n';
  out_.close();
  closed_ = true;
}

}  // namespace hlcu::cli
