#include "qfh/io.hpp"

#include <unistd.h>

#include <charconv>
#include <fstream>
#include <sstream>

#include "qfh/errors.hpp"

namespace qfh {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void CsvWriter::add_row(std::vector<std::string> row) {
  if (row.size() != header.size())
    throw ConfigInvalid("CSV row width does not match the header");
  rows.push_back(std::move(row));
}

std::string CsvWriter::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << "\n";
  }
  return os.str();
}

void atomic_write_file(const fs::path& path, const std::string& contents) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ComputeFailed("cannot open temp file " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw ComputeFailed("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw ComputeFailed("rename failed for " + path.string() + ": " + ec.message());
  }
}

}  // namespace qfh
