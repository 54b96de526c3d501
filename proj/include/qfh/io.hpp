#ifndef QFH_IO_HPP
#define QFH_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace qfh {

// Numbers are printed with enough digits to round-trip doubles so repeated
// runs produce byte-identical files.
std::string format_double(double v);

struct CsvWriter {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string to_string() const;
};

// temp file + rename; the directory is created if missing
void atomic_write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace qfh

#endif
