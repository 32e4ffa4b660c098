#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace uqtb {

//! 17 significant digits in scientific notation; parses back to the same
//! double.
std::string format_number(double v);

//! Rectangular numeric table with named columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
  std::vector<double> values(const std::string& name) const;

  void write_csv(std::ostream& os) const;
};

//! Writes through a sibling temporary and renames it into place, so a failed
//! write leaves no partial file. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

} // namespace uqtb
