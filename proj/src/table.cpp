#include "uqtb/table.h"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace uqtb {

std::string format_number(double v) { return fmt::format("{:.16e}", v); }

std::size_t Table::column(const std::string& name) const
{
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name)
      return i;
  throw std::out_of_range("no column named " + name);
}

std::vector<double> Table::values(const std::string& name) const
{
  const std::size_t j = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows)
    out.push_back(row.at(j));
  return out;
}

void Table::write_csv(std::ostream& os) const
{
  for (std::size_t j = 0; j < columns.size(); ++j)
    os << (j ? "," : "") << columns[j];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j)
      os << (j ? "," : "") << format_number(row[j]);
    os << '\n';
  }
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents)
{
  auto tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move output into " + path.string());
  }
}

} // namespace uqtb
