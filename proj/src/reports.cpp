#include "rigidlab/reports.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rigidlab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fraction(std::int64_t num, std::int64_t den) {
  return std::to_string(num) + "/" + std::to_string(den);
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  if (columns_ == 0) throw std::invalid_argument("CsvTable needs at least one column");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ",";
    text_ += header[i];
  }
  text_ += "\n";
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_) {
    throw std::invalid_argument("CSV row has " + std::to_string(cells.size()) +
                                " cells, header has " + std::to_string(columns_));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ",";
    text_ += cells[i];
  }
  text_ += "\n";
}

std::string write_text_file(const std::string& dir, const std::string& name,
                            const std::string& content) {
  namespace fs = std::filesystem;
  fs::path d = dir.empty() ? fs::path(".") : fs::path(dir);
  std::error_code ec;
  fs::create_directories(d, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + d.string() + "'");
  const fs::path full = d / name;
  std::ofstream out(full, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + full.string() + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + full.string() + "'");
  return full.string();
}

namespace {
std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}
}  // namespace

std::vector<std::string> field_lines(const ScalarField& f) { return split_lines(f.to_text()); }

std::vector<std::string> weight_lines(const FiberWeight& w) { return split_lines(w.to_text()); }

}  // namespace rigidlab
