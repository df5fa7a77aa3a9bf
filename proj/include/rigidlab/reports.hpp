#pragma once

#include <string>
#include <vector>

#include "rigidlab/config.hpp"
#include "rigidlab/toral.hpp"

namespace rigidlab {

/// Shortest exact decimal for a double (%.17g), identical across runs.
std::string format_double(double v);

/// Exact coordinate as "num/den".
std::string fraction(std::int64_t num, std::int64_t den);

/// Deterministic CSV assembly: header once, then rows; "\n" line ends.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  const std::string& text() const { return text_; }

 private:
  std::size_t columns_;
  std::string text_;
};

/// Writes content to dir/name, creating dir if needed; throws
/// std::runtime_error on failure.  Returns the full path.
std::string write_text_file(const std::string& dir, const std::string& name,
                            const std::string& content);

/// Field serializations as line arrays for the JSON echo.
std::vector<std::string> field_lines(const ScalarField& f);
std::vector<std::string> weight_lines(const FiberWeight& w);

}  // namespace rigidlab
