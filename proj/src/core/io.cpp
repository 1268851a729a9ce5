#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace spca {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Matrix load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw ParseError(path + ": empty file (missing header)");
  std::size_t cols = 1;
  for (char c : line)
    if (c == ',') ++cols;

  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() && in.eof()) break;
    std::stringstream ss(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(ss, cell, ',')) {
      ++c;
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        values.push_back(v);
      } catch (const std::exception&) {
        throw ParseError(path + ": non-numeric cell at row " +
                         std::to_string(lineno) + ", column " +
                         std::to_string(c));
      }
    }
    if (c != cols)
      throw ParseError(path + ": ragged row " + std::to_string(lineno) +
                       " (expected " + std::to_string(cols) + " cells, got " +
                       std::to_string(c) + ")");
    ++rows;
  }
  if (rows == 0) throw ParseError(path + ": no data rows");
  return Matrix(rows, cols, std::move(values));
}

void save_matrix_csv(const Matrix& m, const std::string& path,
                     const std::vector<std::string>& col_names) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (j) out << ',';
    if (j < col_names.size())
      out << col_names[j];
    else
      out << 'v' << (j + 1);
  }
  out << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_full(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace spca
