#ifndef TPATH_MATRIX_HPP
#define TPATH_MATRIX_HPP

#include "tpath/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace tpath {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// dense matrix of rationals, row major
struct RatMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rat> cells;

  static RatMatrix zeros(int r, int c);

  Rat& at(int i, int j);
  const Rat& at(int i, int j) const;

  std::vector<Rat> row_sums() const;
  std::vector<Rat> col_sums() const;
  Rat total() const;
  bool nonnegative() const;
  bool same_shape(const RatMatrix& o) const { return rows == o.rows && cols == o.cols; }
  bool operator==(const RatMatrix& o) const {
    return rows == o.rows && cols == o.cols && cells == o.cells;
  }
};

// comma separated rationals, one row per line, blank lines and # comments skipped
RatMatrix parse_csv_matrix(const std::string& text);

std::string matrix_csv(const RatMatrix& m);

// aligned columns for reports
std::string matrix_pretty(const RatMatrix& m);

}

#endif
