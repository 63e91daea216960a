#include "tpath/matrix.hpp"

#include <cassert>
#include <sstream>

namespace tpath {

RatMatrix RatMatrix::zeros(int r, int c) {
  assert(r >= 0 && c >= 0);
  RatMatrix m;
  m.rows = r;
  m.cols = c;
  m.cells.assign(size_t(r) * size_t(c), Rat(0));
  return m;
}

Rat& RatMatrix::at(int i, int j) {
  assert(i >= 0 && i < rows && j >= 0 && j < cols);
  return cells[size_t(i) * cols + j];
}

const Rat& RatMatrix::at(int i, int j) const {
  assert(i >= 0 && i < rows && j >= 0 && j < cols);
  return cells[size_t(i) * cols + j];
}

std::vector<Rat> RatMatrix::row_sums() const {
  std::vector<Rat> s(rows, Rat(0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) s[i] += at(i, j);
  return s;
}

std::vector<Rat> RatMatrix::col_sums() const {
  std::vector<Rat> s(cols, Rat(0));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) s[j] += at(i, j);
  return s;
}

Rat RatMatrix::total() const {
  Rat s = 0;
  for (const Rat& v : cells) s += v;
  return s;
}

bool RatMatrix::nonnegative() const {
  for (const Rat& v : cells)
    if (v < 0) return false;
  return true;
}

static std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

static std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  for (std::string& s : out) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
  }
  return out;
}

RatMatrix parse_csv_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<Rat>> rows;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = strip_comment(line);
    if (body.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> fields = split_commas(body);
    std::vector<Rat> row;
    for (const std::string& f : fields) {
      if (f.empty()) throw ParseError(lineno, "empty matrix entry");
      try {
        row.push_back(parse_rat(f));
      } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
      }
    }
    if (!rows.empty() && row.size() != rows[0].size())
      throw ParseError(lineno, "row has " + std::to_string(row.size()) + " entries, expected " +
                                   std::to_string(rows[0].size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(lineno, "no matrix rows");
  RatMatrix m = RatMatrix::zeros(int(rows.size()), int(rows[0].size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

std::string matrix_csv(const RatMatrix& m) {
  std::string out;
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      if (j) out += ",";
      out += rat_str(m.at(i, j));
    }
    out += "\n";
  }
  return out;
}

std::string matrix_pretty(const RatMatrix& m) {
  std::vector<size_t> width(m.cols, 0);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) width[j] = std::max(width[j], rat_str(m.at(i, j)).size());
  std::string out;
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      std::string s = rat_str(m.at(i, j));
      out += std::string(width[j] - s.size() + (j ? 2 : 0), ' ');
      out += s;
    }
    out += "\n";
  }
  return out;
}

}
