#ifndef TPATH_TEST_HELPERS_HPP
#define TPATH_TEST_HELPERS_HPP

#include "tpath/document.hpp"
#include "tpath/matrix.hpp"
#include "tpath/stairshape.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace tpath {

inline std::string fixture_path(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

inline Document load_fixture(const std::string& name) {
  return load_document(fixture_path(name));
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// row-major integer literals
inline RatMatrix mat(int rows, int cols, const std::vector<long long>& vals) {
  RatMatrix m = RatMatrix::zeros(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = Rat(vals[size_t(i) * cols + j]);
  return m;
}

inline RatMatrix matq(int rows, int cols, const std::vector<Rat>& vals) {
  RatMatrix m = RatMatrix::zeros(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = vals[size_t(i) * cols + j];
  return m;
}

struct CellValue {
  int i, j;
  long long v;
};

inline RatMatrix from_cells(int rows, int cols, const std::vector<CellValue>& cells) {
  RatMatrix m = RatMatrix::zeros(rows, cols);
  for (const CellValue& c : cells) m.at(c.i, c.j) = Rat(c.v);
  return m;
}

// scratch file shared between the cli tests and their subjects
inline std::string write_temp(const std::string& name, const std::string& text) {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "tpath_tests";
  std::filesystem::create_directories(dir);
  std::filesystem::path file = dir / name;
  std::ofstream out(file);
  out << text;
  return file.string();
}

// cell masses carried by the grid_5x5 fixture curves and their stair form
inline RatMatrix grid5_matrix() {
  return mat(5, 5,
             {4, 1, 2, 1, 1,
              4, 1, 2, 1, 1,
              4, 1, 2, 1, 1,
              12, 3, 6, 3, 3,
              12, 3, 6, 3, 3});
}

inline RatMatrix grid5_stair() {
  return mat(5, 5,
             {9, 0, 0, 0, 0,
              9, 0, 0, 0, 0,
              9, 0, 0, 0, 0,
              9, 9, 9, 0, 0,
              0, 0, 9, 9, 9});
}

// cell masses carried by the grid_11x11 fixture curves
inline RatMatrix grid11_matrix() {
  return from_cells(11, 11,
                    {{0, 0, 1}, {0, 1, 1}, {0, 2, 2},
                     {1, 0, 3}, {1, 1, 2}, {1, 2, 1}, {1, 3, 2}, {1, 4, 3},
                     {2, 2, 6}, {2, 3, 7}, {2, 4, 1},
                     {3, 2, 5}, {3, 3, 2}, {3, 4, 4},
                     {4, 4, 1}, {4, 5, 3}, {4, 6, 6}, {4, 7, 7},
                     {5, 4, 3}, {5, 5, 4}, {5, 6, 1}, {5, 7, 2},
                     {6, 8, 1}, {6, 9, 2},
                     {7, 8, 2}, {7, 9, 1}, {7, 10, 3},
                     {8, 10, 2},
                     {9, 10, 1},
                     {10, 10, 5}});
}

// blockwise stair form of grid11_matrix
inline RatMatrix grid11_stair() {
  return from_cells(11, 11,
                    {{0, 0, 4},
                     {1, 1, 3}, {1, 2, 8},
                     {2, 2, 6}, {2, 3, 8},
                     {3, 3, 3}, {3, 4, 8},
                     {4, 4, 4}, {4, 5, 7}, {4, 6, 6},
                     {5, 6, 1}, {5, 7, 9},
                     {6, 8, 3},
                     {7, 9, 3}, {7, 10, 3},
                     {8, 10, 2},
                     {9, 10, 1},
                     {10, 10, 5}});
}

inline std::vector<Block> grid11_blocks() {
  return {{0, 0, 1, 2}, {1, 2, 3, 4}, {4, 4, 5, 7}, {6, 8, 7, 9}, {7, 10, 10, 10}};
}

}

#endif
