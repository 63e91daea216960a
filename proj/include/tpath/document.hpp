#ifndef TPATH_DOCUMENT_HPP
#define TPATH_DOCUMENT_HPP

#include "tpath/core.hpp"
#include "tpath/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tpath {

// line-based text format; sections in any order, each at most once:
//
//   dim 2                 # coordinate dimension
//   vertices              # one per line: name coords...
//   x1 -1 1
//   edges                 # tail head weight
//   x1 j1 4
//   source                # vertex mass
//   x1 4
//   target
//   y1 3
//   curves                # name weight edge-numbers (1-based)
//   g11 2 1 3 4
//   matrix                # optional row/col labels, then rows
//   rows x1 x2
//   cols y1 y2
//   2 2
//   1 1
//
// '#' starts a comment, blank lines separate nothing in particular
struct Document {
  std::optional<TransportNetwork> network;
  std::optional<CurveMeasure> curves;
  std::vector<std::string> curve_names;
  std::optional<RatMatrix> matrix;
  std::vector<std::string> matrix_row_labels;
  std::vector<std::string> matrix_col_labels;

  int vertex_by_name(const std::string& name) const;  // -1 when unknown
};

Document parse_document(const std::string& text);  // throws ParseError

Document load_document(const std::string& path);   // throws ParseError / NetworkError

std::string emit_document(const Document& doc);

}

#endif
