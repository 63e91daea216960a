#ifndef TPATH_DECOMPOSITION_HPP
#define TPATH_DECOMPOSITION_HPP

#include "tpath/core.hpp"
#include "tpath/matrix.hpp"

#include <map>
#include <utility>
#include <vector>

namespace tpath {

// a[i][j] = curve mass from source atom i to target atom j, atoms in measure order
struct RepresentingMatrix {
  RatMatrix a;
  std::vector<int> row_vertex;
  std::vector<int> col_vertex;
};

// curve indices grouped by (source atom, target atom) cell
struct CellIndex {
  RepresentingMatrix rep;
  std::map<std::pair<int, int>, std::vector<int>> members;
};

// throws NetworkError when a curve is malformed or its endpoints are not atoms
CellIndex collect_cells(const TransportNetwork& net, const CurveMeasure& eta);

RepresentingMatrix representing_matrix(const TransportNetwork& net, const CurveMeasure& eta);

// curves between one source atom and one target atom, summed with weights (0-based cell)
EdgeChain cell_chain(const TransportNetwork& net, const CurveMeasure& eta, int i, int j);

// peel weighted source-to-target paths off a directed-acyclic network until
// every edge is consumed; throws NetworkError when a directed cycle exists
CurveMeasure extract_good_decomposition(const TransportNetwork& net);

struct VerifyReport {
  bool ok = false;
  std::vector<std::string> issues;
};

// every curve runs source atom to target atom, per-edge curve load equals the
// edge weight, and endpoint masses reproduce the marginals
VerifyReport verify_good_decomposition(const TransportNetwork& net, const CurveMeasure& eta);

// alternating chain S(i1,j1) - S(i1,j2) - S(i2,j1) + S(i2,j2) of cell chains
struct VanishingCycle {
  EdgeChain chain;
  bool closed = false;    // boundary is zero
  int common_sign = 0;    // meaningful when closed: the shared sign of the four cells
};

VanishingCycle vanishing_cycle(const TransportNetwork& net, const CurveMeasure& eta,
                               std::pair<int, int> cell1, std::pair<int, int> cell2);

// cells strictly below and right of base whose rectangle is all-positive with a
// closed vanishing cycle; nonempty means a pivot can cancel mass
std::vector<std::pair<int, int>> candidate_set(const TransportNetwork& net, const CurveMeasure& eta,
                                               std::pair<int, int> base);

// pivot until every candidate set is empty; fixes marginals and the induced chain
CurveMeasure better_decompose(const TransportNetwork& net, const CurveMeasure& eta);

// every positive cell of `fine` is positive in `coarse` and moves unit mass
// along the same chain
bool cell_routes_match(const TransportNetwork& net, const CurveMeasure& fine,
                       const CurveMeasure& coarse);

}

#endif
