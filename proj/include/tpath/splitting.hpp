#ifndef TPATH_SPLITTING_HPP
#define TPATH_SPLITTING_HPP

#include "tpath/core.hpp"
#include "tpath/decomposition.hpp"
#include "tpath/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tpath {

// one summand of a split: a subcurrent with its own marginals and the curves
// of the input decomposition that assemble it
struct SplitPart {
  std::string label;
  EdgeChain chain;
  AtomicMeasure part_source;
  AtomicMeasure part_target;
  CurveMeasure witness;
};

// vertex-to-vertex assignment pushing `moved` forward onto `image`
struct TransportMapAssignment {
  std::vector<std::pair<int, int>> pairs;  // (from vertex, to vertex), sorted by from
  AtomicMeasure moved;
  AtomicMeasure image;
};

// q[i][j] = mass sent from row vertex i to column vertex j
struct TransportPlanMatrix {
  std::vector<int> row_vertex;
  std::vector<int> col_vertex;
  RatMatrix entries;
  AtomicMeasure first_marginal;
  AtomicMeasure second_marginal;
};

struct SplitResult {
  std::vector<SplitPart> parts;
  std::optional<TransportMapAssignment> map;          // sources moved by a map
  std::optional<TransportMapAssignment> reverse_map;  // targets traced back by a map
  std::optional<TransportPlanMatrix> plan;
};

// split off, per target atom, the sources that feed only that atom; the rest
// (sources shared between targets) stays in part 0
// requires a cycle-free network and a verified decomposition with every
// candidate set empty
SplitResult split_single_target(const TransportNetwork& net, const CurveMeasure& eta);

// same partition packaged as one map part (exclusive sources) plus one plan
// part (shared sources); every shared source feeds at least two targets
SplitResult split_map_plan(const TransportNetwork& net, const CurveMeasure& eta);

// stair-shaped decompositions split into a forward map part (each row's last
// positive cell) and a reverse map part (the remaining cells, one per column)
SplitResult split_two_maps(const TransportNetwork& net, const CurveMeasure& eta);

struct CompatReport {
  bool ok = false;
  std::vector<std::string> issues;
};

// the witness curves must assemble the chain, their endpoint masses must equal
// the plan, and on cycle-free networks every positive plan cell must admit a
// directed curve; `reversed` reads the plan with rows indexing curve ends,
// which renders a reverse map as its forward flow
CompatReport verify_compatibility(const TransportNetwork& net, const EdgeChain& chain,
                                  const CurveMeasure& witness, const TransportPlanMatrix& plan,
                                  bool reversed = false);

TransportPlanMatrix plan_from_map(const TransportMapAssignment& map);

// one minimum-hop curve per positive plan cell; cells without a directed
// curve contribute nothing, which verification then reports
CurveMeasure witness_from_plan(const TransportNetwork& net, const TransportPlanMatrix& plan,
                               bool reversed = false);

}

#endif
