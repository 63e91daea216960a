#ifndef TPATH_CYCLES_HPP
#define TPATH_CYCLES_HPP

#include "tpath/core.hpp"

#include <optional>

namespace tpath {

// a network is cycle-free when its support is a forest, ignoring edge direction
struct CycleCertificate {
  bool cycle_free = false;
  std::vector<int> cycle_edges;  // traversal order around the cycle, empty when cycle_free
  EdgeChain chain;               // +eps along the traversal, -eps against it
  Rat eps;                       // smallest weight on the cycle
};

CycleCertificate find_cycle(const TransportNetwork& net);

// minimum-hop directed path, ties by smallest edge index at every step
std::optional<PathCurve> find_curve(const TransportNetwork& net, int from_vertex, int to_vertex);

struct PerturbationTriple {
  double cost_minus = 0;  // alpha-cost of T - S
  double cost_base = 0;   // alpha-cost of T
  double cost_plus = 0;   // alpha-cost of T + S
};

// requires boundary(S) == 0, S on T, 0 < alpha < 1; for nonzero S one of the
// perturbed costs drops strictly below the base cost
PerturbationTriple perturbation_costs(const TransportNetwork& net, const EdgeChain& s, double alpha);

}

#endif
