#ifndef TPATH_CORE_HPP
#define TPATH_CORE_HPP

#include "tpath/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tpath {

// structural problems that make an input unusable
struct NetworkError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Point {
  int id = -1;
  std::string name;           // document label, e.g. "x1"
  std::vector<Rat> coords;
};

struct Atom {
  int vertex = -1;
  Rat mass;                   // > 0
};

// finite atomic measure on network vertices, atoms sorted by vertex id
struct AtomicMeasure {
  std::vector<Atom> atoms;

  Rat total() const;
  const Rat* mass_at(int vertex) const;   // null when no atom sits there
  int atom_index(int vertex) const;       // -1 when absent
  void add(int vertex, const Rat& mass);  // accumulates, drops zero results
  bool operator==(const AtomicMeasure& o) const;
};

// vertex -> signed coefficient, zero entries dropped
struct SignedNodeMeasure {
  std::map<int, Rat> coeffs;

  void add(int vertex, const Rat& c);
  bool zero() const { return coeffs.empty(); }
  bool operator==(const SignedNodeMeasure& o) const { return coeffs == o.coeffs; }
};

struct Edge {
  int tail = -1;
  int head = -1;
  Rat weight;                 // > 0
};

// weighted directed graph with source and target marginals
struct TransportNetwork {
  std::vector<Point> vertices;  // vertex id == index
  std::vector<Edge> edges;
  AtomicMeasure source;         // the measure being moved
  AtomicMeasure target;         // the measure it becomes

  int dim() const;
  double edge_length(int e) const;
  const std::string& vertex_name(int v) const;
  bool is_source_atom(int v) const { return source.mass_at(v) != nullptr; }
  bool is_target_atom(int v) const { return target.mass_at(v) != nullptr; }
};

// 1-chain over the parent network's edge set, zero coefficients dropped
struct EdgeChain {
  std::map<int, Rat> coeffs;

  void add(int e, const Rat& c);
  Rat coeff(int e) const;
  bool zero() const { return coeffs.empty(); }
  EdgeChain& operator+=(const EdgeChain& o);
  EdgeChain& operator-=(const EdgeChain& o);
  EdgeChain scaled(const Rat& f) const;
  bool operator==(const EdgeChain& o) const { return coeffs == o.coeffs; }
};

// edge-path: consecutive edges, no repeated vertex
struct PathCurve {
  std::vector<int> edges;

  bool operator==(const PathCurve& o) const { return edges == o.edges; }
  bool operator<(const PathCurve& o) const { return edges < o.edges; }
};

struct WeightedCurve {
  PathCurve curve;
  Rat weight;                 // > 0
};

struct CurveMeasure {
  std::vector<WeightedCurve> items;

  Rat total() const;
};

// empty result means the network is well formed
std::vector<std::string> validate_network(const TransportNetwork& net);

// throws NetworkError with the first violation
void require_valid(const TransportNetwork& net);

// throws NetworkError when edges are missing, non-consecutive, or revisit a vertex
void check_curve(const TransportNetwork& net, const PathCurve& c);

int curve_start(const TransportNetwork& net, const PathCurve& c);
int curve_end(const TransportNetwork& net, const PathCurve& c);
double curve_length(const TransportNetwork& net, const PathCurve& c);

EdgeChain curve_chain(const PathCurve& c);             // coefficient +1 per edge
EdgeChain network_chain(const TransportNetwork& net);  // coefficient = weight
EdgeChain induced_chain(const CurveMeasure& cm);       // sum of weight * curve chain

// sum of coeff * (head delta - tail delta)
SignedNodeMeasure boundary(const TransportNetwork& net, const EdgeChain& s);

// boundary the network must have: +mass at targets, -mass at sources
SignedNodeMeasure prescribed_boundary(const TransportNetwork& net);

double chain_mass(const TransportNetwork& net, const EdgeChain& s);
double chain_cost(const TransportNetwork& net, const EdgeChain& s, double alpha);
double network_cost(const TransportNetwork& net, double alpha);

// |coeff| <= weight edgewise
bool is_on(const TransportNetwork& net, const EdgeChain& s);

// 0 <= coeff <= weight edgewise
bool is_subcurrent(const TransportNetwork& net, const EdgeChain& s);

// independent mass route: M(T-S) + M(S) == M(T) within tol
bool subcurrent_by_mass(const TransportNetwork& net, const EdgeChain& s, double tol = 1e-9);

}

#endif
