#include "tpath/core.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>

namespace tpath {

Rat AtomicMeasure::total() const {
  Rat s = 0;
  for (const Atom& a : atoms) s += a.mass;
  return s;
}

static std::vector<Atom>::const_iterator find_atom(const std::vector<Atom>& atoms, int vertex) {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), vertex,
                             [](const Atom& a, int v) { return a.vertex < v; });
  if (it != atoms.end() && it->vertex == vertex) return it;
  return atoms.end();
}

const Rat* AtomicMeasure::mass_at(int vertex) const {
  auto it = find_atom(atoms, vertex);
  return it == atoms.end() ? nullptr : &it->mass;
}

int AtomicMeasure::atom_index(int vertex) const {
  auto it = find_atom(atoms, vertex);
  return it == atoms.end() ? -1 : int(it - atoms.begin());
}

void AtomicMeasure::add(int vertex, const Rat& mass) {
  auto it = std::lower_bound(atoms.begin(), atoms.end(), vertex,
                             [](const Atom& a, int v) { return a.vertex < v; });
  if (it != atoms.end() && it->vertex == vertex) {
    it->mass += mass;
    if (it->mass == 0) atoms.erase(it);
  } else if (mass != 0) {
    atoms.insert(it, Atom{vertex, mass});
  }
}

bool AtomicMeasure::operator==(const AtomicMeasure& o) const {
  if (atoms.size() != o.atoms.size()) return false;
  for (size_t k = 0; k < atoms.size(); ++k)
    if (atoms[k].vertex != o.atoms[k].vertex || atoms[k].mass != o.atoms[k].mass) return false;
  return true;
}

void SignedNodeMeasure::add(int vertex, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs.try_emplace(vertex, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  }
}

int TransportNetwork::dim() const {
  return vertices.empty() ? 0 : int(vertices[0].coords.size());
}

double TransportNetwork::edge_length(int e) const {
  const Edge& ed = edges.at(e);
  const std::vector<Rat>& a = vertices.at(ed.tail).coords;
  const std::vector<Rat>& b = vertices.at(ed.head).coords;
  assert(a.size() == b.size());
  double s = 0;
  for (size_t k = 0; k < a.size(); ++k) {
    double d = rat_double(a[k] - b[k]);
    s += d * d;
  }
  return std::sqrt(s);
}

const std::string& TransportNetwork::vertex_name(int v) const { return vertices.at(v).name; }

void EdgeChain::add(int e, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  }
}

Rat EdgeChain::coeff(int e) const {
  auto it = coeffs.find(e);
  return it == coeffs.end() ? Rat(0) : it->second;
}

EdgeChain& EdgeChain::operator+=(const EdgeChain& o) {
  for (const auto& [e, c] : o.coeffs) add(e, c);
  return *this;
}

EdgeChain& EdgeChain::operator-=(const EdgeChain& o) {
  for (const auto& [e, c] : o.coeffs) add(e, -c);
  return *this;
}

EdgeChain EdgeChain::scaled(const Rat& f) const {
  EdgeChain r;
  if (f == 0) return r;
  for (const auto& [e, c] : coeffs) r.coeffs.emplace(e, c * f);
  return r;
}

Rat CurveMeasure::total() const {
  Rat s = 0;
  for (const WeightedCurve& wc : items) s += wc.weight;
  return s;
}

std::vector<std::string> validate_network(const TransportNetwork& net) {
  std::vector<std::string> out;
  int n = int(net.vertices.size());
  int dim = net.dim();
  if (dim == 0 && !net.vertices.empty()) out.push_back("vertex coordinates are empty");
  for (int v = 0; v < n; ++v) {
    const Point& p = net.vertices[v];
    if (p.id != v) out.push_back("vertex '" + p.name + "' has id " + std::to_string(p.id) + ", expected " + std::to_string(v));
    if (int(p.coords.size()) != dim)
      out.push_back("vertex '" + p.name + "' has " + std::to_string(p.coords.size()) + " coordinates, expected " + std::to_string(dim));
  }
  for (size_t e = 0; e < net.edges.size(); ++e) {
    const Edge& ed = net.edges[e];
    std::string tag = "edge " + std::to_string(e + 1);
    if (ed.tail < 0 || ed.tail >= n || ed.head < 0 || ed.head >= n) {
      out.push_back(tag + ": endpoint out of range");
      continue;
    }
    tag += " (" + net.vertex_name(ed.tail) + " -> " + net.vertex_name(ed.head) + ")";
    if (ed.tail == ed.head) out.push_back(tag + ": self loop");
    if (ed.weight <= 0) out.push_back(tag + ": weight " + rat_str(ed.weight) + " not positive");
    if (ed.tail != ed.head && net.vertices[ed.tail].coords == net.vertices[ed.head].coords)
      out.push_back(tag + ": zero length, endpoints share coordinates");
  }
  for (const Atom& a : net.source.atoms) {
    if (a.vertex < 0 || a.vertex >= n) out.push_back("source atom on unknown vertex " + std::to_string(a.vertex));
    if (a.mass <= 0) out.push_back("source atom mass " + rat_str(a.mass) + " not positive");
  }
  for (const Atom& a : net.target.atoms) {
    if (a.vertex < 0 || a.vertex >= n) out.push_back("target atom on unknown vertex " + std::to_string(a.vertex));
    if (a.mass <= 0) out.push_back("target atom mass " + rat_str(a.mass) + " not positive");
    if (a.vertex >= 0 && a.vertex < n && net.is_source_atom(a.vertex))
      out.push_back("vertex '" + net.vertex_name(a.vertex) + "' carries both source and target mass");
  }
  if (!out.empty()) return out;

  // balance: outflow - inflow must equal +mass at sources, -mass at targets, 0 elsewhere
  SignedNodeMeasure flow = boundary(net, network_chain(net));
  SignedNodeMeasure want = prescribed_boundary(net);
  std::set<int> touched;
  for (const auto& [v, c] : flow.coeffs) touched.insert(v);
  for (const auto& [v, c] : want.coeffs) touched.insert(v);
  for (int v : touched) {
    Rat have = 0, need = 0;
    if (auto it = flow.coeffs.find(v); it != flow.coeffs.end()) have = it->second;
    if (auto it = want.coeffs.find(v); it != want.coeffs.end()) need = it->second;
    if (have != need)
      out.push_back("vertex '" + net.vertex_name(v) + "' unbalanced: net outflow " + rat_str(-have) +
                    ", required " + rat_str(-need));
  }
  return out;
}

void require_valid(const TransportNetwork& net) {
  std::vector<std::string> v = validate_network(net);
  if (!v.empty()) throw NetworkError(v.front());
}

void check_curve(const TransportNetwork& net, const PathCurve& c) {
  if (c.edges.empty()) throw NetworkError("curve has no edges");
  int m = int(net.edges.size());
  for (int e : c.edges)
    if (e < 0 || e >= m) throw NetworkError("curve references unknown edge " + std::to_string(e + 1));
  std::set<int> seen;
  seen.insert(net.edges[c.edges[0]].tail);
  for (size_t k = 0; k < c.edges.size(); ++k) {
    const Edge& ed = net.edges[c.edges[k]];
    if (k > 0 && net.edges[c.edges[k - 1]].head != ed.tail)
      throw NetworkError("curve breaks between edge " + std::to_string(c.edges[k - 1] + 1) +
                         " and edge " + std::to_string(c.edges[k] + 1));
    if (!seen.insert(ed.head).second)
      throw NetworkError("curve revisits vertex '" + net.vertex_name(ed.head) + "'");
  }
}

int curve_start(const TransportNetwork& net, const PathCurve& c) {
  assert(!c.edges.empty());
  return net.edges.at(c.edges.front()).tail;
}

int curve_end(const TransportNetwork& net, const PathCurve& c) {
  assert(!c.edges.empty());
  return net.edges.at(c.edges.back()).head;
}

double curve_length(const TransportNetwork& net, const PathCurve& c) {
  double s = 0;
  for (int e : c.edges) s += net.edge_length(e);
  return s;
}

EdgeChain curve_chain(const PathCurve& c) {
  EdgeChain r;
  for (int e : c.edges) r.add(e, 1);
  return r;
}

EdgeChain network_chain(const TransportNetwork& net) {
  EdgeChain r;
  for (size_t e = 0; e < net.edges.size(); ++e) r.add(int(e), net.edges[e].weight);
  return r;
}

EdgeChain induced_chain(const CurveMeasure& cm) {
  EdgeChain r;
  for (const WeightedCurve& wc : cm.items)
    for (int e : wc.curve.edges) r.add(e, wc.weight);
  return r;
}

SignedNodeMeasure boundary(const TransportNetwork& net, const EdgeChain& s) {
  SignedNodeMeasure r;
  for (const auto& [e, c] : s.coeffs) {
    const Edge& ed = net.edges.at(e);
    r.add(ed.head, c);
    r.add(ed.tail, -c);
  }
  return r;
}

SignedNodeMeasure prescribed_boundary(const TransportNetwork& net) {
  SignedNodeMeasure r;
  for (const Atom& a : net.target.atoms) r.add(a.vertex, a.mass);
  for (const Atom& a : net.source.atoms) r.add(a.vertex, -a.mass);
  return r;
}

double chain_mass(const TransportNetwork& net, const EdgeChain& s) {
  double m = 0;
  for (const auto& [e, c] : s.coeffs) m += std::abs(rat_double(c)) * net.edge_length(e);
  return m;
}

double chain_cost(const TransportNetwork& net, const EdgeChain& s, double alpha) {
  double m = 0;
  for (const auto& [e, c] : s.coeffs) m += std::pow(std::abs(rat_double(c)), alpha) * net.edge_length(e);
  return m;
}

double network_cost(const TransportNetwork& net, double alpha) {
  return chain_cost(net, network_chain(net), alpha);
}

bool is_on(const TransportNetwork& net, const EdgeChain& s) {
  for (const auto& [e, c] : s.coeffs) {
    if (e < 0 || e >= int(net.edges.size())) return false;
    if (abs(c) > net.edges[e].weight) return false;
  }
  return true;
}

bool is_subcurrent(const TransportNetwork& net, const EdgeChain& s) {
  for (const auto& [e, c] : s.coeffs) {
    if (e < 0 || e >= int(net.edges.size())) return false;
    if (c < 0 || c > net.edges[e].weight) return false;
  }
  return true;
}

bool subcurrent_by_mass(const TransportNetwork& net, const EdgeChain& s, double tol) {
  EdgeChain rest = network_chain(net);
  rest -= s;
  double lhs = chain_mass(net, rest) + chain_mass(net, s);
  double rhs = chain_mass(net, network_chain(net));
  return std::abs(lhs - rhs) <= tol * std::max(1.0, rhs);
}

}
