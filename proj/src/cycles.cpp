#include "tpath/cycles.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>

namespace tpath {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}

CycleCertificate find_cycle(const TransportNetwork& net) {
  int n = int(net.vertices.size());
  Dsu dsu(n);
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // vertex -> (neighbor, edge)
  for (size_t e = 0; e < net.edges.size(); ++e) {
    const Edge& ed = net.edges[e];
    if (!dsu.unite(ed.tail, ed.head)) {
      // the accepted edges form a forest containing a tail-head path; close it with e
      std::vector<int> via_edge(n, -1);
      std::vector<int> via_from(n, -1);
      std::deque<int> queue{ed.tail};
      std::vector<char> seen(n, 0);
      seen[ed.tail] = 1;
      while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (v == ed.head) break;
        for (auto [w, ee] : adj[v]) {
          if (seen[w]) continue;
          seen[w] = 1;
          via_edge[w] = ee;
          via_from[w] = v;
          queue.push_back(w);
        }
      }
      assert(seen[ed.head]);
      std::vector<int> path;  // edges from tail to head
      for (int v = ed.head; v != ed.tail; v = via_from[v]) path.push_back(via_edge[v]);
      std::reverse(path.begin(), path.end());

      CycleCertificate cert;
      cert.cycle_free = false;
      cert.eps = net.edges[e].weight;
      for (int ee : path) cert.eps = std::min(cert.eps, net.edges[ee].weight);
      // traverse tail -> head along the tree path, then head -> tail through e
      int at = ed.tail;
      for (int ee : path) {
        cert.cycle_edges.push_back(ee);
        if (net.edges[ee].tail == at) {
          cert.chain.add(ee, cert.eps);
          at = net.edges[ee].head;
        } else {
          assert(net.edges[ee].head == at);
          cert.chain.add(ee, -cert.eps);
          at = net.edges[ee].tail;
        }
      }
      assert(at == ed.head);
      cert.cycle_edges.push_back(int(e));
      cert.chain.add(int(e), -cert.eps);
      assert(boundary(net, cert.chain).zero());
      assert(is_on(net, cert.chain));
      return cert;
    }
    adj[ed.tail].push_back({ed.head, int(e)});
    adj[ed.head].push_back({ed.tail, int(e)});
  }
  CycleCertificate cert;
  cert.cycle_free = true;
  cert.eps = 0;
  return cert;
}

std::optional<PathCurve> find_curve(const TransportNetwork& net, int from_vertex, int to_vertex) {
  int n = int(net.vertices.size());
  if (from_vertex < 0 || from_vertex >= n) throw NetworkError("find_curve: unknown start vertex");
  if (to_vertex < 0 || to_vertex >= n) throw NetworkError("find_curve: unknown end vertex");
  if (from_vertex == to_vertex) return std::nullopt;

  const int inf = std::numeric_limits<int>::max();
  std::vector<int> dist(n, inf);  // directed hops to to_vertex
  std::vector<std::vector<int>> into(n);
  for (size_t e = 0; e < net.edges.size(); ++e) into[net.edges[e].head].push_back(int(e));
  std::deque<int> queue{to_vertex};
  dist[to_vertex] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int e : into[v]) {
      int u = net.edges[e].tail;
      if (dist[u] > dist[v] + 1) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  if (dist[from_vertex] == inf) return std::nullopt;

  std::vector<std::vector<int>> out(n);
  for (size_t e = 0; e < net.edges.size(); ++e) out[net.edges[e].tail].push_back(int(e));
  PathCurve curve;
  int v = from_vertex;
  while (v != to_vertex) {
    int pick = -1;
    for (int e : out[v]) {
      if (dist[net.edges[e].head] != inf && dist[net.edges[e].head] == dist[v] - 1) {
        pick = e;  // out[v] is in ascending edge order, first hit is the smallest index
        break;
      }
    }
    assert(pick >= 0);
    curve.edges.push_back(pick);
    v = net.edges[pick].head;
  }
  check_curve(net, curve);  // minimum-hop paths cannot revisit a vertex
  return curve;
}

PerturbationTriple perturbation_costs(const TransportNetwork& net, const EdgeChain& s, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw NetworkError("perturbation_costs: alpha must lie in (0,1)");
  if (!is_on(net, s)) throw NetworkError("perturbation_costs: chain does not live on the network");
  if (!boundary(net, s).zero()) throw NetworkError("perturbation_costs: chain boundary is not zero");

  EdgeChain base = network_chain(net);
  EdgeChain plus = base;
  plus += s;
  EdgeChain minus = base;
  minus -= s;
  assert(boundary(net, plus) == boundary(net, base));
  assert(boundary(net, minus) == boundary(net, base));

  PerturbationTriple t;
  t.cost_base = chain_cost(net, base, alpha);
  t.cost_plus = chain_cost(net, plus, alpha);
  t.cost_minus = chain_cost(net, minus, alpha);
  return t;
}

}
