#include "tpath/generate.hpp"

#include "tpath/cycles.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace tpath {

namespace {

struct MassDraw {
  std::vector<Rat> source;
  std::vector<Rat> target;
  bool ok = false;
};

MassDraw draw_masses(const GenParams& p, SplitMix64& rng) {
  MassDraw out;
  if (!p.mass_choices.empty()) {
    const std::vector<int>& pick = p.mass_choices;
    std::vector<int> src(p.sources);
    long total = 0;
    for (int& v : src) {
      v = pick[rng.below(pick.size())];
      total += v;
    }
    // targets must hit the same total with the same choices
    for (int attempt = 0; attempt < 300; ++attempt) {
      std::vector<int> tgt(p.targets);
      long sum = 0;
      for (int& v : tgt) {
        v = pick[rng.below(pick.size())];
        sum += v;
      }
      if (sum != total) continue;
      for (int v : src) out.source.push_back(v);
      for (int v : tgt) out.target.push_back(v);
      out.ok = true;
      return out;
    }
    return out;
  }

  long denom = p.integer_masses ? 1 : (rng.below(2) ? 4 : 2);
  long total = 0;
  std::vector<long> src(p.sources);
  for (long& v : src) {
    v = 1 + long(rng.below(std::uint64_t(p.max_mass)));
    total += v;
  }
  if (total < p.targets) return out;
  // positive composition of the total
  std::vector<long> tgt(p.targets);
  long left = total;
  for (int j = 0; j + 1 < p.targets; ++j) {
    long spare = left - (p.targets - 1 - j);  // keep 1 for each later part
    tgt[j] = 1 + long(rng.below(std::uint64_t(spare)));
    left -= tgt[j];
  }
  tgt[p.targets - 1] = left;
  for (long v : src) out.source.push_back(Rat(v, denom));
  for (long v : tgt) out.target.push_back(Rat(v, denom));
  out.ok = true;
  return out;
}

}

TransportNetwork gen_network(const GenParams& p) {
  if (p.sources < 1 || p.targets < 1) throw NetworkError("gen: need at least one source and one target");

  for (int attempt = 0;; ++attempt) {
    if (attempt >= 200) throw NetworkError("gen: no valid instance after 200 attempts");
    SplitMix64 rng(p.seed * 0x100000001b3ull + std::uint64_t(attempt));

    MassDraw masses = draw_masses(p, rng);
    if (!masses.ok) continue;

    int atoms = p.sources + p.targets;
    // random recursive tree over the atoms
    std::vector<std::pair<int, int>> links;
    for (int v = 1; v < atoms; ++v) links.push_back({int(rng.below(std::uint64_t(v))), v});

    // junctions subdivide random links, so they never dangle
    int junctions = atoms < 2 ? 0 : rng.range(0, atoms);
    int nodes = atoms;
    for (int k = 0; k < junctions && !links.empty(); ++k) {
      size_t pick = rng.below(links.size());
      auto [a, b] = links[pick];
      int j = nodes++;
      links[pick] = {a, j};
      links.push_back({j, b});
    }

    // supplies drive the unique flow on the tree
    std::vector<Rat> supply(nodes, Rat(0));
    for (int i = 0; i < p.sources; ++i) supply[i] = masses.source[i];
    for (int j = 0; j < p.targets; ++j) supply[p.sources + j] = -masses.target[j];

    std::vector<std::vector<std::pair<int, int>>> adj(nodes);
    for (size_t e = 0; e < links.size(); ++e) {
      adj[links[e].first].push_back({links[e].second, int(e)});
      adj[links[e].second].push_back({links[e].first, int(e)});
    }
    std::vector<int> order, parent(nodes, -1), parent_link(nodes, -1);
    order.push_back(0);
    for (size_t q = 0; q < order.size(); ++q) {
      int v = order[q];
      for (auto [w, e] : adj[v])
        if (w != 0 && parent[w] < 0) {
          parent[w] = v;
          parent_link[w] = e;
          order.push_back(w);
        }
    }
    assert(int(order.size()) == nodes);

    std::vector<Rat> down(nodes, Rat(0));  // subtree supply
    bool degenerate = false;
    for (size_t q = order.size(); q-- > 0;) {
      int v = order[q];
      down[v] += supply[v];
      if (v != 0) {
        if (down[v] == 0) {
          degenerate = true;  // a link would carry no mass
          break;
        }
        down[parent[v]] += down[v];
      }
    }
    if (degenerate) continue;
    assert(down[0] == 0);

    // distinct lattice coordinates keep every edge length positive
    std::set<std::pair<int, int>> used;
    std::vector<std::pair<int, int>> pos(nodes);
    bool crowded = false;
    for (int v = 0; v < nodes; ++v) {
      int tries = 0;
      for (;;) {
        std::pair<int, int> c{int(rng.below(64)), int(rng.below(64))};
        if (used.insert(c).second) {
          pos[v] = c;
          break;
        }
        if (++tries > 500) {
          crowded = true;
          break;
        }
      }
      if (crowded) break;
    }
    if (crowded) continue;

    TransportNetwork net;
    for (int v = 0; v < nodes; ++v) {
      Point pt;
      pt.id = v;
      if (v < p.sources)
        pt.name = "x" + std::to_string(v + 1);
      else if (v < atoms)
        pt.name = "y" + std::to_string(v - p.sources + 1);
      else
        pt.name = "j" + std::to_string(v - atoms + 1);
      pt.coords = {Rat(pos[v].first), Rat(pos[v].second)};
      net.vertices.push_back(std::move(pt));
    }
    for (int v : order) {
      if (v == 0) continue;
      // flow toward the root when the subtree has extra supply
      if (down[v] > 0)
        net.edges.push_back({v, parent[v], down[v]});
      else
        net.edges.push_back({parent[v], v, -down[v]});
    }
    for (int i = 0; i < p.sources; ++i) net.source.add(i, masses.source[i]);
    for (int j = 0; j < p.targets; ++j) net.target.add(p.sources + j, masses.target[j]);

    if (!validate_network(net).empty()) continue;
    assert(find_cycle(net).cycle_free);
    return net;
  }
}

Document gen_document(const GenParams& p) {
  Document doc;
  doc.network = gen_network(p);
  return doc;
}

EdgeChain add_circulation(TransportNetwork& net, SplitMix64& rng) {
  assert(!net.edges.empty());
  int e = int(rng.below(net.edges.size()));
  Rat eps = net.edges[e].weight * rng.range(1, 4) / 4;
  net.edges[e].weight += eps;
  net.edges.push_back({net.edges[e].head, net.edges[e].tail, eps});
  EdgeChain chain;
  chain.add(e, eps);
  chain.add(int(net.edges.size()) - 1, eps);
  assert(boundary(net, chain).zero());
  assert(is_on(net, chain));
  return chain;
}

}
