#include "tpath/decomposition.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>

namespace tpath {

CellIndex collect_cells(const TransportNetwork& net, const CurveMeasure& eta) {
  CellIndex out;
  int m = int(net.source.atoms.size());
  int n = int(net.target.atoms.size());
  out.rep.a = RatMatrix::zeros(m, n);
  for (const Atom& a : net.source.atoms) out.rep.row_vertex.push_back(a.vertex);
  for (const Atom& a : net.target.atoms) out.rep.col_vertex.push_back(a.vertex);
  for (size_t k = 0; k < eta.items.size(); ++k) {
    const WeightedCurve& wc = eta.items[k];
    check_curve(net, wc.curve);
    if (wc.weight <= 0)
      throw NetworkError("curve " + std::to_string(k + 1) + " has weight " + rat_str(wc.weight) +
                         ", expected positive");
    int s = curve_start(net, wc.curve);
    int t = curve_end(net, wc.curve);
    int i = net.source.atom_index(s);
    int j = net.target.atom_index(t);
    if (i < 0)
      throw NetworkError("curve " + std::to_string(k + 1) + " starts at '" + net.vertex_name(s) +
                         "', which carries no source mass");
    if (j < 0)
      throw NetworkError("curve " + std::to_string(k + 1) + " ends at '" + net.vertex_name(t) +
                         "', which carries no target mass");
    out.rep.a.at(i, j) += wc.weight;
    out.members[{i, j}].push_back(int(k));
  }
  return out;
}

RepresentingMatrix representing_matrix(const TransportNetwork& net, const CurveMeasure& eta) {
  return collect_cells(net, eta).rep;
}

static EdgeChain cell_chain_indexed(const CurveMeasure& eta, const CellIndex& cells,
                                    std::pair<int, int> cell) {
  EdgeChain r;
  auto it = cells.members.find(cell);
  if (it == cells.members.end()) return r;
  for (int k : it->second) r += curve_chain(eta.items[k].curve).scaled(eta.items[k].weight);
  return r;
}

// cell chain carrying unit mass; zero chain for an empty cell
static EdgeChain unit_cell_chain_indexed(const CurveMeasure& eta, const CellIndex& cells,
                                         std::pair<int, int> cell) {
  Rat mass = cells.rep.a.at(cell.first, cell.second);
  if (mass == 0) return EdgeChain{};
  return cell_chain_indexed(eta, cells, cell).scaled(Rat(1) / mass);
}

EdgeChain cell_chain(const TransportNetwork& net, const CurveMeasure& eta, int i, int j) {
  CellIndex cells = collect_cells(net, eta);
  if (i < 0 || i >= cells.rep.a.rows || j < 0 || j >= cells.rep.a.cols)
    throw NetworkError("cell_chain: cell out of range");
  return cell_chain_indexed(eta, cells, {i, j});
}

CurveMeasure extract_good_decomposition(const TransportNetwork& net) {
  require_valid(net);
  int n = int(net.vertices.size());

  // directed cycles make the peeling loop unsound, reject them first
  {
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> out(n);
    for (size_t e = 0; e < net.edges.size(); ++e) {
      ++indeg[net.edges[e].head];
      out[net.edges[e].tail].push_back(int(e));
    }
    std::deque<int> ready;
    for (int v = 0; v < n; ++v)
      if (indeg[v] == 0) ready.push_back(v);
    std::vector<char> gone(n, 0);
    int done = 0;
    while (!ready.empty()) {
      int v = ready.front();
      ready.pop_front();
      gone[v] = 1;
      ++done;
      for (int e : out[v])
        if (--indeg[net.edges[e].head] == 0) ready.push_back(net.edges[e].head);
    }
    if (done < n) {
      for (size_t e = 0; e < net.edges.size(); ++e) {
        const Edge& ed = net.edges[e];
        if (!gone[ed.tail] && !gone[ed.head])
          throw NetworkError("directed cycle through edge " + std::to_string(e + 1) + " (" +
                             net.vertex_name(ed.tail) + " -> " + net.vertex_name(ed.head) + ")");
      }
      assert(false);
    }
  }

  std::vector<Rat> left(net.edges.size());
  for (size_t e = 0; e < net.edges.size(); ++e) left[e] = net.edges[e].weight;
  std::vector<Rat> supply(n, Rat(0)), demand(n, Rat(0));
  for (const Atom& a : net.source.atoms) supply[a.vertex] = a.mass;
  for (const Atom& a : net.target.atoms) demand[a.vertex] = a.mass;

  std::vector<std::vector<int>> out(n);
  for (size_t e = 0; e < net.edges.size(); ++e) out[net.edges[e].tail].push_back(int(e));

  std::map<std::vector<int>, Rat> stripped;
  for (const Atom& a : net.source.atoms) {
    while (supply[a.vertex] > 0) {
      // walk the heaviest remaining edges until a target that still wants mass
      std::vector<int> path;
      int v = a.vertex;
      while (!(net.is_target_atom(v) && demand[v] > 0)) {
        int pick = -1;
        for (int e : out[v])
          if (left[e] > 0 && (pick < 0 || left[e] > left[pick])) pick = e;
        if (pick < 0)
          throw NetworkError("stuck at vertex '" + net.vertex_name(v) +
                             "': no remaining outgoing weight");
        path.push_back(pick);
        v = net.edges[pick].head;
      }
      Rat take = supply[a.vertex] < demand[v] ? supply[a.vertex] : demand[v];
      for (int e : path) take = std::min(take, left[e]);
      assert(take > 0);
      supply[a.vertex] -= take;
      demand[v] -= take;
      for (int e : path) left[e] -= take;
      stripped[path] += take;
    }
  }
  for (size_t e = 0; e < net.edges.size(); ++e)
    if (left[e] != 0)
      throw NetworkError("edge " + std::to_string(e + 1) + " keeps weight " + rat_str(left[e]) +
                         " after peeling");
  for (int v = 0; v < n; ++v) assert(demand[v] == 0);

  CurveMeasure eta;
  for (const auto& [edges, weight] : stripped) {
    PathCurve c{edges};
    check_curve(net, c);
    eta.items.push_back({c, weight});
  }
  return eta;
}

VerifyReport verify_good_decomposition(const TransportNetwork& net, const CurveMeasure& eta) {
  VerifyReport rep;
  std::vector<Rat> load(net.edges.size(), Rat(0));
  AtomicMeasure starts, ends;
  for (size_t k = 0; k < eta.items.size(); ++k) {
    const WeightedCurve& wc = eta.items[k];
    try {
      check_curve(net, wc.curve);
    } catch (const NetworkError& e) {
      rep.issues.push_back("curve " + std::to_string(k + 1) + ": " + e.what());
      continue;
    }
    if (wc.weight <= 0) {
      rep.issues.push_back("curve " + std::to_string(k + 1) + ": weight " + rat_str(wc.weight) +
                           " not positive");
      continue;
    }
    int s = curve_start(net, wc.curve);
    int t = curve_end(net, wc.curve);
    if (!net.is_source_atom(s))
      rep.issues.push_back("curve " + std::to_string(k + 1) + ": starts at '" +
                           net.vertex_name(s) + "', not a source atom");
    if (!net.is_target_atom(t))
      rep.issues.push_back("curve " + std::to_string(k + 1) + ": ends at '" + net.vertex_name(t) +
                           "', not a target atom");
    starts.add(s, wc.weight);
    ends.add(t, wc.weight);
    for (int e : wc.curve.edges) load[e] += wc.weight;
  }
  if (!rep.issues.empty()) return rep;

  for (size_t e = 0; e < net.edges.size(); ++e)
    if (load[e] != net.edges[e].weight)
      rep.issues.push_back("edge " + std::to_string(e + 1) + " (" +
                           net.vertex_name(net.edges[e].tail) + " -> " +
                           net.vertex_name(net.edges[e].head) + "): curve load " +
                           rat_str(load[e]) + ", weight " + rat_str(net.edges[e].weight));
  if (!(starts == net.source))
    rep.issues.push_back("curve start masses do not reproduce the source measure");
  if (!(ends == net.target))
    rep.issues.push_back("curve end masses do not reproduce the target measure");
  if (rep.issues.empty()) {
    // total curve mass counts each marginal once
    assert(eta.total() == net.source.total());
    assert(eta.total() == net.target.total());
    rep.ok = true;
  }
  return rep;
}

static VanishingCycle vanishing_cycle_indexed(const TransportNetwork& net, const CurveMeasure& eta,
                                              const CellIndex& cells, std::pair<int, int> cell1,
                                              std::pair<int, int> cell2) {
  auto [i1, j1] = cell1;
  auto [i2, j2] = cell2;
  VanishingCycle out;
  out.chain = unit_cell_chain_indexed(eta, cells, {i1, j1});
  out.chain -= unit_cell_chain_indexed(eta, cells, {i1, j2});
  out.chain -= unit_cell_chain_indexed(eta, cells, {i2, j1});
  out.chain += unit_cell_chain_indexed(eta, cells, {i2, j2});
  out.closed = boundary(net, out.chain).zero();
  const RatMatrix& a = cells.rep.a;
  int s11 = rat_sign(a.at(i1, j1)), s12 = rat_sign(a.at(i1, j2));
  int s21 = rat_sign(a.at(i2, j1)), s22 = rat_sign(a.at(i2, j2));
  bool all_same = s11 == s12 && s12 == s21 && s21 == s22;
  // the boundary telescopes to the four endpoint deltas, so it vanishes
  // exactly when all four cells are occupied or all four are empty
  assert(out.closed == all_same);
  out.common_sign = all_same ? s11 : 0;
  return out;
}

VanishingCycle vanishing_cycle(const TransportNetwork& net, const CurveMeasure& eta,
                               std::pair<int, int> cell1, std::pair<int, int> cell2) {
  CellIndex cells = collect_cells(net, eta);
  const RatMatrix& a = cells.rep.a;
  for (auto [i, j] : {cell1, cell2})
    if (i < 0 || i >= a.rows || j < 0 || j >= a.cols)
      throw NetworkError("vanishing_cycle: cell out of range");
  return vanishing_cycle_indexed(net, eta, cells, cell1, cell2);
}

static std::vector<std::pair<int, int>> candidate_set_indexed(const TransportNetwork& net,
                                                              const CurveMeasure& eta,
                                                              const CellIndex& cells,
                                                              std::pair<int, int> base) {
  std::vector<std::pair<int, int>> out;
  const RatMatrix& a = cells.rep.a;
  auto [bi, bj] = base;
  if (a.at(bi, bj) <= 0) return out;
  for (int i = bi + 1; i < a.rows; ++i)
    for (int j = bj + 1; j < a.cols; ++j) {
      if (a.at(bi, j) <= 0 || a.at(i, bj) <= 0 || a.at(i, j) <= 0) continue;
      VanishingCycle vc = vanishing_cycle_indexed(net, eta, cells, base, {i, j});
      if (vc.chain.zero()) out.push_back({i, j});
    }
  return out;
}

std::vector<std::pair<int, int>> candidate_set(const TransportNetwork& net, const CurveMeasure& eta,
                                               std::pair<int, int> base) {
  CellIndex cells = collect_cells(net, eta);
  const RatMatrix& a = cells.rep.a;
  if (base.first < 0 || base.first >= a.rows || base.second < 0 || base.second >= a.cols)
    throw NetworkError("candidate_set: cell out of range");
  return candidate_set_indexed(net, eta, cells, base);
}

// scale every curve of one cell so the cell mass moves from `from` to `to`
static void scale_cell(CurveMeasure& eta, const CellIndex& cells, std::pair<int, int> cell,
                       const Rat& from, const Rat& to) {
  assert(from > 0);
  auto it = cells.members.find(cell);
  assert(it != cells.members.end());
  for (int k : it->second) {
    eta.items[k].weight = eta.items[k].weight * to / from;
    assert(eta.items[k].weight >= 0);
  }
}

CurveMeasure better_decompose(const TransportNetwork& net, const CurveMeasure& eta) {
  CurveMeasure work = eta;
  {
    CellIndex probe = collect_cells(net, work);
    // bases swept in the order (1,1), (1,2), (2,1), (1,3), ... by index sum, then row
    int m = probe.rep.a.rows, n = probe.rep.a.cols;
    std::vector<std::pair<int, int>> bases;
    for (int s = 0; s <= m + n - 2; ++s)
      for (int i = 0; i <= s; ++i)
        if (i < m && s - i < n) bases.push_back({i, s - i});

    for (auto base : bases) {
      int guard = 0;
      for (;;) {
        CellIndex cells = collect_cells(net, work);
        std::vector<std::pair<int, int>> cand = candidate_set_indexed(net, work, cells, base);
        if (cand.empty()) break;
        // cancel against the smallest candidate in the same graded order
        auto key = [](std::pair<int, int> c) { return std::make_pair(c.first + c.second, c.first); };
        std::pair<int, int> best = cand[0];
        for (auto c : cand)
          if (key(c) < key(best)) best = c;

        auto [bi, bj] = base;
        auto [ci, cj] = best;
        const RatMatrix& a = cells.rep.a;
        Rat mv = std::min(a.at(bi, cj), a.at(ci, bj));
        assert(mv > 0);
        scale_cell(work, cells, {bi, bj}, a.at(bi, bj), a.at(bi, bj) + mv);
        scale_cell(work, cells, {ci, cj}, a.at(ci, cj), a.at(ci, cj) + mv);
        scale_cell(work, cells, {bi, cj}, a.at(bi, cj), a.at(bi, cj) - mv);
        scale_cell(work, cells, {ci, bj}, a.at(ci, bj), a.at(ci, bj) - mv);
        CurveMeasure compact;
        for (const WeightedCurve& wc : work.items)
          if (wc.weight > 0) compact.items.push_back(wc);
        work = std::move(compact);
        // every pivot zeroes a cell in the base row or column, so this terminates
        assert(++guard <= m * n);
      }
    }
  }

  assert(induced_chain(work) == induced_chain(eta));
  assert(cell_routes_match(net, work, eta));
  return work;
}

bool cell_routes_match(const TransportNetwork& net, const CurveMeasure& fine,
                       const CurveMeasure& coarse) {
  CellIndex cf = collect_cells(net, fine);
  CellIndex cc = collect_cells(net, coarse);
  if (!cf.rep.a.same_shape(cc.rep.a)) return false;
  if (cf.rep.row_vertex != cc.rep.row_vertex || cf.rep.col_vertex != cc.rep.col_vertex) return false;
  for (const auto& [cell, members] : cf.members) {
    if (cf.rep.a.at(cell.first, cell.second) == 0) continue;
    if (cc.rep.a.at(cell.first, cell.second) <= 0) return false;
    EdgeChain f = unit_cell_chain_indexed(fine, cf, cell);
    EdgeChain c = unit_cell_chain_indexed(coarse, cc, cell);
    if (!(f == c)) return false;
  }
  return true;
}

}
