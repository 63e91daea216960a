#include "tpath/splitting.hpp"

#include "tpath/cycles.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace tpath {

namespace {

// cells grouped per row after the preconditions have been checked
struct SplitBase {
  CellIndex cells;
  std::vector<std::vector<int>> row_cols;  // row -> positive columns, ascending
};

SplitBase prepare(const TransportNetwork& net, const CurveMeasure& eta) {
  require_valid(net);
  VerifyReport rep = verify_good_decomposition(net, eta);
  if (!rep.ok)
    throw NetworkError("split: decomposition fails verification: " + rep.issues.front());
  SplitBase base;
  base.cells = collect_cells(net, eta);
  const RatMatrix& a = base.cells.rep.a;
  base.row_cols.assign(a.rows, {});
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      if (a.at(i, j) > 0) base.row_cols[i].push_back(j);
  for (int i = 0; i < a.rows; ++i) assert(!base.row_cols[i].empty());
  return base;
}

void require_pivot_free(const TransportNetwork& net, const CurveMeasure& eta,
                        const CellIndex& cells) {
  const RatMatrix& a = cells.rep.a;
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) {
      std::vector<std::pair<int, int>> cand = candidate_set(net, eta, {i, j});
      if (!cand.empty())
        throw NetworkError("split: cells (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                           ") and (" + std::to_string(cand[0].first + 1) + "," +
                           std::to_string(cand[0].second + 1) +
                           ") admit a pivot, refine the decomposition first");
    }
}

SplitPart build_part(const TransportNetwork& net, const CurveMeasure& eta, const SplitBase& base,
                     const std::string& label, const std::vector<std::pair<int, int>>& cell_list) {
  SplitPart part;
  part.label = label;
  const RatMatrix& a = base.cells.rep.a;
  for (auto cell : cell_list) {
    auto it = base.cells.members.find(cell);
    if (it == base.cells.members.end()) continue;
    for (int k : it->second) {
      part.witness.items.push_back(eta.items[k]);
      part.chain += curve_chain(eta.items[k].curve).scaled(eta.items[k].weight);
    }
    part.part_source.add(base.cells.rep.row_vertex[cell.first], a.at(cell.first, cell.second));
    part.part_target.add(base.cells.rep.col_vertex[cell.second], a.at(cell.first, cell.second));
  }
  assert(is_subcurrent(net, part.chain));
  SignedNodeMeasure want;
  for (const Atom& at : part.part_target.atoms) want.add(at.vertex, at.mass);
  for (const Atom& at : part.part_source.atoms) want.add(at.vertex, -at.mass);
  assert(boundary(net, part.chain) == want);
  return part;
}

}

SplitResult split_single_target(const TransportNetwork& net, const CurveMeasure& eta) {
  CycleCertificate cyc = find_cycle(net);
  if (!cyc.cycle_free)
    throw NetworkError("split: network is not cycle-free, edge " +
                       std::to_string(cyc.cycle_edges.front() + 1) + " lies on a cycle");
  SplitBase base = prepare(net, eta);
  require_pivot_free(net, eta, base.cells);
  const RatMatrix& a = base.cells.rep.a;
  int m = a.rows, n = a.cols;

  // sources feeding several targets stay together, the rest split per target
  std::vector<int> shared;
  for (int i = 0; i < m; ++i)
    if (base.row_cols[i].size() >= 2) shared.push_back(i);
  // cycle-free pivot-free decompositions share at most one source per target pair
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = j1 + 1; j2 < n; ++j2) {
      int meet = 0;
      for (int i = 0; i < m; ++i)
        if (a.at(i, j1) > 0 && a.at(i, j2) > 0) ++meet;
      if (meet > 1)
        throw NetworkError("split: targets " + std::to_string(j1 + 1) + " and " +
                           std::to_string(j2 + 1) + " share " + std::to_string(meet) +
                           " sources, the decomposition cannot be pivot-free on a cycle-free network");
    }
  assert(int(shared.size()) <= n * (n - 1) / 2);

  SplitResult out;
  {
    std::vector<std::pair<int, int>> cells0;
    for (int i : shared)
      for (int j : base.row_cols[i]) cells0.push_back({i, j});
    out.parts.push_back(build_part(net, eta, base, "T0", cells0));
  }
  for (int j = 0; j < n; ++j) {
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < m; ++i)
      if (base.row_cols[i].size() == 1 && base.row_cols[i][0] == j) cells.push_back({i, j});
    out.parts.push_back(build_part(net, eta, base, "T" + std::to_string(j + 1), cells));
  }

  EdgeChain sum;
  for (const SplitPart& p : out.parts) sum += p.chain;
  assert(sum == network_chain(net));
  return out;
}

SplitResult split_map_plan(const TransportNetwork& net, const CurveMeasure& eta) {
  SplitResult fine = split_single_target(net, eta);
  CellIndex cells = collect_cells(net, eta);
  const RatMatrix& a = cells.rep.a;
  int m = a.rows, n = a.cols;

  SplitResult out;
  SplitPart mapped;
  mapped.label = "Tmap";
  for (size_t k = 1; k < fine.parts.size(); ++k) {
    const SplitPart& p = fine.parts[k];
    mapped.chain += p.chain;
    for (const WeightedCurve& wc : p.witness.items) mapped.witness.items.push_back(wc);
    for (const Atom& at : p.part_source.atoms) mapped.part_source.add(at.vertex, at.mass);
    for (const Atom& at : p.part_target.atoms) mapped.part_target.add(at.vertex, at.mass);
  }
  SplitPart planned = fine.parts[0];
  planned.label = "Tplan";

  TransportMapAssignment phi;
  for (int i = 0; i < m; ++i) {
    std::vector<int> cols;
    for (int j = 0; j < n; ++j)
      if (a.at(i, j) > 0) cols.push_back(j);
    if (cols.size() != 1) continue;
    int v = cells.rep.row_vertex[i];
    phi.pairs.push_back({v, cells.rep.col_vertex[cols[0]]});
    phi.moved.add(v, a.at(i, cols[0]));
    phi.image.add(cells.rep.col_vertex[cols[0]], a.at(i, cols[0]));
  }
  assert(phi.moved == mapped.part_source);
  assert(phi.image == mapped.part_target);

  TransportPlanMatrix pi;
  pi.col_vertex = cells.rep.col_vertex;
  std::vector<int> shared_rows;
  for (int i = 0; i < m; ++i) {
    int hits = 0;
    for (int j = 0; j < n; ++j)
      if (a.at(i, j) > 0) ++hits;
    if (hits >= 2) shared_rows.push_back(i);
  }
  pi.entries = RatMatrix::zeros(int(shared_rows.size()), n);
  for (size_t r = 0; r < shared_rows.size(); ++r) {
    int i = shared_rows[r];
    pi.row_vertex.push_back(cells.rep.row_vertex[i]);
    for (int j = 0; j < n; ++j) {
      pi.entries.at(int(r), j) = a.at(i, j);
      pi.first_marginal.add(cells.rep.row_vertex[i], a.at(i, j));
      pi.second_marginal.add(cells.rep.col_vertex[j], a.at(i, j));
    }
  }
  assert(pi.first_marginal == planned.part_source);
  assert(pi.second_marginal == planned.part_target);
  // a shared source with a single positive cell would belong to the map side
  for (int r = 0; r < pi.entries.rows; ++r) {
    int hits = 0;
    for (int j = 0; j < n; ++j)
      if (pi.entries.at(r, j) > 0) ++hits;
    assert(hits >= 2);
  }

  out.parts.push_back(mapped);
  out.parts.push_back(planned);
  out.map = phi;
  out.plan = pi;

  CompatReport cm = verify_compatibility(net, mapped.chain, mapped.witness, plan_from_map(phi));
  assert(cm.ok);
  CompatReport cp = verify_compatibility(net, planned.chain, planned.witness, pi);
  assert(cp.ok);
  return out;
}

SplitResult split_two_maps(const TransportNetwork& net, const CurveMeasure& eta) {
  SplitBase base = prepare(net, eta);
  const RatMatrix& a = base.cells.rep.a;
  int m = a.rows;

  // the decomposition must be stair-shaped for the two-map split
  {
    int entry = 0;
    for (int i = 0; i < m; ++i) {
      int lo = base.row_cols[i].empty() ? -1 : base.row_cols[i].front();
      int hi = base.row_cols[i].empty() ? -1 : base.row_cols[i].back();
      if (lo >= 0 && lo < entry)
        throw NetworkError("split: decomposition is not stair-shaped, cell (" +
                           std::to_string(i + 1) + "," + std::to_string(lo + 1) +
                           ") sits left of the stair");
      entry = std::max(entry, hi);
    }
  }

  std::vector<std::pair<int, int>> last_cells;   // forward map side
  std::vector<std::pair<int, int>> other_cells;  // reverse map side
  for (int i = 0; i < m; ++i) {
    if (base.row_cols[i].empty()) continue;
    int last = base.row_cols[i].back();
    last_cells.push_back({i, last});
    for (int j : base.row_cols[i])
      if (j != last) other_cells.push_back({i, j});
  }
  {
    std::set<int> cols_seen;
    for (auto [i, j] : other_cells) {
      bool fresh = cols_seen.insert(j).second;
      assert(fresh);  // stair shape leaves at most one non-last cell per column
      (void)fresh;
    }
  }

  SplitResult out;
  out.parts.push_back(build_part(net, eta, base, "T1", last_cells));
  out.parts.push_back(build_part(net, eta, base, "T2", other_cells));
  EdgeChain sum = out.parts[0].chain;
  sum += out.parts[1].chain;
  assert(sum == network_chain(net));

  TransportMapAssignment phi;
  for (auto [i, j] : last_cells) {
    int v = base.cells.rep.row_vertex[i];
    phi.pairs.push_back({v, base.cells.rep.col_vertex[j]});
    phi.moved.add(v, a.at(i, j));
    phi.image.add(base.cells.rep.col_vertex[j], a.at(i, j));
  }
  TransportMapAssignment psi;
  {
    std::vector<std::pair<int, int>> by_col = other_cells;
    std::sort(by_col.begin(), by_col.end(),
              [](auto x, auto y) { return x.second < y.second; });
    for (auto [i, j] : by_col) {
      int v = base.cells.rep.col_vertex[j];
      psi.pairs.push_back({v, base.cells.rep.row_vertex[i]});
      psi.moved.add(v, a.at(i, j));
      psi.image.add(base.cells.rep.row_vertex[i], a.at(i, j));
    }
  }
  assert(phi.moved == out.parts[0].part_source);
  assert(phi.image == out.parts[0].part_target);
  assert(psi.moved == out.parts[1].part_target);
  assert(psi.image == out.parts[1].part_source);

  out.map = phi;
  out.reverse_map = psi;

  CompatReport c1 = verify_compatibility(net, out.parts[0].chain, out.parts[0].witness,
                                         plan_from_map(phi));
  assert(c1.ok);
  CompatReport c2 = verify_compatibility(net, out.parts[1].chain, out.parts[1].witness,
                                         plan_from_map(psi), /*reversed=*/true);
  assert(c2.ok);
  return out;
}

TransportPlanMatrix plan_from_map(const TransportMapAssignment& map) {
  TransportPlanMatrix plan;
  std::set<int> to_set;
  for (auto [from, to] : map.pairs) to_set.insert(to);
  plan.col_vertex.assign(to_set.begin(), to_set.end());
  std::vector<std::pair<int, int>> pairs = map.pairs;
  std::sort(pairs.begin(), pairs.end());
  for (auto [from, to] : pairs) plan.row_vertex.push_back(from);
  plan.entries = RatMatrix::zeros(int(pairs.size()), int(plan.col_vertex.size()));
  for (size_t r = 0; r < pairs.size(); ++r) {
    auto [from, to] = pairs[r];
    const Rat* mass = map.moved.mass_at(from);
    assert(mass);
    int c = int(std::lower_bound(plan.col_vertex.begin(), plan.col_vertex.end(), to) -
                plan.col_vertex.begin());
    plan.entries.at(int(r), c) = *mass;
  }
  plan.first_marginal = map.moved;
  plan.second_marginal = map.image;
  return plan;
}

CurveMeasure witness_from_plan(const TransportNetwork& net, const TransportPlanMatrix& plan,
                               bool reversed) {
  CurveMeasure out;
  for (int i = 0; i < plan.entries.rows; ++i)
    for (int j = 0; j < plan.entries.cols; ++j) {
      if (plan.entries.at(i, j) <= 0) continue;
      int from = reversed ? plan.col_vertex[j] : plan.row_vertex[i];
      int to = reversed ? plan.row_vertex[i] : plan.col_vertex[j];
      std::optional<PathCurve> c = find_curve(net, from, to);
      if (c) out.items.push_back({*c, plan.entries.at(i, j)});
    }
  return out;
}

CompatReport verify_compatibility(const TransportNetwork& net, const EdgeChain& chain,
                                  const CurveMeasure& witness, const TransportPlanMatrix& plan,
                                  bool reversed) {
  CompatReport rep;
  if (plan.entries.rows != int(plan.row_vertex.size()) ||
      plan.entries.cols != int(plan.col_vertex.size())) {
    rep.issues.push_back("plan labels do not match its shape");
    return rep;
  }
  if (!plan.entries.nonnegative()) rep.issues.push_back("plan has a negative entry");

  // declared marginals must be the row and column sums
  {
    AtomicMeasure first, second;
    for (int i = 0; i < plan.entries.rows; ++i)
      for (int j = 0; j < plan.entries.cols; ++j) {
        first.add(plan.row_vertex[i], plan.entries.at(i, j));
        second.add(plan.col_vertex[j], plan.entries.at(i, j));
      }
    if (!(first == plan.first_marginal)) rep.issues.push_back("plan row sums differ from its first marginal");
    if (!(second == plan.second_marginal)) rep.issues.push_back("plan column sums differ from its second marginal");
  }

  // the witness must assemble exactly the given chain
  {
    EdgeChain got;
    for (const WeightedCurve& wc : witness.items) {
      try {
        check_curve(net, wc.curve);
      } catch (const NetworkError& e) {
        rep.issues.push_back(std::string("witness curve invalid: ") + e.what());
        return rep;
      }
      got += curve_chain(wc.curve).scaled(wc.weight);
    }
    if (!(got == chain)) {
      EdgeChain diff = got;
      diff -= chain;
      auto [e, c] = *diff.coeffs.begin();
      rep.issues.push_back("witness curves carry " + rat_str(got.coeff(e)) + " over edge " +
                           std::to_string(e + 1) + ", the chain carries " + rat_str(chain.coeff(e)));
    }
  }

  // endpoint masses of the witness must reproduce the plan cell by cell
  {
    std::map<std::pair<int, int>, Rat> push;
    for (const WeightedCurve& wc : witness.items) {
      int s = curve_start(net, wc.curve);
      int t = curve_end(net, wc.curve);
      std::pair<int, int> key = reversed ? std::make_pair(t, s) : std::make_pair(s, t);
      push[key] += wc.weight;
    }
    std::map<std::pair<int, int>, Rat> want;
    for (int i = 0; i < plan.entries.rows; ++i)
      for (int j = 0; j < plan.entries.cols; ++j)
        if (plan.entries.at(i, j) != 0) want[{plan.row_vertex[i], plan.col_vertex[j]}] = plan.entries.at(i, j);
    for (const auto& [key, mass] : want) {
      auto it = push.find(key);
      Rat got = it == push.end() ? Rat(0) : it->second;
      if (got != mass)
        rep.issues.push_back("plan moves " + rat_str(mass) + " from '" +
                             net.vertex_name(reversed ? key.second : key.first) + "' to '" +
                             net.vertex_name(reversed ? key.first : key.second) +
                             "', witness endpoints carry " + rat_str(got));
    }
    for (const auto& [key, mass] : push) {
      if (mass != 0 && !want.count(key))
        rep.issues.push_back("witness moves " + rat_str(mass) + " between '" +
                             net.vertex_name(key.first) + "' and '" + net.vertex_name(key.second) +
                             "' outside the plan");
    }
  }

  // on a cycle-free network every plan cell needs a directed curve
  if (find_cycle(net).cycle_free) {
    for (int i = 0; i < plan.entries.rows; ++i)
      for (int j = 0; j < plan.entries.cols; ++j) {
        if (plan.entries.at(i, j) <= 0) continue;
        int from = reversed ? plan.col_vertex[j] : plan.row_vertex[i];
        int to = reversed ? plan.row_vertex[i] : plan.col_vertex[j];
        if (!find_curve(net, from, to))
          rep.issues.push_back("plan moves mass from '" + net.vertex_name(from) + "' to '" +
                               net.vertex_name(to) + "' but no directed curve connects them");
      }
  }

  rep.ok = rep.issues.empty();
  return rep;
}

}
