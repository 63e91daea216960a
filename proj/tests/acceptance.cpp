// Standalone acceptance gate: ten end-to-end checks over the library, each
// printed as one PASS/FAIL line. Run with a number argument to run one check.

#include "helpers.hpp"
#include "tpath/cycles.hpp"
#include "tpath/decomposition.hpp"
#include "tpath/generate.hpp"
#include "tpath/splitting.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace tpath;

namespace {

#define REQUIRE_OR(cond, text) \
  do {                         \
    if (!(cond)) {             \
      detail = (text);         \
      return false;            \
    }                          \
  } while (0)

bool criterion1(std::string& detail) {
  RatMatrix a = parse_csv_matrix(slurp(fixture_path("matrix_5x5.csv")));
  REQUIRE_OR(a == grid5_matrix(), "fixture matrix differs from the expected input");
  RatMatrix b = stairify(a);
  REQUIRE_OR(b == grid5_stair(), "stair form of the 5x5 grid is wrong");
  double best_ms = 1e18;
  for (int rep = 0; rep < 3; ++rep) {
    auto t0 = std::chrono::steady_clock::now();
    RatMatrix c = stairify(a);
    auto t1 = std::chrono::steady_clock::now();
    REQUIRE_OR(c == b, "stairify is not deterministic");
    best_ms = std::min(best_ms, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  REQUIRE_OR(best_ms < 10.0, "stairify took " + std::to_string(best_ms) + " ms");
  detail = "exact match, best of 3 runs " + std::to_string(best_ms) + " ms";
  return true;
}

bool criterion2(std::string& detail) {
  RatMatrix a = mat(2, 2, {1, 1, 1, 0});
  RatMatrix b = stairify(a);
  REQUIRE_OR(b == mat(2, 2, {2, 0, 0, 1}), "stair form of [[1,1],[1,0]] is wrong");

  Document doc = load_fixture("crossing_2x2");
  const TransportNetwork& net = *doc.network;
  const CurveMeasure& eta = *doc.curves;
  REQUIRE_OR(verify_good_decomposition(net, eta).ok, "crossing curves should verify as given");
  REQUIRE_OR(representing_matrix(net, eta).a == a, "crossing cell matrix is not [[1,1],[1,0]]");

  bool refused = false;
  try {
    rescale_measure(net, eta, b);
  } catch (const MatrixError&) {
    refused = true;
  }
  REQUIRE_OR(refused, "strict rescaling onto the stair form should refuse");

  CurveMeasure dropped = rescale_measure(net, eta, b, RescalePolicy::drop_missing);
  REQUIRE_OR(!verify_good_decomposition(net, dropped).ok,
             "the stair masses must not ride on the crossing curves");
  detail = "stair form exact, rescaled curves rejected";
  return true;
}

bool criterion3(std::string& detail) {
  Document doc = load_fixture("grid_11x11");
  const TransportNetwork& net = *doc.network;
  const CurveMeasure& eta = *doc.curves;
  RatMatrix a = grid11_matrix();
  RatMatrix stair = grid11_stair();
  REQUIRE_OR(representing_matrix(net, eta).a == a, "11x11 cell matrix differs");

  std::optional<std::vector<Block>> blocks = detect_blocks(a);
  REQUIRE_OR(blocks.has_value(), "no chained block structure found");
  REQUIRE_OR(*blocks == grid11_blocks(), "block list differs");
  REQUIRE_OR(blockwise_stairify(a) == stair, "blockwise stair form differs");

  CurveMeasure stair_eta = rescale_measure(net, eta, stair);
  REQUIRE_OR(verify_good_decomposition(net, stair_eta).ok,
             "rescaled stair decomposition fails verification");

  SplitResult split = split_two_maps(net, stair_eta);
  REQUIRE_OR(split.parts.size() == 2, "expected exactly two parts");
  REQUIRE_OR(split.map.has_value() && split.reverse_map.has_value(), "missing a map");

  const std::vector<std::pair<int, int>> phi = {{0, 11}, {1, 13}, {2, 14}, {3, 15},
                                                {4, 17}, {5, 18}, {6, 19}, {7, 21},
                                                {8, 21}, {9, 21}, {10, 21}};
  const long long phi_mass[] = {4, 8, 8, 8, 6, 9, 3, 3, 2, 1, 5};
  REQUIRE_OR(split.map->pairs == phi, "forward map pairs differ");
  for (size_t k = 0; k < phi.size(); ++k)
    REQUIRE_OR(*split.map->moved.mass_at(phi[k].first) == Rat(phi_mass[k]),
               "forward map mass differs at pair " + std::to_string(k + 1));

  const std::vector<std::pair<int, int>> psi = {{12, 1}, {13, 2}, {14, 3}, {15, 4},
                                                {16, 4}, {17, 5}, {20, 7}};
  const long long psi_mass[] = {3, 6, 3, 4, 7, 1, 3};
  REQUIRE_OR(split.reverse_map->pairs == psi, "reverse map pairs differ");
  for (size_t k = 0; k < psi.size(); ++k)
    REQUIRE_OR(*split.reverse_map->moved.mass_at(psi[k].first) == Rat(psi_mass[k]),
               "reverse map mass differs at pair " + std::to_string(k + 1));

  // the two winning cell matrices: each row's last positive stair cell vs the rest
  RatMatrix b1 = RatMatrix::zeros(11, 11), b2 = RatMatrix::zeros(11, 11);
  for (int i = 0; i < 11; ++i) {
    int last = -1;
    for (int j = 0; j < 11; ++j)
      if (stair.at(i, j) > 0) last = j;
    for (int j = 0; j < 11; ++j) {
      if (!(stair.at(i, j) > 0)) continue;
      (j == last ? b1 : b2).at(i, j) = stair.at(i, j);
    }
  }
  REQUIRE_OR(representing_matrix(net, split.parts[0].witness).a == b1, "first part carries B1 wrongly");
  REQUIRE_OR(representing_matrix(net, split.parts[1].witness).a == b2, "second part carries B2 wrongly");

  EdgeChain sum = split.parts[0].chain;
  sum += split.parts[1].chain;
  REQUIRE_OR(sum == network_chain(net), "parts do not reassemble the network chain");
  detail = "blocks, stair form, both maps and both cell matrices exact";
  return true;
}

bool criterion4(std::string& detail) {
  Document doc = load_fixture("hourglass");
  const TransportNetwork& net = *doc.network;
  const CurveMeasure& eta = *doc.curves;
  RatMatrix before = representing_matrix(net, eta).a;
  REQUIRE_OR(before == mat(2, 2, {2, 2, 1, 1}), "input cell matrix differs");

  CurveMeasure fine = better_decompose(net, eta);
  RatMatrix after = representing_matrix(net, fine).a;
  REQUIRE_OR(after == mat(2, 2, {3, 1, 0, 2}), "refined cell matrix differs");
  REQUIRE_OR(verify_good_decomposition(net, fine).ok, "refined decomposition fails verification");
  REQUIRE_OR(cell_routes_match(net, fine, eta), "refined cells reroute the mass");
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      REQUIRE_OR(candidate_set(net, fine, {i, j}).empty(),
                 "candidate set not empty at (" + std::to_string(i) + "," + std::to_string(j) + ")");

  // strict progress in the graded cell order the pivots walk
  auto graded = [](const RatMatrix& m) {
    std::vector<Rat> v;
    for (int g = 0; g <= m.rows + m.cols - 2; ++g)
      for (int i = 0; i < m.rows; ++i) {
        int j = g - i;
        if (j >= 0 && j < m.cols) v.push_back(m.at(i, j));
      }
    return v;
  };
  std::vector<Rat> bv = graded(before), av = graded(after);
  int cmp = 0;
  for (size_t k = 0; k < bv.size() && cmp == 0; ++k)
    if (av[k] != bv[k]) cmp = av[k] > bv[k] ? 1 : -1;
  REQUIRE_OR(cmp == 1, "output does not strictly improve on the input");
  detail = "matrix, verification, empty candidate sets, strict improvement";
  return true;
}

bool criterion5(std::string& detail) {
  Document twin = load_fixture("twin_tracks");
  CycleCertificate cert = find_cycle(*twin.network);
  REQUIRE_OR(!cert.cycle_free, "the twin tracks loop went unnoticed");
  REQUIRE_OR(!cert.chain.zero(), "certificate chain is empty");
  REQUIRE_OR(boundary(*twin.network, cert.chain).zero(), "certificate boundary is not zero");
  REQUIRE_OR(is_on(*twin.network, cert.chain), "certificate leaves the network");
  REQUIRE_OR(cert.eps > 0, "certificate eps is not positive");

  Document hour = load_fixture("hourglass");
  REQUIRE_OR(find_cycle(*hour.network).cycle_free, "the funnel should be cycle-free");

  for (int k = 0; k < 1000; ++k) {
    GenParams p;
    p.seed = 1000 + k;
    p.sources = 1 + k % 4;
    p.targets = 1 + (k / 4) % 4;
    TransportNetwork net = gen_network(p);
    if (k % 3 == 0) {
      SplitMix64 rng(777 + k);
      add_circulation(net, rng);
    }

    // independent route: a forest has exactly |V| - #components edges
    std::vector<int> parent(net.vertices.size());
    for (size_t v = 0; v < parent.size(); ++v) parent[v] = int(v);
    std::function<int(int)> find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const Edge& e : net.edges) parent[find(e.tail)] = find(e.head);
    std::set<int> roots;
    for (size_t v = 0; v < parent.size(); ++v) roots.insert(find(int(v)));
    bool forest = net.edges.size() == net.vertices.size() - roots.size();

    CycleCertificate c = find_cycle(net);
    REQUIRE_OR(c.cycle_free == forest,
               "forest identity disagrees at seed " + std::to_string(1000 + k));
    if (!c.cycle_free)
      REQUIRE_OR(!c.chain.zero() && boundary(net, c.chain).zero() && is_on(net, c.chain) &&
                     c.eps > 0,
                 "bad certificate at seed " + std::to_string(1000 + k));
  }
  detail = "goldens plus 1000 seeded instances";
  return true;
}

bool criterion6(std::string& detail) {
  const double alphas[] = {0.25, 0.5, 0.75};
  for (int k = 0; k < 500; ++k) {
    GenParams p;
    p.seed = 5000 + k;
    p.sources = 1 + k % 3;
    p.targets = 1 + (k / 3) % 3;
    TransportNetwork net = gen_network(p);
    SplitMix64 rng(9000 + k);
    EdgeChain s = add_circulation(net, rng);

    PerturbationTriple t = perturbation_costs(net, s, alphas[k % 3]);
    REQUIRE_OR(t.cost_base > 0, "base cost vanished at seed " + std::to_string(5000 + k));
    double drop = (t.cost_base - std::min(t.cost_plus, t.cost_minus)) / t.cost_base;
    REQUIRE_OR(drop > 1e-12, "no strict cost drop at seed " + std::to_string(5000 + k));
  }
  detail = "500 seeded network, cycle, alpha triples";
  return true;
}

bool criterion7(std::string& detail) {
  SplitMix64 rng(424242);
  for (int k = 0; k < 1000; ++k) {
    int rows = 1 + int(rng.below(6));
    int cols = 1 + int(rng.below(6));
    RatMatrix a = RatMatrix::zeros(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        Rat v = Rat(long(rng.below(10)));
        std::uint64_t d = rng.below(4);
        if (d == 1) v /= 2;
        if (d == 2) v /= 4;
        a.at(i, j) = v;
      }

    RatMatrix b = stairify(a);
    REQUIRE_OR(congruent(a, b), "sums not conserved at case " + std::to_string(k));
    REQUIRE_OR(stairify(b) == b, "not idempotent at case " + std::to_string(k));
    REQUIRE_OR(is_stair_shaped(b).stair_shaped, "result not stair-shaped at case " + std::to_string(k));

    // independent oracle: each entry is the overlap of cumulative marginals
    std::vector<Rat> rsum = a.row_sums(), csum = a.col_sums();
    std::vector<Rat> R(rows + 1), C(cols + 1);
    for (int i = 0; i < rows; ++i) R[i + 1] = R[i] + rsum[i];
    for (int j = 0; j < cols; ++j) C[j + 1] = C[j] + csum[j];
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        Rat want = std::min(R[i + 1], C[j + 1]) - std::max(R[i], C[j]);
        if (want < 0) want = 0;
        REQUIRE_OR(b.at(i, j) == want, "oracle mismatch at case " + std::to_string(k));
      }
  }
  detail = "1000 random matrices against the closed form";
  return true;
}

bool criterion8(std::string& detail) {
  for (int k = 0; k < 200; ++k) {
    GenParams p;
    p.seed = 3000 + k;
    p.sources = 1 + (k * 7) % 8;
    p.targets = 1 + (k * 3) % 8;
    TransportNetwork net = gen_network(p);
    std::string at = " at seed " + std::to_string(3000 + k);

    CurveMeasure eta = better_decompose(net, extract_good_decomposition(net));
    SplitResult st = split_single_target(net, eta);
    int n = int(net.target.atoms.size());
    REQUIRE_OR(int(st.parts.size()) == n + 1, "part count off" + at);

    EdgeChain sum;
    AtomicMeasure src_sum, tgt_sum;
    for (const SplitPart& part : st.parts) {
      sum += part.chain;
      for (const Atom& a : part.part_source.atoms) src_sum.add(a.vertex, a.mass);
      for (const Atom& a : part.part_target.atoms) tgt_sum.add(a.vertex, a.mass);
      REQUIRE_OR(is_subcurrent(net, part.chain), "part not a subcurrent by signs" + at);
      REQUIRE_OR(subcurrent_by_mass(net, part.chain), "part not a subcurrent by mass" + at);
      REQUIRE_OR(induced_chain(part.witness) == part.chain, "witness does not assemble the part" + at);
    }
    REQUIRE_OR(sum == network_chain(net), "parts do not sum to the network" + at);
    REQUIRE_OR(src_sum == net.source, "source marginals not reproduced" + at);
    REQUIRE_OR(tgt_sum == net.target, "target marginals not reproduced" + at);
    REQUIRE_OR(int(st.parts[0].part_source.atoms.size()) <= n * (n - 1) / 2,
               "too many shared sources" + at);

    SplitResult mp = split_map_plan(net, eta);
    REQUIRE_OR(mp.parts.size() == 2 && mp.map.has_value() && mp.plan.has_value(),
               "map-plan shape off" + at);
    TransportPlanMatrix map_plan = plan_from_map(*mp.map);
    REQUIRE_OR(verify_compatibility(net, mp.parts[0].chain, mp.parts[0].witness, map_plan).ok,
               "map part incompatible with its plan" + at);
    REQUIRE_OR(verify_compatibility(net, mp.parts[1].chain, mp.parts[1].witness, *mp.plan).ok,
               "plan part incompatible with the plan" + at);
    for (int i = 0; i < mp.plan->entries.rows; ++i) {
      int positives = 0;
      for (int j = 0; j < mp.plan->entries.cols; ++j)
        if (mp.plan->entries.at(i, j) > 0) ++positives;
      REQUIRE_OR(positives >= 2, "shared source feeds fewer than two targets" + at);
    }
    EdgeChain mp_sum = mp.parts[0].chain;
    mp_sum += mp.parts[1].chain;
    REQUIRE_OR(mp_sum == network_chain(net), "map and plan parts do not sum" + at);
  }
  detail = "200 seeded instances, both split flavors";
  return true;
}

bool criterion9(std::string& detail) {
  auto plan_of = [](const Document& doc) {
    TransportPlanMatrix plan;
    plan.entries = *doc.matrix;
    for (const std::string& name : doc.matrix_row_labels)
      plan.row_vertex.push_back(doc.vertex_by_name(name));
    for (const std::string& name : doc.matrix_col_labels)
      plan.col_vertex.push_back(doc.vertex_by_name(name));
    for (int i = 0; i < plan.entries.rows; ++i)
      for (int j = 0; j < plan.entries.cols; ++j) {
        plan.first_marginal.add(plan.row_vertex[i], plan.entries.at(i, j));
        plan.second_marginal.add(plan.col_vertex[j], plan.entries.at(i, j));
      }
    return plan;
  };

  Document merge = load_fixture("merge_split");
  TransportPlanMatrix q1 = plan_of(merge);
  CurveMeasure w1 = witness_from_plan(*merge.network, q1);
  REQUIRE_OR(verify_compatibility(*merge.network, network_chain(*merge.network), w1, q1).ok,
             "the merge network should carry the plan");

  Document skew = load_fixture("skew_merge");
  TransportPlanMatrix q2 = plan_of(skew);
  CurveMeasure w2 = witness_from_plan(*skew.network, q2);
  CompatReport rep = verify_compatibility(*skew.network, network_chain(*skew.network), w2, q2);
  REQUIRE_OR(!rep.ok, "the skew network must refuse the same plan");
  REQUIRE_OR(!rep.issues.empty(), "refusal must carry reasons");
  detail = "same plan, carried by one network and refused by the other";
  return true;
}

bool criterion10(std::string& detail) {
  for (int k = 0; k < 60; ++k) {
    GenParams p;
    p.seed = 7000 + k;
    p.sources = 1 + k % 3;
    p.targets = 1 + (k / 3) % 3;
    p.mass_choices = {1, 2, 3};
    TransportNetwork net = gen_network(p);
    std::string at = " at seed " + std::to_string(7000 + k);

    CurveMeasure eta = extract_good_decomposition(net);
    CurveMeasure fine = better_decompose(net, eta);
    RatMatrix a = representing_matrix(net, eta).a;
    RatMatrix f = representing_matrix(net, fine).a;
    int rows = a.rows, cols = a.cols;

    REQUIRE_OR(induced_chain(eta) == network_chain(net), "extraction misses the network" + at);
    REQUIRE_OR(induced_chain(fine) == induced_chain(eta), "refinement changed the chain" + at);
    REQUIRE_OR(cell_routes_match(net, fine, eta), "refinement rerouted a cell" + at);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        REQUIRE_OR(candidate_set(net, fine, {i, j}).empty(), "candidate set not empty" + at);

    // unit cell chains of the input; pivoting reuses these routes verbatim
    std::vector<std::vector<EdgeChain>> unit(rows, std::vector<EdgeChain>(cols));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (a.at(i, j) > 0) unit[i][j] = cell_chain(net, eta, i, j).scaled(Rat(1) / a.at(i, j));

    EdgeChain want = network_chain(net);
    auto carries_chain = [&](const RatMatrix& x) {
      EdgeChain got;
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
          if (x.at(i, j) > 0) got += unit[i][j].scaled(x.at(i, j));
      return got == want;
    };
    auto pivot_free = [&](const RatMatrix& x) {
      for (int i1 = 0; i1 < rows; ++i1)
        for (int j1 = 0; j1 < cols; ++j1) {
          if (!(x.at(i1, j1) > 0)) continue;
          for (int i2 = i1 + 1; i2 < rows; ++i2)
            for (int j2 = j1 + 1; j2 < cols; ++j2) {
              if (!(x.at(i1, j2) > 0) || !(x.at(i2, j1) > 0) || !(x.at(i2, j2) > 0)) continue;
              EdgeChain four = unit[i1][j1];
              four -= unit[i1][j2];
              four -= unit[i2][j1];
              four += unit[i2][j2];
              if (four.zero()) return false;
            }
        }
      return true;
    };

    // every same-marginal nonnegative integer matrix on the input support
    std::vector<Rat> rsum = a.row_sums(), csum = a.col_sums();
    std::vector<RatMatrix> found;
    RatMatrix x = RatMatrix::zeros(rows, cols);
    std::function<void(int, int, Rat)> fill = [&](int row, int j, Rat left) {
      if (row == rows) {
        if (carries_chain(x) && pivot_free(x)) found.push_back(x);
        return;
      }
      if (j == cols) {
        if (left == 0) fill(row + 1, 0, row + 1 < rows ? rsum[row + 1] : Rat(0));
        return;
      }
      Rat cap = a.at(row, j) > 0 ? std::min(left, csum[j]) : Rat(0);
      for (Rat v = 0; v <= cap; v += 1) {
        x.at(row, j) = v;
        csum[j] -= v;
        fill(row, j + 1, left - v);
        csum[j] += v;
        x.at(row, j) = 0;
      }
    };
    fill(0, 0, rows > 0 ? rsum[0] : Rat(0));

    REQUIRE_OR(!found.empty(), "exhaustive search found nothing" + at);
    REQUIRE_OR(std::find(found.begin(), found.end(), f) != found.end(),
               "refined matrix missing from the exhaustive solutions" + at);
  }
  detail = "60 seeded cases cross-checked exhaustively";
  return true;
}

struct Entry {
  int number;
  const char* label;
  bool (*run)(std::string&);
};

const Entry kCriteria[] = {
    {1, "northwest stair form of the 5x5 grid", criterion1},
    {2, "stair masses refuse the crossing routes", criterion2},
    {3, "blockwise stair split of the 11x11 grid", criterion3},
    {4, "pivoting refines the funnel decomposition", criterion4},
    {5, "cycle certificates match the forest count", criterion5},
    {6, "closed perturbations lower the cost", criterion6},
    {7, "stairification conserves sums exactly", criterion7},
    {8, "splitting suite on random forests", criterion8},
    {9, "plan compatibility on the merge and skew networks", criterion9},
    {10, "exhaustive pivot search confirms refinement", criterion10},
};

}

int main(int argc, char** argv) {
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0, ran = 0;
  for (const Entry& e : kCriteria) {
    if (only != 0 && e.number != only) continue;
    ++ran;
    std::string det;
    bool ok = false;
    try {
      ok = e.run(det);
    } catch (const std::exception& ex) {
      det = std::string("unexpected exception: ") + ex.what();
    }
    std::printf("criterion %d %s: %s%s%s\n", e.number, ok ? "PASS" : "FAIL", e.label,
                det.empty() ? "" : " - ", det.c_str());
    if (!ok) ++failures;
  }
  if (ran == 0) {
    std::printf("no criterion numbered %d\n", only);
    return 2;
  }
  std::printf("%d of %d criteria pass\n", ran - failures, ran);
  return failures == 0 ? 0 : 1;
}
