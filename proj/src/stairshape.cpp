#include "tpath/stairshape.hpp"

#include "tpath/decomposition.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace tpath {

static void require_matrix(const RatMatrix& a, const char* who) {
  if (a.rows < 1 || a.cols < 1) throw MatrixError(std::string(who) + ": empty matrix");
  if (!a.nonnegative()) throw MatrixError(std::string(who) + ": negative entry");
}

StairCheck is_stair_shaped(const RatMatrix& a) {
  require_matrix(a, "is_stair_shaped");
  StairCheck out;
  // walk the tightest monotone path covering each row's positive span
  int entry = 0;  // column where the path enters the current row
  std::vector<std::pair<int, int>> spans(a.rows);
  for (int i = 0; i < a.rows; ++i) {
    int lo = -1, hi = -1;
    for (int j = 0; j < a.cols; ++j)
      if (a.at(i, j) > 0) {
        if (lo < 0) lo = j;
        hi = j;
      }
    if (lo >= 0 && lo < entry) {
      out.violation = {i, lo};
      return out;
    }
    int exit = std::max(entry, hi);
    if (i == a.rows - 1) exit = a.cols - 1;
    spans[i] = {entry, exit};
    entry = exit;
  }
  out.stair_shaped = true;
  for (int i = 0; i < a.rows; ++i)
    for (int j = spans[i].first; j <= spans[i].second; ++j) out.profile.steps.push_back({i, j});
  assert(int(out.profile.steps.size()) == a.rows + a.cols - 1);
  return out;
}

RatMatrix stairify(const RatMatrix& a) {
  require_matrix(a, "stairify");
  std::vector<Rat> rowrem = a.row_sums();
  std::vector<Rat> colrem = a.col_sums();
  RatMatrix b = RatMatrix::zeros(a.rows, a.cols);
  int r = 0, c = 0;
  for (;;) {
    Rat put = std::min(rowrem[r], colrem[c]);
    b.at(r, c) += put;
    rowrem[r] -= put;
    colrem[c] -= put;
    if (r == a.rows - 1 && c == a.cols - 1) break;
    if (r == a.rows - 1) {
      ++c;  // last row: only columns remain to close
    } else if (c == a.cols - 1) {
      ++r;
    } else if (rowrem[r] <= colrem[c]) {
      ++r;  // row exhausted, ties close the row
    } else {
      ++c;
    }
  }
  assert(std::all_of(rowrem.begin(), rowrem.end(), [](const Rat& v) { return v == 0; }));
  assert(std::all_of(colrem.begin(), colrem.end(), [](const Rat& v) { return v == 0; }));
  assert(is_stair_shaped(b).stair_shaped);
  return b;
}

bool congruent(const RatMatrix& a, const RatMatrix& b) {
  return a.same_shape(b) && a.row_sums() == b.row_sums() && a.col_sums() == b.col_sums();
}

RatMatrix apply_move(const RatMatrix& a, const ElementaryMove& mv) {
  if (mv.i1 < 0 || mv.i1 >= mv.i2 || mv.i2 >= a.rows || mv.j1 < 0 || mv.j1 >= mv.j2 ||
      mv.j2 >= a.cols)
    throw MatrixError("apply_move: corners out of order or out of range");
  RatMatrix b = a;
  b.at(mv.i1, mv.j1) += mv.amount;
  b.at(mv.i2, mv.j2) += mv.amount;
  b.at(mv.i1, mv.j2) -= mv.amount;
  b.at(mv.i2, mv.j1) -= mv.amount;
  return b;
}

std::vector<ElementaryMove> congruence_moves(const RatMatrix& a, const RatMatrix& b) {
  if (!congruent(a, b)) throw MatrixError("congruence_moves: marginals differ");
  std::vector<ElementaryMove> moves;
  for (int i = 0; i + 1 < a.rows; ++i)
    for (int j = 0; j + 1 < a.cols; ++j) {
      Rat t = b.at(i, j) - a.at(i, j);
      if (t != 0) moves.push_back({i, j, a.rows - 1, a.cols - 1, t});
    }
  RatMatrix check = a;
  for (const ElementaryMove& mv : moves) check = apply_move(check, mv);
  // interior cells match by construction, the outer rim is pinned by the marginals
  assert(check == b);
  return moves;
}

namespace {

struct BlockFinder {
  const RatMatrix& a;
  std::vector<char> covered;
  std::vector<Block> chain;

  explicit BlockFinder(const RatMatrix& m) : a(m), covered(size_t(m.rows) * m.cols, 0) {}

  char& cov(int i, int j) { return covered[size_t(i) * a.cols + j]; }

  std::pair<int, int> first_uncovered_positive() {
    for (int i = 0; i < a.rows; ++i)
      for (int j = 0; j < a.cols; ++j)
        if (a.at(i, j) > 0 && !cov(i, j)) return {i, j};
    return {-1, -1};
  }

  bool all_positive(const Block& b) const {
    for (int i = b.i1; i <= b.i2; ++i)
      for (int j = b.j1; j <= b.j2; ++j)
        if (a.at(i, j) <= 0) return false;
    return true;
  }

  // maximal all-positive rectangle hanging down-right from the anchor,
  // grown width-first or height-first
  Block grow(int i1, int j1, bool width_first) const {
    Block b{i1, j1, i1, j1};
    auto widen = [&] {
      while (b.j2 + 1 < a.cols) {
        bool ok = true;
        for (int i = b.i1; i <= b.i2 && ok; ++i) ok = a.at(i, b.j2 + 1) > 0;
        if (!ok) break;
        ++b.j2;
      }
    };
    auto deepen = [&] {
      while (b.i2 + 1 < a.rows) {
        bool ok = true;
        for (int j = b.j1; j <= b.j2 && ok; ++j) ok = a.at(b.i2 + 1, j) > 0;
        if (!ok) break;
        ++b.i2;
      }
    };
    if (width_first) {
      widen();
      deepen();
    } else {
      deepen();
      widen();
    }
    return b;
  }

  bool search() {
    std::pair<int, int> p = first_uncovered_positive();
    if (p.first < 0) return true;

    std::vector<std::pair<int, int>> anchors;
    if (chain.empty()) {
      anchors.push_back({0, 0});
    } else {
      const Block& prev = chain.back();
      for (int i1 : {prev.i2, prev.i2 + 1})
        for (int j1 : {prev.j2, prev.j2 + 1})
          if (i1 < a.rows && j1 < a.cols) anchors.push_back({i1, j1});
    }

    std::vector<Block> options;
    for (auto [i1, j1] : anchors) {
      if (i1 > p.first || j1 > p.second) continue;  // could never reach the next positive
      if (a.at(i1, j1) <= 0) continue;
      for (bool wf : {true, false}) {
        Block b = grow(i1, j1, wf);
        if (b.i2 < p.first || b.j2 < p.second) continue;
        if (std::find(options.begin(), options.end(), b) == options.end()) options.push_back(b);
      }
    }
    // bigger blocks first keeps the chain short and matches the walkthroughs
    std::stable_sort(options.begin(), options.end(), [](const Block& x, const Block& y) {
      long ax = long(x.i2 - x.i1 + 1) * (x.j2 - x.j1 + 1);
      long ay = long(y.i2 - y.i1 + 1) * (y.j2 - y.j1 + 1);
      return ax > ay;
    });

    for (const Block& b : options) {
      std::vector<std::pair<int, int>> newly;
      for (int i = b.i1; i <= b.i2; ++i)
        for (int j = b.j1; j <= b.j2; ++j)
          if (!cov(i, j)) {
            cov(i, j) = 1;
            newly.push_back({i, j});
          }
      chain.push_back(b);
      if (search()) return true;
      chain.pop_back();
      for (auto [i, j] : newly) cov(i, j) = 0;
    }
    return false;
  }
};

bool valid_block_chain(const RatMatrix& a, const std::vector<Block>& blocks) {
  if (blocks.empty()) return false;
  if (blocks[0].i1 != 0 || blocks[0].j1 != 0) return false;
  std::vector<char> covered(size_t(a.rows) * a.cols, 0);
  for (size_t k = 0; k < blocks.size(); ++k) {
    const Block& b = blocks[k];
    if (b.i1 < 0 || b.i1 > b.i2 || b.i2 >= a.rows) return false;
    if (b.j1 < 0 || b.j1 > b.j2 || b.j2 >= a.cols) return false;
    for (int i = b.i1; i <= b.i2; ++i)
      for (int j = b.j1; j <= b.j2; ++j) {
        if (a.at(i, j) <= 0) return false;
        covered[size_t(i) * a.cols + j] = 1;
      }
    if (k > 0) {
      const Block& p = blocks[k - 1];
      if (b.i1 != p.i2 && b.i1 != p.i2 + 1) return false;
      if (b.j1 != p.j2 && b.j1 != p.j2 + 1) return false;
    }
  }
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      if (a.at(i, j) > 0 && !covered[size_t(i) * a.cols + j]) return false;
  return true;
}

}

std::optional<std::vector<Block>> detect_blocks(const RatMatrix& a) {
  require_matrix(a, "detect_blocks");
  if (a.at(0, 0) <= 0) return std::nullopt;
  BlockFinder finder(a);
  if (!finder.search()) return std::nullopt;
  if (!valid_block_chain(a, finder.chain)) return std::nullopt;
  return finder.chain;
}

RatMatrix blockwise_stairify(const RatMatrix& a) {
  std::optional<std::vector<Block>> blocks = detect_blocks(a);
  if (!blocks)
    throw MatrixError("blockwise_stairify: matrix has no chained block structure");
  RatMatrix cur = a;
  for (const Block& b : *blocks) {
    // cut the block out of the current matrix, later blocks see earlier updates
    RatMatrix sub = RatMatrix::zeros(b.i2 - b.i1 + 1, b.j2 - b.j1 + 1);
    for (int i = 0; i < sub.rows; ++i)
      for (int j = 0; j < sub.cols; ++j) sub.at(i, j) = cur.at(b.i1 + i, b.j1 + j);
    RatMatrix fixed = stairify(sub);
    for (int i = 0; i < sub.rows; ++i)
      for (int j = 0; j < sub.cols; ++j) cur.at(b.i1 + i, b.j1 + j) = fixed.at(i, j);
  }
  assert(congruent(a, cur));
  return cur;
}

std::optional<std::vector<ElementaryMove>> admissible_moves(const RatMatrix& a, const RatMatrix& b) {
  require_matrix(a, "admissible_moves");
  require_matrix(b, "admissible_moves");
  if (!congruent(a, b)) return std::nullopt;
  if (a == b) return std::vector<ElementaryMove>{};

  std::optional<std::vector<Block>> blocks = detect_blocks(a);
  if (!blocks) return std::nullopt;

  // any rectangle inside an all-positive block has positive corners in the
  // input, so a witness exists exactly when the difference stays inside them
  RatMatrix d = RatMatrix::zeros(a.rows, a.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) d.at(i, j) = b.at(i, j) - a.at(i, j);
  std::vector<char> inside(size_t(a.rows) * a.cols, 0);
  for (const Block& blk : *blocks)
    for (int i = blk.i1; i <= blk.i2; ++i)
      for (int j = blk.j1; j <= blk.j2; ++j) inside[size_t(i) * a.cols + j] = 1;
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      if (d.at(i, j) != 0 && !inside[size_t(i) * a.cols + j]) return std::nullopt;

  // peel blocks from the back; each block's share of the difference balances
  // on its own, except that a shared corner hands its imbalance to the
  // previous block, whose rows and columns it also belongs to
  std::vector<ElementaryMove> moves;
  for (size_t k = blocks->size(); k-- > 0;) {
    const Block& blk = (*blocks)[k];
    int h = blk.i2 - blk.i1 + 1, w = blk.j2 - blk.j1 + 1;
    RatMatrix sub = RatMatrix::zeros(h, w);
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < w; ++j) sub.at(i, j) = d.at(blk.i1 + i, blk.j1 + j);
    if (k > 0) {
      const Block& prev = (*blocks)[k - 1];
      if (blk.i1 == prev.i2 && blk.j1 == prev.j2) {
        Rat fix = 0;
        for (int j = 1; j < w; ++j) fix -= sub.at(0, j);
        sub.at(0, 0) = fix;
      }
    }
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < w; ++j) d.at(blk.i1 + i, blk.j1 + j) -= sub.at(i, j);

    if (!congruent(RatMatrix::zeros(h, w), sub)) return std::nullopt;
    for (const ElementaryMove& mv : congruence_moves(RatMatrix::zeros(h, w), sub))
      moves.push_back({blk.i1 + mv.i1, blk.j1 + mv.j1, blk.i1 + mv.i2, blk.j1 + mv.j2, mv.amount});
  }
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j)
      if (d.at(i, j) != 0) return std::nullopt;

#ifndef NDEBUG
  RatMatrix check = a;
  for (const ElementaryMove& mv : moves) check = apply_move(check, mv);
  assert(check == b);
#endif
  return moves;
}

CurveMeasure rescale_measure(const TransportNetwork& net, const CurveMeasure& eta,
                             const RatMatrix& b, RescalePolicy policy) {
  require_matrix(b, "rescale_measure");
  RepresentingMatrix rep = representing_matrix(net, eta);
  if (!rep.a.same_shape(b))
    throw MatrixError("rescale_measure: matrix is " + std::to_string(b.rows) + "x" +
                      std::to_string(b.cols) + ", decomposition spans " +
                      std::to_string(rep.a.rows) + "x" + std::to_string(rep.a.cols));
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j)
      if (b.at(i, j) > 0 && rep.a.at(i, j) == 0 && policy == RescalePolicy::error_on_missing)
        throw MatrixError("rescale_measure: cell (" + std::to_string(i + 1) + "," +
                          std::to_string(j + 1) + ") wants mass " + rat_str(b.at(i, j)) +
                          " but the decomposition has no curves there");

  CurveMeasure out;
  for (const WeightedCurve& wc : eta.items) {
    int i = net.source.atom_index(curve_start(net, wc.curve));
    int j = net.target.atom_index(curve_end(net, wc.curve));
    assert(i >= 0 && j >= 0);
    if (b.at(i, j) == 0) continue;
    out.items.push_back({wc.curve, wc.weight * b.at(i, j) / rep.a.at(i, j)});
  }
  return out;
}

}
