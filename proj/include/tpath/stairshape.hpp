#ifndef TPATH_STAIRSHAPE_HPP
#define TPATH_STAIRSHAPE_HPP

#include "tpath/core.hpp"
#include "tpath/matrix.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace tpath {

struct MatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// monotone lattice path from the top-left to the bottom-right cell, 0-based,
// rows+cols-1 steps, each step moving down or right
struct StairProfile {
  std::vector<std::pair<int, int>> steps;
};

struct StairCheck {
  bool stair_shaped = false;
  StairProfile profile;               // filled when stair_shaped
  std::pair<int, int> violation{-1, -1};  // positive cell off every profile otherwise
};

StairCheck is_stair_shaped(const RatMatrix& a);

// northwest-corner walk: repeatedly place the smaller of the remaining row and
// column sums, then close that row (or column); ties close the row
RatMatrix stairify(const RatMatrix& a);

// same shape and equal row and column sums
bool congruent(const RatMatrix& a, const RatMatrix& b);

// adds amount at (i1,j1) and (i2,j2), removes it at (i1,j2) and (i2,j1)
struct ElementaryMove {
  int i1, j1, i2, j2;
  Rat amount;
};

RatMatrix apply_move(const RatMatrix& a, const ElementaryMove& mv);

// algebraic certificate b = a + sum of moves, all anchored at the last cell;
// intermediate matrices may dip negative, the result is exact
std::vector<ElementaryMove> congruence_moves(const RatMatrix& a, const RatMatrix& b);

// certificate whose every move has all four corners positive when applied and
// keeps entries nonnegative throughout; produced by replaying the blockwise
// walk, so it exists whenever b == blockwise_stairify(a); nullopt means
// "not verified", not "impossible"
std::optional<std::vector<ElementaryMove>> admissible_moves(const RatMatrix& a, const RatMatrix& b);

// all-positive rectangle, inclusive corners, 0-based
struct Block {
  int i1, j1, i2, j2;
  bool operator==(const Block& o) const = default;
};

// chain of all-positive rectangles starting at the top-left cell, consecutive
// blocks overlapping in at most one corner cell, zeros outside their union
std::optional<std::vector<Block>> detect_blocks(const RatMatrix& a);

// stairify each detected block in place, in order, so later blocks see the
// updated shared corner; throws MatrixError when no block structure exists
RatMatrix blockwise_stairify(const RatMatrix& a);

enum class RescalePolicy {
  error_on_missing,  // b positive where the decomposition has no curves -> error
  drop_missing,      // such mass is dropped; the result can fail verification
};

// reuse the curves of eta cell by cell, scaled so cell masses follow b
CurveMeasure rescale_measure(const TransportNetwork& net, const CurveMeasure& eta,
                             const RatMatrix& b,
                             RescalePolicy policy = RescalePolicy::error_on_missing);

}

#endif
