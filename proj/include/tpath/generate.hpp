#ifndef TPATH_GENERATE_HPP
#define TPATH_GENERATE_HPP

#include "tpath/core.hpp"
#include "tpath/document.hpp"

#include <cstdint>
#include <vector>

namespace tpath {

// deterministic across platforms, so seeds are citable in bug reports
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  int range(int lo, int hi) { return lo + int(below(std::uint64_t(hi - lo + 1))); }
};

struct GenParams {
  std::uint64_t seed = 1;
  int sources = 2;
  int targets = 2;
  bool integer_masses = true;      // otherwise denominators from {2, 4}
  int max_mass = 12;               // source masses drawn from [1, max_mass]
  std::vector<int> mass_choices;   // when set, every atom mass comes from here
};

// random spanning tree over the atoms, junctions inserted by subdividing
// edges, edge weights and directions from the unique balancing flow; the
// result is always cycle-free and valid
TransportNetwork gen_network(const GenParams& params);

Document gen_document(const GenParams& params);

// superposes a small circulation: one edge gains weight eps and a reversed
// twin of weight eps appears; returns the closed chain riding on both
EdgeChain add_circulation(TransportNetwork& net, SplitMix64& rng);

}

#endif
