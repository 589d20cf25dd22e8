#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lensembed/lattice.hpp"

namespace lensembed {

enum class EmbedMode { kCountOrbits, kListOrbits, kExists };

struct SearchLimits {
  /// Maximum number of coordinate/candidate assignments tried.
  std::uint64_t node_budget = 500'000'000;
  std::optional<std::chrono::milliseconds> time_budget;
  /// Worker threads; 1 runs everything on the calling thread.
  unsigned threads = 1;
};

struct EmbedQuery {
  IntegralLattice source;
  IntegralLattice target;
  EmbedMode mode = EmbedMode::kListOrbits;
  SearchLimits limits;
};

/// One class of embeddings. For identity targets the class is the orbit
/// under signed coordinate permutations and `representative` is its
/// canonical form; for other targets each embedding is its own class.
struct EmbeddingOrbit {
  LatticeMap representative;
  IntMatrix orbit_invariant;
};

struct EmbedResult {
  std::vector<EmbeddingOrbit> orbits;
  std::uint64_t nodes = 0;
  /// True when the target was (Z^N, Id) and orbits are quotiented by its
  /// signed permutation group.
  bool quotiented = false;
};

/// Complete, duplicate-free, deterministically ordered list of embedding
/// classes of `q.source` into `q.target`. In kExists mode the search stops
/// at the first class found. Throws BudgetExhausted when the limits are hit
/// before the search completes.
EmbedResult run_embedding_search(const EmbedQuery& q);

inline std::vector<EmbeddingOrbit> enumerate_embeddings(const EmbedQuery& q) {
  return run_embedding_search(q).orbits;
}

/// Smallest N <= cap such that `lattice` embeds in (Z^N, Id), or nullopt.
std::optional<std::size_t> minimal_embedding_rank(const IntegralLattice& lattice,
                                                  std::size_t cap,
                                                  const SearchLimits& limits = {});

/// Orbit representative under signed permutations of target coordinates:
/// each row is negated if its first nonzero entry is negative, then rows
/// are sorted in descending lexicographic order. Requires an identity target.
LatticeMap canonical_form(const LatticeMap& f);

/// Merges orbits related by reversing the order of the source basis, when
/// that reversal is an automorphism of the source form. Other orbit lists
/// are returned unchanged. Requires identity targets.
std::vector<EmbeddingOrbit> merge_reversed_orbits(const std::vector<EmbeddingOrbit>& orbits);

}  // namespace lensembed
