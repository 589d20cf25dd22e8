#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "lensembed/contfrac.hpp"
#include "lensembed/embedder.hpp"
#include "lensembed/lattice.hpp"

namespace lensembed {

/// Everything derived from L(p,q): both plumbing strings and their lattices.
struct LensSpaceData {
  Fraction fraction;
  CFString string;       // expand(p/q)
  CFString dual_string;  // expand(p/(p-q))
  std::size_t m;
  IntegralLattice lattice;
  IntegralLattice dual_lattice;
  bool in_family;
};

/// Builds and eagerly checks the data of L(p,q).
LensSpaceData lens_build(const Integer& p, const Integer& q);

enum class Verdict { kObstructed, kInconclusive };

struct ObstructionVerdict {
  Verdict kind;
  std::size_t m;
  std::string detail;
};

/// Can L(p,q) embed smoothly in #_n CP²? Obstructed when n <= m.
/// Throws HypothesisViolation unless every a_i >= 6, except in research
/// mode, where out-of-family input yields an Inconclusive verdict stamped
/// accordingly.
ObstructionVerdict obstruct(const Integer& p, const Integer& q, const Integer& n,
                            bool research = false);

struct MinimalCase {
  bool det_ok;
  std::optional<LatticeMap> isometry;
};

struct FillingFormReport {
  std::size_t b2;
  bool embeds;
  std::optional<MinimalCase> minimal_case;

  /// True when the form cannot be the intersection form of a smooth
  /// positive definite filling: no embedding, or an equal-rank embedding
  /// whose determinant differs from p.
  bool obstructed() const {
    return !embeds || (minimal_case && !minimal_case->det_ok);
  }
};

/// Tests whether `form` can sit inside Q_{P(p,q)} ⊕ Id_{b2-m} as required of
/// the intersection form of a positive definite filling of L(p,q).
FillingFormReport filling_form_check(const Integer& p, const Integer& q,
                                     const IntegralLattice& form,
                                     const SearchLimits& limits = {}, bool research = false);

/// The coordinate embedding of chain_lattice(dual(s)) into Id_N,
/// N = Σa - m + 1: chains of 2's as consecutive e_j + e_{j+1} blocks, each
/// weight-3 vertex as (last coordinate of its left block) + (a fresh
/// coordinate) + (first coordinate of its right block). Needs every a_i >= 3.
LatticeMap explicit_dual_embedding(const CFString& s);

/// The m alternating vectors spanning the orthogonal complement of
/// explicit_dual_embedding(s), signed so their Gram matrix is exactly
/// chain_lattice(s).
LatticeMap explicit_dual_complement_basis(const CFString& s);

/// First coordinate (0-based) of each chain-of-2's block in the
/// explicit dual embedding. Fresh coordinates sit at block_start[l+1] - 1.
std::vector<std::size_t> dual_block_starts(const CFString& s);

/// Orthogonal complement of the (unique) embedding of the dual lattice into
/// Id_N, checked to be isometric to chain_lattice(s) ⊕ Id_{N-Σa+m-1}.
/// Returns that direct sum.
IntegralLattice complement_decomposition(const CFString& s, std::size_t n,
                                         const SearchLimits& limits = {});

struct RankAccounting {
  std::size_t m;
  Integer coefficient_sum;
  Integer dual_rank;          // Σa - 2m + 1
  Integer min_closed_rank;    // Σa - m + 1 = m + rank(dual)
  std::size_t b2_lower_bound; // m
  bool consistent;            // the identities hold against the built lattices
};

RankAccounting rank_accounting(const CFString& s);

}  // namespace lensembed
