#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lensembed/contfrac.hpp"
#include "lensembed/integer.hpp"
#include "lensembed/matrix.hpp"

namespace lensembed {

/// A free abelian group of finite rank with a symmetric integer form,
/// stored as the Gram matrix of a fixed basis.
class IntegralLattice {
 public:
  IntegralLattice() = default;
  /// Throws InvalidInput unless `gram` is square and symmetric.
  explicit IntegralLattice(IntMatrix gram);

  /// As above, and additionally checks that every leading principal minor
  /// is positive.
  static IntegralLattice positive_definite(IntMatrix gram);

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return gram_(i, j); }

  bool is_positive_definite() const;
  /// Gram equal to the identity.
  bool is_diagonal_unimodular() const;

  friend bool operator==(const IntegralLattice&, const IntegralLattice&) = default;

 private:
  IntMatrix gram_;
};

/// A homomorphism between lattices; column j of `matrix` is the image of
/// source basis vector j in target coordinates.
struct LatticeMap {
  IntegralLattice source;
  IntegralLattice target;
  IntMatrix matrix;
  bool embedding = false;

  /// Throws InvalidInput when matrix is not target.rank × source.rank.
  void check_shape() const;
};

/// Tridiagonal Gram of a linear plumbing: a_i on the diagonal, 1 between
/// consecutive vertices.
IntegralLattice chain_lattice(const CFString& s);

Integer determinant(const IntegralLattice& lattice);

/// Determinant of chain_lattice(s) by the recurrence d_k = a_k d_{k-1} - d_{k-2}.
Integer chain_determinant(const CFString& s);

IntegralLattice diagonal_lattice(std::size_t n);

IntegralLattice direct_sum(const IntegralLattice& a, const IntegralLattice& b);

/// True iff matrixᵀ·target·matrix equals the source form, and, when the map
/// is flagged as an embedding, the matrix has full column rank.
bool verify_morphism(const LatticeMap& f);

struct Complement {
  /// Source is the complement lattice; columns are its basis in target
  /// coordinates.
  LatticeMap basis;
  IntegralLattice lattice;
};

/// Integral basis of {x in target : x·f(y) = 0 for all y}. The basis is
/// primitive (saturated) and pairwise size-reduced under the target form.
Complement orthogonal_complement(const LatticeMap& f);

/// Saturated integer basis (as columns) of the right kernel {x : c·x = 0}.
IntMatrix integer_kernel(const IntMatrix& c);

/// Vectors x with xᵀ·gram·x == norm, sorted in descending lexicographic
/// order. `gram` must be positive definite.
std::vector<std::vector<Integer>> vectors_of_norm(const IntMatrix& gram, const Integer& norm);

/// A unimodular P with Pᵀ·B·P = A if A and B are isometric. Source of the
/// returned map is A, target is B. Intended for ranks up to about 12.
std::optional<LatticeMap> is_isometric(const IntegralLattice& a, const IntegralLattice& b);

}  // namespace lensembed
