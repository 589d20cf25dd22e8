#include "lensembed/lattice.hpp"

#include <utility>

namespace lensembed {

namespace {

// Bareiss elimination without pivoting: after step k the pivot a(k,k) is
// the (k+1)-th leading principal minor.
bool leading_minors_positive(const IntMatrix& g) {
  const std::size_t n = g.rows();
  IntMatrix a = g;
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return true;
}

}  // namespace

IntegralLattice::IntegralLattice(IntMatrix gram) : gram_(std::move(gram)) {
  if (!gram_.square()) throw InvalidInput("Gram matrix is not square");
  if (!gram_.symmetric()) throw InvalidInput("Gram matrix is not symmetric");
}

IntegralLattice IntegralLattice::positive_definite(IntMatrix gram) {
  IntegralLattice l(std::move(gram));
  if (!l.is_positive_definite()) throw InvalidInput("Gram matrix is not positive definite");
  return l;
}

bool IntegralLattice::is_positive_definite() const { return leading_minors_positive(gram_); }

bool IntegralLattice::is_diagonal_unimodular() const {
  return gram_ == IntMatrix::identity(rank());
}

void LatticeMap::check_shape() const {
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank())
    throw InvalidInput("lattice map matrix is " + std::to_string(matrix.rows()) + "x" +
                       std::to_string(matrix.cols()) + ", expected " +
                       std::to_string(target.rank()) + "x" + std::to_string(source.rank()));
}

IntegralLattice chain_lattice(const CFString& s) {
  const std::size_t m = s.length();
  IntMatrix g(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    g(i, i) = s[i];
    if (i + 1 < m) g(i, i + 1) = g(i + 1, i) = 1;
  }
  return IntegralLattice(std::move(g));
}

namespace {

bool is_tridiagonal(const IntMatrix& g) {
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = r + 2; c < g.cols(); ++c)
      if (g(r, c) != 0) return false;
  return true;
}

// d_k = g_kk d_{k-1} - g_{k-1,k}^2 d_{k-2}
Integer tridiagonal_determinant(const IntMatrix& g) {
  Integer before = 1;
  Integer current = 1;
  for (std::size_t k = 0; k < g.rows(); ++k) {
    Integer next = g(k, k) * current;
    if (k > 0) next -= g(k - 1, k) * g(k - 1, k) * before;
    before = std::move(current);
    current = std::move(next);
  }
  return current;
}

}  // namespace

Integer determinant(const IntegralLattice& lattice) {
  const IntMatrix& g = lattice.gram();
  return is_tridiagonal(g) ? tridiagonal_determinant(g) : bareiss_determinant(g);
}

Integer chain_determinant(const CFString& s) {
  Integer before = 1;  // d_{-1}
  Integer current = s[0];
  for (std::size_t k = 1; k < s.length(); ++k) {
    Integer next = s[k] * current - before;
    before = std::move(current);
    current = std::move(next);
  }
  return current;
}

IntegralLattice diagonal_lattice(std::size_t n) {
  return IntegralLattice(IntMatrix::identity(n));
}

IntegralLattice direct_sum(const IntegralLattice& a, const IntegralLattice& b) {
  return IntegralLattice(block_diagonal(a.gram(), b.gram()));
}

bool verify_morphism(const LatticeMap& f) {
  f.check_shape();
  if (congruence(f.matrix, f.target.gram()) != f.source.gram()) return false;
  if (f.embedding && rank(f.matrix) != f.source.rank()) return false;
  return true;
}

}  // namespace lensembed
