#include <tuple>
#include <utility>

#include "lensembed/lattice.hpp"

namespace lensembed {

namespace {

void swap_columns(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// Replaces columns (a, b) by (x*a + y*b, u*a + v*b), with xv - yu = ±1.
void combine_columns(IntMatrix& m, std::size_t a, std::size_t b, const Integer& x,
                     const Integer& y, const Integer& u, const Integer& v) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer ca = m(r, a);
    Integer cb = m(r, b);
    m(r, a) = x * ca + y * cb;
    m(r, b) = u * ca + v * cb;
  }
}

// Extended gcd: returns (g, x, y) with x*a + y*b = g >= 0.
std::tuple<Integer, Integer, Integer> extended_gcd(Integer a, Integer b) {
  Integer x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Integer q = a / b;
    Integer r = a - q * b;
    a = std::move(b);
    b = std::move(r);
    Integer nx = x0 - q * x1;
    Integer ny = y0 - q * y1;
    x0 = std::move(x1);
    y0 = std::move(y1);
    x1 = std::move(nx);
    y1 = std::move(ny);
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

Integer round_div(const Integer& num, const Integer& den) {
  // nearest integer to num/den, den > 0
  Integer twice = 2 * num + den;
  Integer q = twice / (2 * den);
  if (twice % (2 * den) != 0 && twice < 0) --q;
  return q;
}

// Lowers diagonal entries of the Gram matrix by repeated b_i -= r*b_j
// until no single such step decreases any norm.
void pairwise_reduce(IntMatrix& basis, const IntMatrix& form) {
  const std::size_t k = basis.cols();
  IntMatrix gram = congruence(basis, form);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j || gram(j, j) == 0) continue;
        Integer r = round_div(gram(i, j), gram(j, j));
        if (r == 0) continue;
        Integer new_norm = gram(i, i) - 2 * r * gram(i, j) + r * r * gram(j, j);
        if (new_norm >= gram(i, i)) continue;
        for (std::size_t row = 0; row < basis.rows(); ++row) basis(row, i) -= r * basis(row, j);
        // Row/column i of the Gram matrix change; j is untouched.
        for (std::size_t t = 0; t < k; ++t) {
          if (t == i) continue;
          gram(i, t) -= r * gram(j, t);
          gram(t, i) = gram(i, t);
        }
        gram(i, i) = new_norm;
        changed = true;
      }
    }
  }
}

}  // namespace

IntMatrix integer_kernel(const IntMatrix& c) {
  const std::size_t n = c.cols();
  IntMatrix a = c;
  IntMatrix u = IntMatrix::identity(n);
  std::size_t pivot_col = 0;
  for (std::size_t row = 0; row < a.rows() && pivot_col < n; ++row) {
    // Fold every entry right of the pivot into the pivot column.
    for (std::size_t col = pivot_col + 1; col < n; ++col) {
      if (a(row, col) == 0) continue;
      if (a(row, pivot_col) == 0) {
        swap_columns(a, pivot_col, col);
        swap_columns(u, pivot_col, col);
        continue;
      }
      const Integer p = a(row, pivot_col);
      const Integer q = a(row, col);
      auto [g, x, y] = extended_gcd(p, q);
      // [x  -q/g; y  p/g] has determinant 1.
      const Integer qg = q / g;
      const Integer pg = p / g;
      combine_columns(a, pivot_col, col, x, y, -qg, pg);
      combine_columns(u, pivot_col, col, x, y, -qg, pg);
    }
    if (a(row, pivot_col) != 0) ++pivot_col;
  }
  return u.column_slice(pivot_col, n - pivot_col);
}

Complement orthogonal_complement(const LatticeMap& f) {
  f.check_shape();
  if (!f.target.is_positive_definite())
    throw InvalidInput("orthogonal complement needs a positive definite target");
  LatticeMap checked = f;
  checked.embedding = true;
  if (!verify_morphism(checked)) throw InvalidInput("map is not a lattice embedding");

  // x is orthogonal to the image iff (G·M)ᵀ x = 0.
  const IntMatrix constraints = (f.target.gram() * f.matrix).transpose();
  IntMatrix basis = integer_kernel(constraints);
  pairwise_reduce(basis, f.target.gram());

  IntegralLattice lattice(congruence(basis, f.target.gram()));
  Complement out{LatticeMap{lattice, f.target, std::move(basis), true}, lattice};
  return out;
}

}  // namespace lensembed
