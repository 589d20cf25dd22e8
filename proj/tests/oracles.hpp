#pragma once

// Brute-force reference computations used only by the tests. None of these
// call into the search or reduction code they are checked against.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "lensembed/integer.hpp"
#include "lensembed/matrix.hpp"

namespace lensembed::oracle {

using Vec = std::vector<long long>;
using Mat = std::vector<Vec>;  // row-major

/// a_1 - 1/(a_2 - 1/(...)) evaluated in exact rational arithmetic.
inline Rational continued_fraction_value(const std::vector<Integer>& coeffs) {
  Rational value = Rational(coeffs.back());
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) value = Rational(coeffs[i]) - 1 / value;
  return value;
}

/// Determinant by cofactor expansion along the first row.
inline Integer cofactor_determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t cc = 0, k = 0; cc < n; ++cc)
        if (cc != c) minor(r - 1, k++) = m(r, cc);
    total += (c % 2 == 0 ? 1 : -1) * m(0, c) * cofactor_determinant(minor);
  }
  return total;
}

/// Every vector in [-bound, bound]^n.
inline void for_each_box_vector(std::size_t n, long long bound,
                                const std::function<void(const Vec&)>& visit) {
  Vec v(n, -bound);
  while (true) {
    visit(v);
    std::size_t i = 0;
    while (i < n && v[i] == bound) v[i++] = -bound;
    if (i == n) return;
    ++v[i];
  }
}

inline long long dot(const Vec& a, const Vec& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Row-sign normalisation then descending row sort, written independently
/// of the library's canonical_form.
inline Mat canonicalize(const std::vector<Vec>& columns, std::size_t n) {
  Mat rows(n, Vec(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r = 0; r < n; ++r) rows[r][c] = columns[c][r];
  for (auto& row : rows) {
    for (long long x : row) {
      if (x == 0) continue;
      if (x < 0)
        for (auto& y : row) y = -y;
      break;
    }
  }
  std::sort(rows.begin(), rows.end(), std::greater<>());
  return rows;
}

/// All embeddings of the form `gram` (k×k) into Z^n up to signed
/// permutations, by testing every tuple of box vectors of the right norms.
inline std::set<Mat> naive_orbits(const Mat& gram, std::size_t n) {
  const std::size_t k = gram.size();
  long long bound = 0;
  for (std::size_t i = 0; i < k; ++i)
    while ((bound + 1) * (bound + 1) <= gram[i][i]) ++bound;
  std::vector<std::vector<Vec>> by_index(k);
  for_each_box_vector(n, bound, [&](const Vec& v) {
    const long long norm = dot(v, v);
    for (std::size_t i = 0; i < k; ++i)
      if (norm == gram[i][i]) by_index[i].push_back(v);
  });
  std::set<Mat> out;
  std::vector<Vec> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == k) {
      out.insert(canonicalize(chosen, n));
      return;
    }
    for (const Vec& v : by_index[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = dot(v, chosen[j]) == gram[i][j];
      if (!ok) continue;
      chosen.push_back(v);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return out;
}

/// gcd of all maximal minors of an n×k integer matrix (n >= k). It is 1
/// exactly when the columns span a saturated sublattice.
inline Integer maximal_minor_gcd(const IntMatrix& m) {
  const std::size_t n = m.rows();
  const std::size_t k = m.cols();
  Integer g = 0;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    IntMatrix minor(k, k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) minor(r, c) = m(pick[r], c);
    g = boost::multiprecision::gcd(g, cofactor_determinant(minor));
    if (g == 1) return g;
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) return g;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

/// Random square matrix with entries in [-bound, bound] and determinant ±1.
inline IntMatrix random_unimodular(std::size_t n, long long bound, std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> entry(-bound, bound);
  while (true) {
    IntMatrix p(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) p(r, c) = entry(rng);
    const Integer d = cofactor_determinant(p);
    if (d == 1 || d == -1) return p;
  }
}

/// Random positive definite Gram matrix of rank k with diagonal in
/// [1, max_diag] and small off-diagonal entries.
inline Mat random_definite_gram(std::size_t k, long long max_diag, std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> diag(1, max_diag);
  std::uniform_int_distribution<long long> off(-2, 2);
  while (true) {
    Mat g(k, Vec(k));
    for (std::size_t i = 0; i < k; ++i) {
      g[i][i] = diag(rng);
      for (std::size_t j = 0; j < i; ++j) g[i][j] = g[j][i] = off(rng);
    }
    IntMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = g[i][j];
    bool definite = true;
    for (std::size_t t = 1; t <= k && definite; ++t) {
      IntMatrix lead(t, t);
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) lead(i, j) = m(i, j);
      definite = cofactor_determinant(lead) > 0;
    }
    if (definite) return g;
  }
}

inline IntMatrix to_int_matrix(const Mat& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  return m;
}

inline Mat to_mat(const IntMatrix& m) {
  Mat rows(m.rows(), Vec(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = static_cast<long long>(m(r, c));
  return rows;
}

/// Strings of length 1..max_len with entries in [lo, hi].
inline std::vector<std::vector<long long>> all_strings(long long lo, long long hi,
                                                       std::size_t max_len) {
  std::vector<std::vector<long long>> out;
  for (std::size_t m = 1; m <= max_len; ++m) {
    std::vector<long long> d(m, lo);
    while (true) {
      out.push_back(d);
      std::size_t i = m;
      while (i > 0 && d[i - 1] == hi) d[--i] = lo;
      if (i == 0) break;
      ++d[i - 1];
    }
  }
  return out;
}

}  // namespace lensembed::oracle
