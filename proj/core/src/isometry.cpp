#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "lensembed/lattice.hpp"

namespace lensembed {

namespace {

// Q(x) = Σ_i d_i (x_i + Σ_{j>i} mu_ij x_j)², the exact rational LDLᵀ
// form used to bound each coordinate given the ones after it.
struct QuadraticDecomposition {
  std::vector<Rational> d;
  std::vector<std::vector<Rational>> mu;
};

QuadraticDecomposition decompose(const IntMatrix& gram) {
  const std::size_t n = gram.rows();
  QuadraticDecomposition q{std::vector<Rational>(n), std::vector<std::vector<Rational>>(n, std::vector<Rational>(n))};
  for (std::size_t i = 0; i < n; ++i) {
    Rational di = Rational(gram(i, i));
    for (std::size_t k = 0; k < i; ++k) di -= q.d[k] * q.mu[k][i] * q.mu[k][i];
    if (di <= 0) throw InvalidInput("short-vector enumeration needs a positive definite form");
    q.d[i] = di;
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational v = Rational(gram(i, j));
      for (std::size_t k = 0; k < i; ++k) v -= q.d[k] * q.mu[k][i] * q.mu[k][j];
      q.mu[i][j] = v / di;
    }
  }
  return q;
}

Integer form_value(const IntMatrix& gram, const std::vector<Integer>& x) {
  Integer total = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < x.size(); ++j) row += gram(i, j) * x[j];
    total += x[i] * row;
  }
  return total;
}

}  // namespace

std::vector<std::vector<Integer>> vectors_of_norm(const IntMatrix& gram, const Integer& norm) {
  const std::size_t n = gram.rows();
  std::vector<std::vector<Integer>> found;
  if (norm < 0) return found;
  if (n == 0) {
    if (norm == 0) found.emplace_back();
    return found;
  }
  const QuadraticDecomposition q = decompose(gram);
  std::vector<Integer> x(n);

  // Coordinates are fixed from the last one down to the first.
  std::function<void(std::size_t, const Rational&)> descend = [&](std::size_t level,
                                                                 const Rational& budget) {
    const std::size_t i = level - 1;
    Rational center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center -= q.mu[i][j] * Rational(x[j]);
    const Rational radius_sq = budget / q.d[i];
    const Integer slack = isqrt(floor_of(radius_sq)) + 1;
    const Integer lo = floor_of(center) - slack;
    const Integer hi = ceil_of(center) + slack;
    for (Integer v = lo; v <= hi; ++v) {
      const Rational offset = Rational(v) - center;
      const Rational used = q.d[i] * offset * offset;
      if (used > budget) continue;
      x[i] = v;
      if (i == 0) {
        if (form_value(gram, x) == norm) found.push_back(x);
      } else {
        descend(i, budget - used);
      }
    }
    x[i] = 0;
  };
  descend(n, Rational(norm));
  std::sort(found.begin(), found.end(), std::greater<>());
  return found;
}

std::optional<LatticeMap> is_isometric(const IntegralLattice& a, const IntegralLattice& b) {
  if (!a.is_positive_definite() || !b.is_positive_definite())
    throw InvalidInput("isometry test needs positive definite lattices");
  const std::size_t n = a.rank();
  if (b.rank() != n || determinant(a) != determinant(b)) return std::nullopt;

  // Basis vectors of `a` by decreasing norm, ties by index.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  struct Candidate {
    std::vector<Integer> v;
    std::vector<Integer> bv;  // b.gram() * v
  };
  std::map<Integer, std::vector<Candidate>> by_norm;
  for (std::size_t i = 0; i < n; ++i) {
    if (by_norm.contains(a(i, i))) continue;
    auto& list = by_norm[a(i, i)];
    for (auto& v : vectors_of_norm(b.gram(), a(i, i))) {
      std::vector<Integer> bv(n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) bv[r] += b(r, c) * v[c];
      list.push_back(Candidate{std::move(v), std::move(bv)});
    }
  }

  std::vector<const Candidate*> chosen(n, nullptr);
  std::function<bool(std::size_t)> place = [&](std::size_t t) {
    if (t == n) return true;
    const std::size_t i = order[t];
    for (const Candidate& cand : by_norm.at(a(i, i))) {
      bool ok = true;
      for (std::size_t s = 0; s < t && ok; ++s) {
        const std::size_t j = order[s];
        Integer pairing = 0;
        for (std::size_t r = 0; r < n; ++r) pairing += cand.v[r] * chosen[j]->bv[r];
        ok = (pairing == a(i, j));
      }
      if (!ok) continue;
      chosen[i] = &cand;
      if (place(t + 1)) return true;
    }
    chosen[i] = nullptr;
    return false;
  };
  if (!place(0)) return std::nullopt;

  IntMatrix p(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) p(r, c) = chosen[c]->v[r];
  LatticeMap map{a, b, std::move(p), true};
  const Integer det = bareiss_determinant(map.matrix);
  if ((det != 1 && det != -1) || !verify_morphism(map))
    throw std::logic_error("isometry search produced a non-unimodular map");
  return map;
}

}  // namespace lensembed
