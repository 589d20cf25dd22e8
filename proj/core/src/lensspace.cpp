#include "lensembed/lensspace.hpp"

#include <sstream>
#include <stdexcept>

namespace lensembed {

namespace {

constexpr const char* kFamilyHypothesis = "requires a_i >= 6 for all i";

void require_family(const CFString& s, const char* what) {
  if (!in_family(s))
    throw HypothesisViolation(std::string(what) + " " + kFamilyHypothesis + "; got " +
                              to_string(s));
}

void require_at_least_three(const CFString& s) {
  for (const auto& a : s.coeffs())
    if (a < 3) throw InvalidInput("explicit construction needs every a_i >= 3, got " + to_string(s));
}

std::size_t as_size(const Integer& v) { return static_cast<std::size_t>(to_int64(v)); }

// Coordinates used by chain-of-2's block l (including its shared ends).
std::size_t block_width(const CFString& s, std::size_t l) {
  const std::size_t m = s.length();
  const std::size_t a = as_size(s[l]);
  if (m == 1) return a;
  return (l == 0 || l + 1 == m) ? a - 1 : a - 2;
}

}  // namespace

LensSpaceData lens_build(const Integer& p, const Integer& q) {
  const Fraction f(p, q);
  CFString s = expand(f);
  CFString sd = dual(s);
  LensSpaceData data{f, s, sd, s.length(), chain_lattice(s), chain_lattice(sd),
                     in_family(s)};

  if (eval(data.string) != f || eval(data.dual_string) != f.complement())
    throw std::logic_error("continued fraction round trip failed for " + p.str() + "/" + q.str());
  const Integer m(data.m);
  if (m + Integer(data.dual_lattice.rank()) != data.string.sum() - m + 1)
    throw std::logic_error("dual rank identity failed for " + to_string(s));
  if (determinant(data.lattice) != p || determinant(data.dual_lattice) != p)
    throw std::logic_error("plumbing determinant differs from p for " + to_string(s));
  return data;
}

ObstructionVerdict obstruct(const Integer& p, const Integer& q, const Integer& n, bool research) {
  if (n <= 0) throw InvalidInput("n must be positive");
  const LensSpaceData data = lens_build(p, q);
  std::ostringstream detail;
  if (!data.in_family) {
    if (!research) require_family(data.string, "obstruction");
    detail << "out-of-family: theorems not asserted (string " << data.string << ")";
    return {Verdict::kInconclusive, data.m, detail.str()};
  }
  if (n <= Integer(data.m)) {
    detail << "n = " << n << " <= m = " << data.m
           << ": no smooth embedding of L(" << p << "," << q << ") in #_n CP^2";
    return {Verdict::kObstructed, data.m, detail.str()};
  }
  detail << "n = " << n << " > m = " << data.m << ": the bound gives no information";
  return {Verdict::kInconclusive, data.m, detail.str()};
}

FillingFormReport filling_form_check(const Integer& p, const Integer& q,
                                     const IntegralLattice& form, const SearchLimits& limits,
                                     bool research) {
  const LensSpaceData data = lens_build(p, q);
  if (!data.in_family && !research) require_family(data.string, "filling form check");
  if (!form.is_positive_definite())
    throw InvalidInput("filling form must be positive definite");

  FillingFormReport report{form.rank(), false, std::nullopt};
  if (report.b2 < data.m) return report;

  const IntegralLattice target =
      direct_sum(data.lattice, diagonal_lattice(report.b2 - data.m));
  const auto found =
      enumerate_embeddings(EmbedQuery{form, target, EmbedMode::kExists, limits});
  report.embeds = !found.empty();

  if (report.b2 == data.m) {
    MinimalCase minimal{determinant(form) == p, std::nullopt};
    if (report.embeds && minimal.det_ok) {
      // Equal ranks and equal determinants: det(P)^2 = 1.
      const LatticeMap& map = found.front().representative;
      const Integer det = bareiss_determinant(map.matrix);
      if (det != 1 && det != -1)
        throw std::logic_error("equal-determinant embedding is not unimodular");
      minimal.isometry = map;
    }
    report.minimal_case = minimal;
  }
  return report;
}

std::vector<std::size_t> dual_block_starts(const CFString& s) {
  std::vector<std::size_t> starts{0};
  for (std::size_t l = 0; l + 1 < s.length(); ++l)
    starts.push_back(starts.back() + block_width(s, l) + 1);
  return starts;
}

LatticeMap explicit_dual_embedding(const CFString& s) {
  require_at_least_three(s);
  const std::size_t m = s.length();
  const std::size_t n = as_size(s.sum()) - m + 1;
  const auto starts = dual_block_starts(s);
  const IntegralLattice source = chain_lattice(dual(s));

  IntMatrix images(n, source.rank());
  std::size_t col = 0;
  for (std::size_t l = 0; l < m; ++l) {
    const std::size_t first = starts[l];
    const std::size_t last = first + block_width(s, l) - 1;
    for (std::size_t j = first; j < last; ++j, ++col) {
      images(j, col) = 1;
      images(j + 1, col) = 1;
    }
    if (l + 1 < m) {
      images(last, col) = 1;
      images(last + 1, col) = 1;  // fresh coordinate
      images(starts[l + 1], col) = 1;
      ++col;
    }
  }
  if (col != source.rank()) throw std::logic_error("explicit embedding column count mismatch");
  return LatticeMap{source, diagonal_lattice(n), std::move(images), true};
}

LatticeMap explicit_dual_complement_basis(const CFString& s) {
  require_at_least_three(s);
  const std::size_t m = s.length();
  const std::size_t n = as_size(s.sum()) - m + 1;
  const auto starts = dual_block_starts(s);

  IntMatrix basis(n, m);
  int sign = 1;
  for (std::size_t l = 0; l < m; ++l) {
    // From the fresh coordinate on the left through the one on the right.
    const std::size_t from = l == 0 ? 0 : starts[l] - 1;
    const std::size_t to = starts[l] + block_width(s, l) - (l + 1 == m ? 1 : 0);
    for (std::size_t j = from; j <= to; ++j) {
      basis(j, l) = sign;
      sign = -sign;
    }
    // The next vector starts on the shared fresh coordinate with the same sign.
    sign = -sign;
  }
  return LatticeMap{chain_lattice(s), diagonal_lattice(n), std::move(basis), true};
}

IntegralLattice complement_decomposition(const CFString& s, std::size_t n,
                                         const SearchLimits& limits) {
  require_family(s, "complement decomposition");
  const std::size_t m = s.length();
  const std::size_t minimal = as_size(s.sum()) - m + 1;
  if (n < minimal)
    throw InvalidInput("N = " + std::to_string(n) + " is below the minimal embedding rank " +
                       std::to_string(minimal));

  const IntegralLattice dual_lattice = chain_lattice(dual(s));
  const auto orbits = enumerate_embeddings(
      EmbedQuery{dual_lattice, diagonal_lattice(minimal), EmbedMode::kListOrbits, limits});
  if (orbits.empty()) throw std::logic_error("dual lattice has no embedding at the minimal rank");

  LatticeMap padded = orbits.front().representative;
  padded.matrix = padded.matrix.pad_rows(n - minimal);
  padded.target = diagonal_lattice(n);
  const Complement complement = orthogonal_complement(padded);

  IntegralLattice expected = direct_sum(chain_lattice(s), diagonal_lattice(n - minimal));
  if (!is_isometric(expected, complement.lattice))
    throw std::logic_error("complement of the dual embedding is not isometric to Q_{p,q} + Id");
  return expected;
}

RankAccounting rank_accounting(const CFString& s) {
  RankAccounting r;
  r.m = s.length();
  r.coefficient_sum = s.sum();
  const Integer m(r.m);
  r.dual_rank = r.coefficient_sum - 2 * m + 1;
  r.min_closed_rank = r.coefficient_sum - m + 1;
  r.b2_lower_bound = r.m;
  const Integer built_dual_rank(dual(s).length());
  r.consistent = built_dual_rank == r.dual_rank && m + built_dual_rank == r.min_closed_rank;
  return r;
}

}  // namespace lensembed
