#include "lensembed/embedder.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace lensembed {

namespace {

using Clock = std::chrono::steady_clock;
using Row = std::vector<std::vector<Integer>>;

constexpr std::uint64_t kFlushInterval = 1024;
// Keeps every product formed by the coordinate search inside int64.
constexpr std::int64_t kMaxEntry = std::int64_t{1} << 30;

// Budget and stop flag shared by all workers of one search.
class SharedSearchState {
 public:
  explicit SharedSearchState(const SearchLimits& limits) : limit_(limits.node_budget) {
    if (limits.time_budget) deadline_ = Clock::now() + *limits.time_budget;
  }

  void charge(std::uint64_t nodes) {
    const std::uint64_t total = used_.fetch_add(nodes, std::memory_order_relaxed) + nodes;
    if (total > limit_ || (deadline_ && Clock::now() > *deadline_))
      exhausted_.store(true, std::memory_order_relaxed);
  }
  bool exhausted() const { return exhausted_.load(std::memory_order_relaxed); }
  void request_stop() { stop_.store(true, std::memory_order_relaxed); }
  bool halted() const { return exhausted() || stop_.load(std::memory_order_relaxed); }
  std::uint64_t used() const { return used_.load(); }

 private:
  std::uint64_t limit_;
  std::optional<Clock::time_point> deadline_;
  std::atomic<std::uint64_t> used_{0};
  std::atomic<bool> exhausted_{false};
  std::atomic<bool> stop_{false};
};

// Per-worker node counter, flushed to the shared state in batches.
class NodeCounter {
 public:
  explicit NodeCounter(SharedSearchState& shared) : shared_(shared) {}
  ~NodeCounter() { flush(); }
  void tick() {
    if (++pending_ == kFlushInterval) flush();
  }
  void flush() {
    if (pending_) shared_.charge(pending_);
    pending_ = 0;
  }

 private:
  SharedSearchState& shared_;
  std::uint64_t pending_ = 0;
};

// Runs task(i) for i in [0, count) on up to `threads` workers.
void run_tasks(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  for (auto& t : pool) t.join();
}

std::int64_t isqrt64(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// Embeddings into (Z^n, Id) generated directly in canonical form: rows of
// the n×k image matrix are kept in descending lexicographic order and each
// row's first nonzero entry is positive. Columns are filled one at a time,
// row by row, with Cauchy–Schwarz pruning of the outstanding pairings.
class DiagonalSearch {
 public:
  using Column = std::vector<std::int64_t>;

  DiagonalSearch(const std::vector<std::int64_t>& gram, std::size_t k, std::size_t n,
                 SharedSearchState& shared, bool stop_at_first)
      : gram_(gram), k_(k), n_(n), shared_(shared), counter_(shared),
        stop_at_first_(stop_at_first), cols_(k, Column(n, 0)),
        suffix_(k, Column(n + 1, 0)), residual_(k, Column(k, 0)),
        tied_(k + 1, std::vector<char>(n, 0)), zero_(k + 1, std::vector<char>(n, 1)) {
    for (std::size_t r = 1; r < n_; ++r) tied_[0][r] = 1;
  }

  /// All admissible first columns.
  std::vector<Column> first_columns() {
    collecting_first_ = true;
    start_column(0);
    collecting_first_ = false;
    counter_.flush();
    return std::move(first_);
  }

  /// Completes every embedding whose first column is `first`.
  void extend_from(const Column& first) {
    cols_[0] = first;
    finish_column(0);
    counter_.flush();
  }

  std::vector<Column>& solutions() { return solutions_; }

 private:
  std::int64_t g(std::size_t i, std::size_t j) const { return gram_[i * k_ + j]; }

  void start_column(std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) residual_[j][i] = g(i, j);
    fill(j, 0, g(j, j));
  }

  void fill(std::size_t j, std::size_t r, std::int64_t remaining) {
    if (shared_.halted()) return;
    Column& col = cols_[j];
    Column& res = residual_[j];
    if (remaining == 0) {
      // Only zeros can follow; a tied row may not rise above a negative predecessor.
      for (std::size_t i = 0; i < j; ++i)
        if (res[i] != 0) return;
      if (r < n_ && tied_[j][r] && col[r - 1] < 0) return;
      std::fill(col.begin() + static_cast<std::ptrdiff_t>(r), col.end(), 0);
      counter_.tick();
      finish_column(j);
      return;
    }
    if (r == n_) return;

    const std::int64_t cap =
        tied_[j][r] ? col[r - 1] : std::numeric_limits<std::int64_t>::max();
    const bool nonnegative = zero_[j][r];
    const std::int64_t bound = isqrt64(remaining);
    for (std::int64_t mag = 0; mag <= bound; ++mag) {
      for (int sign : {1, -1}) {
        if (mag == 0 && sign < 0) continue;
        const std::int64_t v = sign * mag;
        if (v > cap || (v < 0 && nonnegative)) continue;
        counter_.tick();
        const std::int64_t rest = remaining - v * v;
        bool feasible = true;
        for (std::size_t i = 0; i < j; ++i) {
          res[i] -= v * cols_[i][r];
          const std::int64_t tail = suffix_[i][r + 1];
          if (res[i] * res[i] > rest * tail)
            feasible = false;
        }
        col[r] = v;
        if (feasible) fill(j, r + 1, rest);
        for (std::size_t i = 0; i < j; ++i) res[i] += v * cols_[i][r];
        if (shared_.halted()) {
          col[r] = 0;
          return;
        }
      }
    }
    col[r] = 0;
  }

  void finish_column(std::size_t j) {
    if (collecting_first_) {
      first_.push_back(cols_[0]);
      return;
    }
    const Column& col = cols_[j];
    for (std::size_t r = n_; r-- > 0;) suffix_[j][r] = suffix_[j][r + 1] + col[r] * col[r];
    for (std::size_t r = 0; r < n_; ++r) {
      tied_[j + 1][r] = r > 0 && tied_[j][r] && col[r] == col[r - 1];
      zero_[j + 1][r] = zero_[j][r] && col[r] == 0;
    }
    if (j + 1 == k_) {
      Column flat;
      flat.reserve(n_ * k_);
      for (const auto& c : cols_) flat.insert(flat.end(), c.begin(), c.end());
      solutions_.push_back(std::move(flat));
      if (stop_at_first_) shared_.request_stop();
      return;
    }
    start_column(j + 1);
  }

  const std::vector<std::int64_t>& gram_;
  std::size_t k_;
  std::size_t n_;
  SharedSearchState& shared_;
  NodeCounter counter_;
  bool stop_at_first_;
  bool collecting_first_ = false;

  std::vector<Column> cols_;
  std::vector<Column> suffix_;    // suffix_[i][r] = Σ_{t>=r} cols_[i][t]²
  std::vector<Column> residual_;  // residual_[j][i]: pairing still owed by column j to i
  std::vector<std::vector<char>> tied_;  // row r has the same prefix as row r-1
  std::vector<std::vector<char>> zero_;  // row r has an all-zero prefix
  std::vector<Column> first_;
  std::vector<Column> solutions_;
};

IntMatrix matrix_from_columns(const std::vector<std::int64_t>& flat, std::size_t n,
                              std::size_t k) {
  IntMatrix m(n, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < n; ++r) m(r, c) = flat[c * n + r];
  return m;
}

std::vector<IntMatrix> search_diagonal(const EmbedQuery& q, SharedSearchState& shared) {
  const std::size_t k = q.source.rank();
  const std::size_t n = q.target.rank();
  std::vector<std::int64_t> gram(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      gram[i * k + j] = to_int64(q.source(i, j));
      if (gram[i * k + j] > kMaxEntry || gram[i * k + j] < -kMaxEntry)
        throw InvalidInput("source Gram entry too large for the coordinate search");
    }
  if (k == 0) return {IntMatrix(n, 0)};
  const bool stop_at_first = q.mode == EmbedMode::kExists;

  DiagonalSearch root(gram, k, n, shared, stop_at_first);
  const auto firsts = root.first_columns();

  std::vector<std::vector<DiagonalSearch::Column>> per_task(firsts.size());
  run_tasks(firsts.size(), q.limits.threads, [&](std::size_t t) {
    if (shared.halted()) return;
    DiagonalSearch worker(gram, k, n, shared, stop_at_first);
    worker.extend_from(firsts[t]);
    per_task[t] = std::move(worker.solutions());
  });

  std::vector<IntMatrix> out;
  for (auto& list : per_task)
    for (auto& flat : list) out.push_back(matrix_from_columns(flat, n, k));
  return out;
}

// Raw embeddings into an arbitrary positive definite target: images are
// drawn from the exact list of target vectors of each required norm.
std::vector<IntMatrix> search_general(const EmbedQuery& q, SharedSearchState& shared) {
  const std::size_t k = q.source.rank();
  const std::size_t n = q.target.rank();
  const IntMatrix& tg = q.target.gram();

  struct Candidate {
    std::vector<Integer> v;
    std::vector<Integer> gv;
  };
  std::vector<std::vector<Candidate>> candidates(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (auto& v : vectors_of_norm(tg, q.source(i, i))) {
      std::vector<Integer> gv(n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) gv[r] += tg(r, c) * v[c];
      candidates[i].push_back(Candidate{std::move(v), std::move(gv)});
    }
  }
  if (k == 0) return {IntMatrix(n, 0)};
  const bool stop_at_first = q.mode == EmbedMode::kExists;

  std::vector<std::vector<IntMatrix>> per_task(candidates[0].size());
  run_tasks(candidates[0].size(), q.limits.threads, [&](std::size_t t) {
    NodeCounter counter(shared);
    std::vector<const Candidate*> chosen(k, nullptr);
    chosen[0] = &candidates[0][t];
    counter.tick();
    std::function<void(std::size_t)> place = [&](std::size_t i) {
      if (shared.halted()) return;
      if (i == k) {
        IntMatrix m(n, k);
        for (std::size_t c = 0; c < k; ++c)
          for (std::size_t r = 0; r < n; ++r) m(r, c) = chosen[c]->v[r];
        per_task[t].push_back(std::move(m));
        if (stop_at_first) shared.request_stop();
        return;
      }
      for (const Candidate& cand : candidates[i]) {
        counter.tick();
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j) {
          Integer pairing = 0;
          for (std::size_t r = 0; r < n; ++r) pairing += cand.v[r] * chosen[j]->gv[r];
          ok = pairing == q.source(i, j);
        }
        if (!ok) continue;
        chosen[i] = &cand;
        place(i + 1);
        if (shared.halted()) return;
      }
    };
    place(1);
  });

  std::vector<IntMatrix> out;
  for (auto& list : per_task)
    for (auto& m : list) out.push_back(std::move(m));
  return out;
}

}  // namespace

LatticeMap canonical_form(const LatticeMap& f) {
  f.check_shape();
  if (!f.target.is_diagonal_unimodular())
    throw InvalidInput("canonical form is defined for identity targets only");
  Row rows = f.matrix.to_rows();
  for (auto& row : rows) {
    auto lead = std::find_if(row.begin(), row.end(), [](const Integer& v) { return v != 0; });
    if (lead != row.end() && *lead < 0)
      for (auto& v : row) v = -v;
  }
  std::sort(rows.begin(), rows.end(), std::greater<>());
  return LatticeMap{f.source, f.target, IntMatrix::from_rows(rows, f.matrix.cols()), f.embedding};
}

EmbedResult run_embedding_search(const EmbedQuery& q) {
  if (q.limits.node_budget == 0) throw InvalidInput("node budget must be positive");
  if (q.limits.time_budget && q.limits.time_budget->count() <= 0)
    throw InvalidInput("time budget must be positive");
  if (!q.source.is_positive_definite())
    throw InvalidInput("embedding search needs a positive definite source");
  if (!q.target.is_positive_definite())
    throw InvalidInput("embedding search needs a positive definite target");

  SharedSearchState shared(q.limits);
  EmbedResult result;
  result.quotiented = q.target.is_diagonal_unimodular();

  std::vector<IntMatrix> found;
  if (q.source.rank() <= q.target.rank())
    found = result.quotiented ? search_diagonal(q, shared) : search_general(q, shared);

  const bool satisfied = q.mode == EmbedMode::kExists && !found.empty();
  if (shared.exhausted() && !satisfied)
    throw BudgetExhausted("embedding search exhausted its budget after " +
                          std::to_string(shared.used()) + " nodes");
  result.nodes = shared.used();

  std::sort(found.begin(), found.end(), [](const IntMatrix& a, const IntMatrix& b) {
    return a.to_rows() > b.to_rows();
  });
  if (q.mode == EmbedMode::kExists && found.size() > 1) found.resize(1);
  for (auto& m : found) {
    LatticeMap map{q.source, q.target, m, true};
    result.orbits.push_back(EmbeddingOrbit{map, std::move(m)});
  }
  return result;
}

std::vector<EmbeddingOrbit> merge_reversed_orbits(const std::vector<EmbeddingOrbit>& orbits) {
  if (orbits.empty()) return {};
  const IntegralLattice& source = orbits.front().representative.source;
  const std::size_t k = source.rank();
  bool symmetric = true;
  for (std::size_t i = 0; i < k && symmetric; ++i)
    for (std::size_t j = 0; j < k && symmetric; ++j)
      symmetric = source(i, j) == source(k - 1 - i, k - 1 - j);
  if (!symmetric) return orbits;

  std::vector<EmbeddingOrbit> kept;
  for (const auto& orbit : orbits) {
    LatticeMap reversed = orbit.representative;
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t r = 0; r < reversed.matrix.rows(); ++r)
        reversed.matrix(r, c) = orbit.representative.matrix(r, k - 1 - c);
    const IntMatrix partner = canonical_form(reversed).matrix;
    const bool seen = std::any_of(kept.begin(), kept.end(), [&](const EmbeddingOrbit& o) {
      return o.orbit_invariant == partner;
    });
    if (!seen) kept.push_back(orbit);
  }
  return kept;
}

std::optional<std::size_t> minimal_embedding_rank(const IntegralLattice& lattice,
                                                  std::size_t cap,
                                                  const SearchLimits& limits) {
  if (cap < lattice.rank()) throw InvalidInput("cap is below the lattice rank");
  for (std::size_t n = lattice.rank(); n <= cap; ++n) {
    EmbedQuery q{lattice, diagonal_lattice(n), EmbedMode::kExists, limits};
    if (!run_embedding_search(q).orbits.empty()) return n;
  }
  return std::nullopt;
}

}  // namespace lensembed
