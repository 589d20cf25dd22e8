#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <thread>

namespace lensembed::cli {

namespace {

using Clock = std::chrono::steady_clock;

Outcome guarded(const std::string& command, json inputs,
                const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  auto fail = [&](int code, const std::string& kind, const std::string& message) {
    out.report = Report{command, inputs, json{{"error", kind}, {"message", message}}, {}, 0.0};
    out.exit_code = code;
  };
  try {
    out = body();
    out.report.command = command;
    out.report.inputs = inputs;
  } catch (const InvalidInput& e) {
    fail(kInvalidInput, "invalid input", e.what());
  } catch (const BudgetExhausted& e) {
    fail(kBudgetExhausted, "budget exhausted", e.what());
  } catch (const HypothesisViolation& e) {
    fail(kHypothesisViolation, "hypothesis violation", e.what());
  }
  out.report.timing_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return out;
}

json pq_inputs(const Integer& p, const Integer& q) {
  return json{{"p", integer_json(p)}, {"q", integer_json(q)}};
}

std::size_t minimal_rank_of(const CFString& s) {
  return static_cast<std::size_t>(to_int64(s.sum())) - s.length() + 1;
}

json fraction_json(const Fraction& f) {
  return json{{"p", integer_json(f.p())}, {"q", integer_json(f.q())}};
}

Outcome expansion_report(const Integer& p, const Integer& q, bool show_dual) {
  const LensSpaceData data = lens_build(p, q);
  Report r;
  r.result = json{{"coefficients", string_json(show_dual ? data.dual_string : data.string)},
                  {"string", string_json(data.string)},
                  {"fraction", fraction_json(data.fraction)},
                  {"dual_string", string_json(data.dual_string)},
                  {"dual_fraction", fraction_json(data.fraction.complement())},
                  {"m", data.m},
                  {"rank", data.lattice.rank()},
                  {"dual_rank", data.dual_lattice.rank()},
                  {"in_family", data.in_family}};
  r.checks.push_back({"eval(expand(p/q)) = p/q", eval(data.string) == data.fraction});
  r.checks.push_back({"eval(dual) = p/(p-q)", eval(data.dual_string) == data.fraction.complement()});
  r.checks.push_back({"dual(dual(s)) = s", dual(data.dual_string) == data.string});
  const bool point_rule_applies =
      data.m >= 2 && std::all_of(data.string.coeffs().begin(), data.string.coeffs().end(),
                                 [](const Integer& a) { return a >= 3; });
  if (point_rule_applies)
    r.checks.push_back({"point rule transcription agrees", point_rule_dual(data.string) == data.dual_string});
  return Outcome{r, r.all_pass() ? kOk : kCheckFailed};
}

struct CensusRow {
  json row;
  bool exhausted = false;
};

CensusRow census_row(const CFString& s, const SearchLimits& limits) {
  const Fraction f = eval(s);
  CensusRow out{json{{"string", to_string(s)},
                        {"p", integer_json(f.p())},
                        {"q", integer_json(f.q())},
                        {"m", s.length()}}};
  try {
    const IntegralLattice dual_lattice = chain_lattice(dual(s));
    const std::size_t expected = minimal_rank_of(s);
    const auto found = minimal_embedding_rank(dual_lattice, expected + 1, limits);
    if (!found) {
      out.row["min_n"] = nullptr;
      out.row["orbits"] = 0;
      out.row["complement_isometric"] = false;
      out.row["status"] = "no embedding up to cap";
      return out;
    }
    const auto orbits = merge_reversed_orbits(enumerate_embeddings(
        EmbedQuery{dual_lattice, diagonal_lattice(*found), EmbedMode::kListOrbits, limits}));
    const Complement c = orthogonal_complement(orbits.front().representative);
    out.row["min_n"] = *found;
    out.row["orbits"] = orbits.size();
    out.row["complement_isometric"] = is_isometric(chain_lattice(s), c.lattice).has_value();
    out.row["status"] = "ok";
  } catch (const BudgetExhausted&) {
    out.row["min_n"] = nullptr;
    out.row["orbits"] = nullptr;
    out.row["complement_isometric"] = nullptr;
    out.row["status"] = "budget exhausted";
    out.exhausted = true;
  }
  return out;
}

}  // namespace

std::vector<Check> check_suite(const CFString& s, const SearchLimits& limits) {
  std::vector<Check> checks;
  auto check = [&](const std::string& name, const std::function<bool()>& test) {
    bool pass = false;
    try {
      pass = test();
    } catch (const BudgetExhausted&) {
      throw;
    } catch (const std::exception&) {
      pass = false;
    }
    checks.push_back({name, pass});
  };

  const Fraction f = eval(s);
  const CFString sd = dual(s);
  const IntegralLattice lattice = chain_lattice(s);
  const IntegralLattice dual_lattice = chain_lattice(sd);
  const std::size_t n_min = minimal_rank_of(s);

  check("dual(dual(s)) = s and eval(dual(s)) = p/(p-q)",
        [&] { return dual(sd) == s && eval(sd) == f.complement(); });
  check("det of plumbing lattice = p", [&] {
    return determinant(lattice) == f.p() && chain_determinant(s) == f.p();
  });
  check("det of dual plumbing lattice = p", [&] { return determinant(dual_lattice) == f.p(); });
  check("m + rank(dual) = sum(a) - m + 1", [&] { return rank_accounting(s).consistent; });
  check("minimal embedding rank of dual = sum(a) - m + 1", [&] {
    return minimal_embedding_rank(dual_lattice, n_min + 1, limits) == n_min;
  });
  check("no embedding of dual into Id_{sum(a) - m}", [&] {
    return enumerate_embeddings(EmbedQuery{dual_lattice, diagonal_lattice(n_min - 1),
                                           EmbedMode::kListOrbits, limits})
        .empty();
  });

  std::vector<EmbeddingOrbit> orbits;
  check("unique embedding orbit at minimal rank", [&] {
    orbits = merge_reversed_orbits(enumerate_embeddings(
        EmbedQuery{dual_lattice, diagonal_lattice(n_min), EmbedMode::kListOrbits, limits}));
    return orbits.size() == 1;
  });
  check("explicit coordinate embedding lies in that orbit", [&] {
    const LatticeMap explicit_map = explicit_dual_embedding(s);
    return verify_morphism(explicit_map) && !orbits.empty() &&
           canonical_form(explicit_map).matrix == orbits.front().orbit_invariant;
  });
  check("orthogonal complement isometric to plumbing lattice", [&] {
    return !orbits.empty() &&
           is_isometric(lattice, orthogonal_complement(orbits.front().representative).lattice)
               .has_value();
  });
  check("explicit complement basis has Gram = plumbing lattice", [&] {
    const LatticeMap basis = explicit_dual_complement_basis(s);
    const LatticeMap embedding = explicit_dual_embedding(s);
    const bool orthogonal =
        (basis.matrix.transpose() * embedding.matrix) ==
        IntMatrix(basis.matrix.cols(), embedding.matrix.cols());
    return orthogonal && verify_morphism(basis);
  });
  check("complement in Id_{N+2} isometric to plumbing lattice + Id_2", [&] {
    if (orbits.empty()) return false;
    LatticeMap padded = orbits.front().representative;
    padded.matrix = padded.matrix.pad_rows(2);
    padded.target = diagonal_lattice(n_min + 2);
    return is_isometric(direct_sum(lattice, diagonal_lattice(2)),
                        orthogonal_complement(padded).lattice)
        .has_value();
  });
  check("obstructed at n = m", [&] {
    return obstruct(f.p(), f.q(), Integer(s.length()), true).kind == Verdict::kObstructed;
  });
  check("plumbing form passes the filling form check", [&] {
    const FillingFormReport report = filling_form_check(f.p(), f.q(), lattice, limits, true);
    return report.embeds && report.minimal_case && report.minimal_case->det_ok &&
           report.minimal_case->isometry.has_value();
  });
  return checks;
}

Outcome cmd_expand(const Integer& p, const Integer& q) {
  return guarded("expand", pq_inputs(p, q), [&] { return expansion_report(p, q, false); });
}

Outcome cmd_dual(const Integer& p, const Integer& q) {
  return guarded("dual", pq_inputs(p, q), [&] { return expansion_report(p, q, true); });
}

Outcome cmd_embed(const Integer& p, const Integer& q, std::size_t n, bool list,
                  const Options& opts) {
  json inputs = pq_inputs(p, q);
  inputs["n"] = n;
  inputs["list"] = list;
  return guarded("embed", inputs, [&] {
    const LensSpaceData data = lens_build(p, q);
    const EmbedResult result = run_embedding_search(
        EmbedQuery{data.dual_lattice, diagonal_lattice(n),
                   list ? EmbedMode::kListOrbits : EmbedMode::kCountOrbits, opts.limits});
    Report r;
    r.result = json{{"source_string", string_json(data.dual_string)},
                    {"source_rank", data.dual_lattice.rank()},
                    {"orbit_count", result.orbits.size()},
                    {"nodes", result.nodes}};
    if (list) {
      json reps = json::array();
      for (const auto& o : result.orbits) reps.push_back(matrix_json(o.representative.matrix));
      r.result["representatives"] = reps;
    }
    bool sound = true;
    for (const auto& o : result.orbits) sound = sound && verify_morphism(o.representative);
    r.checks.push_back({"every representative is an embedding", sound});
    return Outcome{r, r.all_pass() ? kOk : kCheckFailed};
  });
}

Outcome cmd_obstruct(const Integer& p, const Integer& q, const Integer& n, const Options& opts) {
  json inputs = pq_inputs(p, q);
  inputs["n"] = integer_json(n);
  return guarded("obstruct", inputs, [&] {
    const ObstructionVerdict v = obstruct(p, q, n, opts.research);
    Report r;
    r.result = json{{"verdict", v.kind == Verdict::kObstructed ? "Obstructed" : "Inconclusive"},
                    {"m", v.m},
                    {"detail", v.detail}};
    return Outcome{r, kOk};
  });
}

Outcome cmd_complement(const Integer& p, const Integer& q, std::size_t n, const Options& opts) {
  json inputs = pq_inputs(p, q);
  inputs["n"] = n;
  return guarded("complement", inputs, [&]() -> Outcome {
    const LensSpaceData data = lens_build(p, q);
    Report r;
    if (data.in_family || !opts.research) {
      const IntegralLattice decomposition = complement_decomposition(data.string, n, opts.limits);
      r.result = json{{"gram", gram_json(decomposition)},
                      {"plumbing_rank", data.m},
                      {"identity_rank", n - minimal_rank_of(data.string)}};
      r.checks.push_back({"complement isometric to plumbing lattice + identity", true});
      return Outcome{r, kOk};
    }
    // Research mode outside the family: report every orbit's complement.
    const auto orbits = enumerate_embeddings(
        EmbedQuery{data.dual_lattice, diagonal_lattice(n), EmbedMode::kListOrbits, opts.limits});
    json rows = json::array();
    for (const auto& o : orbits) {
      const Complement c = orthogonal_complement(o.representative);
      bool iso = false;
      if (n + 1 >= minimal_rank_of(data.string) && c.lattice.rank() >= data.m) {
        iso = is_isometric(direct_sum(data.lattice, diagonal_lattice(c.lattice.rank() - data.m)),
                           c.lattice)
                  .has_value();
      }
      rows.push_back(json{{"gram", gram_json(c.lattice)}, {"isometric_to_plumbing_sum", iso}});
    }
    r.result = json{{"note", "out-of-family: theorems not asserted"},
                    {"orbit_count", orbits.size()},
                    {"complements", rows}};
    return Outcome{r, kOk};
  });
}

Outcome cmd_verify(const Integer& p, const Integer& q, const Options& opts) {
  return guarded("verify", pq_inputs(p, q), [&] {
    const LensSpaceData data = lens_build(p, q);
    if (!data.in_family && !opts.research)
      throw HypothesisViolation("verify requires a_i >= 6 for all i; got " + to_string(data.string));
    Report r;
    r.result = json{{"string", string_json(data.string)},
                    {"dual_string", string_json(data.dual_string)},
                    {"m", data.m},
                    {"minimal_rank", minimal_rank_of(data.string)}};
    if (!data.in_family) r.result["note"] = "out-of-family: theorems not asserted";
    r.checks = check_suite(data.string, opts.limits);
    return Outcome{r, r.all_pass() ? kOk : kCheckFailed};
  });
}

Outcome cmd_census(long long a_min, long long a_max, std::size_t m_max, const Options& opts) {
  json inputs{{"a_min", a_min}, {"a_max", a_max}, {"m_max", m_max}};
  return guarded("census", inputs, [&] {
    if (a_min < 2 || a_max < a_min) throw InvalidInput("need 2 <= a_min <= a_max");
    if (a_min < 6 && !opts.research)
      throw HypothesisViolation("census requires a_i >= 6 for all i; got a_min = " +
                                std::to_string(a_min));
    std::vector<CFString> strings;
    for (std::size_t m = 1; m <= m_max; ++m) {
      std::vector<long long> digits(m, a_min);
      while (true) {
        strings.emplace_back(std::vector<Integer>(digits.begin(), digits.end()));
        std::size_t i = m;
        while (i > 0 && digits[i - 1] == a_max) digits[--i] = a_min;
        if (i == 0) break;
        ++digits[i - 1];
      }
    }
    std::sort(strings.begin(), strings.end(), [](const CFString& a, const CFString& b) {
      return a.length() != b.length() ? a.length() < b.length() : a < b;
    });

    std::vector<CensusRow> rows(strings.size());
    SearchLimits row_limits = opts.limits;
    row_limits.threads = 1;
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i = next++; i < strings.size(); i = next++)
        rows[i] = census_row(strings[i], row_limits);
    };
    const unsigned threads = std::max(1u, opts.limits.threads);
    if (threads == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }

    Report r;
    json table = json::array();
    bool exhausted = false;
    for (const auto& row : rows) {
      table.push_back(row.row);
      exhausted = exhausted || row.exhausted;
    }
    r.result = json{{"rows", table}};
    if (opts.research && a_min < 6) r.result["note"] = "out-of-family: theorems not asserted";
    return Outcome{r, exhausted ? kBudgetExhausted : kOk};
  });
}

}  // namespace lensembed::cli
