// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "lensembed/lensspace.hpp"
#include "oracles.hpp"

#ifndef LENSEMBED_CLI_PATH
#error "LENSEMBED_CLI_PATH must name the lensembed executable"
#endif

namespace {

using namespace lensembed;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok || !pass) {
      pass = pass && ok;
      return;
    }
    pass = false;
    detail = what;
  }
};

std::vector<CFString> family() {
  std::vector<CFString> out;
  for (const auto& d : oracle::all_strings(6, 8, 3)) out.emplace_back(std::vector<Integer>(d.begin(), d.end()));
  return out;
}

std::size_t min_rank(const CFString& s) {
  return static_cast<std::size_t>(s.sum()) - s.length() + 1;
}

std::string show(const CFString& s) { return to_string(s); }

template <typename F>
void for_each_fraction(long long max_p, F&& f) {
  for (long long p = 2; p <= max_p; ++p)
    for (long long q = 1; q < p; ++q)
      if (std::gcd(p, q) == 1) f(p, q);
}

Outcome continued_fractions() {
  Outcome out;
  for_each_fraction(500, [&](long long p, long long q) {
    const Fraction f(p, q);
    const CFString s = expand(f);
    const CFString d = dual(s);
    const std::string at = std::to_string(p) + "/" + std::to_string(q);
    out.require(eval(s) == f, "eval(expand) at " + at);
    out.require(dual(d) == s, "dual involution at " + at);
    out.require(eval(d) == Fraction(p, p - q), "eval(dual) at " + at);
    const bool point_rule = s.length() >= 2 &&
                            std::all_of(s.coeffs().begin(), s.coeffs().end(),
                                        [](const Integer& a) { return a >= 3; });
    if (point_rule) out.require(point_rule_dual(s) == expand(Fraction(p, p - q)), "point rule at " + at);
  });
  return out;
}

Outcome determinants() {
  Outcome out;
  for_each_fraction(500, [&](long long p, long long q) {
    const CFString s = expand(Fraction(p, q));
    const std::string at = std::to_string(p) + "/" + std::to_string(q);
    out.require(determinant(chain_lattice(s)) == p, "det at " + at);
    out.require(determinant(chain_lattice(dual(s))) == p, "dual det at " + at);
  });
  return out;
}

Outcome minimal_rank() {
  Outcome out;
  for (const CFString& s : family()) {
    const IntegralLattice l = chain_lattice(dual(s));
    const std::size_t n = min_rank(s);
    out.require(minimal_embedding_rank(l, n + 1) == n, "minimal rank for " + show(s));
    out.require(enumerate_embeddings(EmbedQuery{l, diagonal_lattice(n - 1), EmbedMode::kCountOrbits, {}})
                    .empty(),
                "orbits below minimal rank for " + show(s));
  }
  return out;
}

Outcome uniqueness() {
  Outcome out;
  for (const CFString& s : family()) {
    const IntegralLattice l = chain_lattice(dual(s));
    const auto orbits = merge_reversed_orbits(
        enumerate_embeddings(EmbedQuery{l, diagonal_lattice(min_rank(s)), EmbedMode::kListOrbits, {}}));
    out.require(orbits.size() == 1, "orbit count for " + show(s));
    if (orbits.size() != 1) continue;
    out.require(canonical_form(explicit_dual_embedding(s)).matrix == orbits[0].orbit_invariant,
                "explicit embedding class for " + show(s));
  }
  return out;
}

Outcome complements() {
  Outcome out;
  for (const CFString& s : family()) {
    const IntegralLattice l = chain_lattice(dual(s));
    const std::size_t n = min_rank(s);
    const auto orbits =
        enumerate_embeddings(EmbedQuery{l, diagonal_lattice(n), EmbedMode::kExists, {}});
    out.require(!orbits.empty(), "no embedding for " + show(s));
    if (orbits.empty()) continue;
    const LatticeMap& f = orbits[0].representative;
    out.require(is_isometric(chain_lattice(s), orthogonal_complement(f).lattice).has_value(),
                "complement isometry for " + show(s));
    out.require(explicit_dual_complement_basis(s).source.gram() == chain_lattice(s).gram(),
                "explicit complement Gram for " + show(s));
    const LatticeMap padded{f.source, diagonal_lattice(n + 2), f.matrix.pad_rows(2), true};
    out.require(is_isometric(direct_sum(chain_lattice(s), diagonal_lattice(2)),
                             orthogonal_complement(padded).lattice)
                    .has_value(),
                "complement at N+2 for " + show(s));
  }
  return out;
}

Outcome embedder_oracle() {
  Outcome out;
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 1 + trial % 3;
    const std::size_t n = k + (trial / 3) % (6 - k);
    const auto gram = oracle::random_definite_gram(k, 4, rng);
    const auto orbits = enumerate_embeddings(
        EmbedQuery{IntegralLattice(oracle::to_int_matrix(gram)), diagonal_lattice(n),
                   EmbedMode::kListOrbits, {}});
    std::set<oracle::Mat> found;
    for (const auto& o : orbits) found.insert(oracle::to_mat(o.orbit_invariant));
    std::ostringstream where;
    where << "trial " << trial << ": " << oracle::to_int_matrix(gram) << " in Id_" << n;
    out.require(found.size() == orbits.size() && found == oracle::naive_orbits(gram, n), where.str());
  }
  return out;
}

Outcome filling_forms() {
  Outcome out;
  std::mt19937_64 rng(1202);
  for (const CFString& s : family()) {
    const Fraction f = eval(s);
    const IntegralLattice l = chain_lattice(s);
    for (int trial = 0; trial < 20; ++trial) {
      const IntMatrix p = oracle::random_unimodular(s.length(), 3, rng);
      const FillingFormReport r = filling_form_check(f.p(), f.q(), IntegralLattice(congruence(p, l.gram())));
      const bool ok = r.embeds && r.minimal_case && r.minimal_case->det_ok &&
                      r.minimal_case->isometry && verify_morphism(*r.minimal_case->isometry);
      out.require(ok, "conjugate " + std::to_string(trial) + " of " + show(s));
    }
  }
  out.require(!filling_form_check(6, 1, diagonal_lattice(1)).embeds, "(6,1) with [[1]] embeds");
  return out;
}

struct Process {
  int status;
  std::string output;
};

Process run_cli(const std::string& args) {
  const std::string command = std::string(LENSEMBED_CLI_PATH) + " " + args + " 2>/dev/null";
  Process result{-1, {}};
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  std::array<char, 4096> buffer{};
  while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe))
    result.output.append(buffer.data(), got);
  const int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

Outcome cli_contract() {
  using cli::json;
  Outcome out;
  for (const char* pq : {"6 1", "35 6", "41 7"}) {
    const Process v = run_cli(std::string("verify ") + pq);
    out.require(v.status == 0, std::string("verify ") + pq + " exit " + std::to_string(v.status));
  }
  const Process o = run_cli("--json obstruct 35 6 --n 2");
  out.require(o.status == 0 && json::parse(o.output)["result"]["verdict"] == "Obstructed",
              "obstruct 35 6 --n 2");
  const Process e = run_cli("--json embed 6 1 --n 5");
  out.require(e.status == 0 && json::parse(e.output)["result"]["orbit_count"] == 0, "embed 6 1 --n 5");

  for (const char* args : {"--json verify 35 6", "--json embed 6 1 --n 6 --list", "--json expand 6 4"}) {
    const Process p = run_cli(args);
    const json printed = json::parse(p.output);
    const cli::Report parsed = printed.get<cli::Report>();
    out.require(json(parsed) == printed && json::parse(json(parsed).dump()).get<cli::Report>() == parsed,
                std::string("JSON round trip for ") + args);
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"continued fractions: round trip, involution, complement, point rule (p <= 500)", continued_fractions},
      {"chain determinants equal p for both strings (p <= 500)", determinants},
      {"minimal embedding rank is sum(a) - m + 1 for the 39 strings", minimal_rank},
      {"unique embedding class containing the explicit embedding", uniqueness},
      {"complement isometric to the plumbing lattice, explicit Gram exact, N + 2 case", complements},
      {"embedder agrees with naive enumeration on 50 random lattices", embedder_oracle},
      {"filling-form check on unimodular conjugates and (6,1) with [[1]]", filling_forms},
      {"CLI contract: verify, obstruct, embed, JSON round trip", cli_contract},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].name
              << " [" << seconds << " s]";
    if (!o.pass) std::cout << " -- " << o.detail;
    std::cout << std::endl;
    failed += o.pass ? 0 : 1;
  }
  return failed;
}
