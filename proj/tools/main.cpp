#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using lensembed::Integer;
using namespace lensembed::cli;

Integer parse_integer(const std::string& text) {
  try {
    return Integer(text);
  } catch (const std::exception&) {
    throw lensembed::InvalidInput("not an integer: '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice embedding obstructions for lens spaces L(p,q)"};
  app.require_subcommand(1);

  bool as_json = false;
  Options opts;
  std::uint64_t budget = opts.limits.node_budget;
  unsigned threads = 1;
  app.add_flag("--json", as_json, "Print the report as JSON");
  app.add_option("--budget", budget, "Search node budget")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--research", opts.research,
               "Run outside the a_i >= 6 family; theorems are not asserted");

  std::string p_text, q_text, n_text;
  std::size_t n = 0;
  bool list = false;
  auto add_pq = [&](CLI::App* sub) {
    sub->add_option("p", p_text, "p")->required();
    sub->add_option("q", q_text, "q")->required();
    sub->fallthrough();
  };

  auto* expand = app.add_subcommand("expand", "Continued fraction of p/q and its dual");
  add_pq(expand);
  auto* dual = app.add_subcommand("dual", "Dual string (expansion of p/(p-q))");
  add_pq(dual);
  auto* embed = app.add_subcommand("embed", "Embedding orbits of the dual lattice into Id_N");
  add_pq(embed);
  embed->add_option("--n", n, "Target rank N")->required();
  embed->add_flag("--list", list, "Print orbit representatives");
  auto* obstruct = app.add_subcommand("obstruct", "Can L(p,q) embed in #_n CP^2?");
  add_pq(obstruct);
  obstruct->add_option("--n", n_text, "Number of CP^2 summands")->required();
  auto* complement = app.add_subcommand("complement", "Orthogonal complement of the dual embedding");
  add_pq(complement);
  complement->add_option("--n", n, "Target rank N")->required();
  auto* verify = app.add_subcommand("verify", "Run every lattice check for one lens space");
  add_pq(verify);
  auto* census = app.add_subcommand("census", "Sweep strings with bounded coefficients");
  std::vector<long long> a_range;
  std::size_t m_max = 0;
  census->add_option("--a", a_range, "Coefficient range: min max")->expected(2)->required();
  census->add_option("--m", m_max, "Maximum string length")->required();
  census->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalidInput;
  }
  opts.limits.node_budget = budget;
  opts.limits.threads = threads;

  Outcome out;
  try {
    if (census->parsed()) {
      out = cmd_census(a_range[0], a_range[1], m_max, opts);
    } else {
      const Integer p = parse_integer(p_text);
      const Integer q = parse_integer(q_text);
      if (expand->parsed()) out = cmd_expand(p, q);
      else if (dual->parsed()) out = cmd_dual(p, q);
      else if (embed->parsed()) out = cmd_embed(p, q, n, list, opts);
      else if (obstruct->parsed()) out = cmd_obstruct(p, q, parse_integer(n_text), opts);
      else if (complement->parsed()) out = cmd_complement(p, q, n, opts);
      else out = cmd_verify(p, q, opts);
    }
  } catch (const lensembed::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  if (as_json) {
    std::cout << json(out.report).dump(2) << '\n';
  } else {
    std::cout << render_text(out.report);
  }
  if (out.report.result.contains("error"))
    std::cerr << "error: " << out.report.result["message"].get<std::string>() << '\n';
  return out.exit_code;
}
