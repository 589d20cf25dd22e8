#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lensembed/contfrac.hpp"
#include "lensembed/lattice.hpp"

namespace lensembed::cli {

using nlohmann::json;

struct Check {
  std::string name;
  bool pass = false;

  friend bool operator==(const Check&, const Check&) = default;
};

/// Structured outcome of one CLI command.
struct Report {
  std::string command;
  json inputs = json::object();
  json result = json::object();
  std::vector<Check> checks;
  double timing_ms = 0.0;

  bool all_pass() const;
  friend bool operator==(const Report&, const Report&) = default;
};

void to_json(json& j, const Check& c);
void from_json(const json& j, Check& c);
void to_json(json& j, const Report& r);
void from_json(const json& j, Report& r);

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
json integer_json(const Integer& v);
json string_json(const CFString& s);
/// {"rank": n, "entries": [row-major]}.
json gram_json(const IntegralLattice& lattice);
/// {"rows": r, "cols": c, "entries": [row-major]}.
json matrix_json(const IntMatrix& m);

/// Human-readable rendering: inputs, result fields and one line per check.
std::string render_text(const Report& r);

}  // namespace lensembed::cli
