#include "report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace lensembed::cli {

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void to_json(json& j, const Check& c) { j = json{{"name", c.name}, {"pass", c.pass}}; }

void from_json(const json& j, Check& c) {
  j.at("name").get_to(c.name);
  j.at("pass").get_to(c.pass);
}

void to_json(json& j, const Report& r) {
  j = json{{"command", r.command},
           {"inputs", r.inputs},
           {"result", r.result},
           {"checks", r.checks},
           {"timing_ms", r.timing_ms}};
}

void from_json(const json& j, Report& r) {
  j.at("command").get_to(r.command);
  r.inputs = j.at("inputs");
  r.result = j.at("result");
  j.at("checks").get_to(r.checks);
  j.at("timing_ms").get_to(r.timing_ms);
}

json integer_json(const Integer& v) {
  if (v >= INT64_MIN && v <= INT64_MAX) return static_cast<std::int64_t>(v);
  return v.str();
}

json string_json(const CFString& s) {
  json out = json::array();
  for (const auto& a : s.coeffs()) out.push_back(integer_json(a));
  return out;
}

json gram_json(const IntegralLattice& lattice) {
  json entries = json::array();
  for (std::size_t r = 0; r < lattice.rank(); ++r)
    for (std::size_t c = 0; c < lattice.rank(); ++c) entries.push_back(integer_json(lattice(r, c)));
  return json{{"rank", lattice.rank()}, {"entries", entries}};
}

json matrix_json(const IntMatrix& m) {
  json entries = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) entries.push_back(integer_json(m(r, c)));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

namespace {

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_table(std::ostringstream& os, const json& rows) {
  if (rows.empty()) {
    os << "  (no rows)\n";
    return;
  }
  std::vector<std::string> keys;
  for (const auto& item : rows.front().items()) keys.push_back(item.key());
  std::vector<std::size_t> width(keys.size());
  for (std::size_t k = 0; k < keys.size(); ++k) {
    width[k] = keys[k].size();
    for (const auto& row : rows) width[k] = std::max(width[k], cell(row.at(keys[k])).size());
  }
  os << "  ";
  for (std::size_t k = 0; k < keys.size(); ++k) os << std::left << std::setw(int(width[k]) + 2) << keys[k];
  os << '\n';
  for (const auto& row : rows) {
    os << "  ";
    for (std::size_t k = 0; k < keys.size(); ++k)
      os << std::left << std::setw(int(width[k]) + 2) << cell(row.at(keys[k]));
    os << '\n';
  }
}

}  // namespace

std::string render_text(const Report& r) {
  std::ostringstream os;
  os << r.command;
  for (const auto& item : r.inputs.items()) os << ' ' << item.key() << '=' << cell(item.value());
  os << '\n';
  for (const auto& item : r.result.items()) {
    if (item.value().is_array() && !item.value().empty() && item.value().front().is_object()) {
      os << item.key() << ":\n";
      render_table(os, item.value());
    } else {
      os << item.key() << ": " << cell(item.value()) << '\n';
    }
  }
  for (const auto& c : r.checks) os << (c.pass ? "[pass] " : "[FAIL] ") << c.name << '\n';
  os << "time: " << std::fixed << std::setprecision(1) << r.timing_ms << " ms\n";
  return os.str();
}

}  // namespace lensembed::cli
