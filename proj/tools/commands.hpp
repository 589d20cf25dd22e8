#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lensembed/embedder.hpp"
#include "lensembed/lensspace.hpp"
#include "report.hpp"

namespace lensembed::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidInput = 2,
  kBudgetExhausted = 3,
  kHypothesisViolation = 4,
};

struct Options {
  bool research = false;
  SearchLimits limits;
};

struct Outcome {
  Report report;
  int exit_code = kOk;
};

// Every command reports library errors as an Outcome: InvalidInput -> 2,
// BudgetExhausted -> 3, HypothesisViolation -> 4.
Outcome cmd_expand(const Integer& p, const Integer& q);
Outcome cmd_dual(const Integer& p, const Integer& q);
Outcome cmd_embed(const Integer& p, const Integer& q, std::size_t n, bool list,
                  const Options& opts);
Outcome cmd_obstruct(const Integer& p, const Integer& q, const Integer& n, const Options& opts);
Outcome cmd_complement(const Integer& p, const Integer& q, std::size_t n, const Options& opts);
Outcome cmd_verify(const Integer& p, const Integer& q, const Options& opts);
Outcome cmd_census(long long a_min, long long a_max, std::size_t m_max, const Options& opts);

/// The checks performed by `verify` for one string, in order.
std::vector<Check> check_suite(const CFString& s, const SearchLimits& limits);

}  // namespace lensembed::cli
