#pragma once

// Property suites over the whole pipeline: configurations, Krawtchouk tables,
// MacWilliams transforms, LP soundness and the level-2 collapse.

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "krawlp/code.hpp"
#include "krawlp/krawtchouk.hpp"

namespace krawlp {

struct SuiteReport {
  IdentityReport findings;
  double seconds = 0;
  double limit_seconds = 0;  // 0 = no limit
  bool skipped = false;
  std::string note;

  bool ok() const { return findings.ok() && (limit_seconds <= 0 || seconds <= limit_seconds); }
};

struct VerifyReport {
  int n = 0;
  int level = 0;
  std::vector<SuiteReport> suites;

  bool ok() const;
  std::size_t violation_count() const;
};

nlohmann::json to_json(const VerifyReport& report);

/// Every suite that applies at (n, l), with d ranging over 1..n. Suites whose
/// oracle would exceed its budget are reported as skipped.
VerifyReport verify(int n, int level);

/// Acceptance grid; `criteria` selects ids 1..10 (empty = all). Each suite
/// carries its time limit. The callback, if set, sees each suite as it finishes.
VerifyReport run_acceptance(const std::vector<int>& criteria = {},
                            const std::function<void(int, const SuiteReport&)>& on_done = {});

/// Calls visit(code) for every linear code of length n (every subspace of F_2^n, once).
void for_each_linear_code(int n, const std::function<void(const CodeSet&)>& visit);

}  // namespace krawlp
