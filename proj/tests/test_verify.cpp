#include <doctest.h>

#include <set>

#include "krawlp/error.hpp"
#include "krawlp/verify.hpp"

using namespace krawlp;

TEST_CASE("for_each_linear_code visits every subspace once") {
  // Total number of subspaces of F_2^n (sums of Gaussian binomials).
  const std::size_t expect[] = {0, 2, 5, 16, 67, 374};
  for (int n = 1; n <= 5; ++n) {
    std::set<std::vector<Word>> seen;
    std::size_t visits = 0;
    for_each_linear_code(n, [&](const CodeSet& c) {
      ++visits;
      CHECK(c.is_linear());
      seen.emplace(c.words().begin(), c.words().end());
    });
    CHECK(visits == expect[n]);
    CHECK(seen.size() == expect[n]);
  }
}

TEST_CASE("verify passes at small points") {
  for (const auto& [n, l] : std::vector<std::pair<int, int>>{{1, 1}, {3, 1}, {2, 2}, {3, 2}, {4, 2}}) {
    const auto report = verify(n, l);
    CAPTURE(n);
    CAPTURE(l);
    for (const auto& s : report.suites) {
      CAPTURE(s.findings.name);
      CHECK(s.findings.ok());
    }
    CHECK(report.ok());
    const auto j = to_json(report);
    CHECK(j["ok"] == true);
    CHECK(j["suites"].size() == report.suites.size());
  }
}

TEST_CASE("verify reports skipped suites and budgets") {
  const auto r = verify(8, 1);
  bool saw_skip = false;
  for (const auto& s : r.suites) saw_skip = saw_skip || s.skipped;
  CHECK(saw_skip);
  CHECK(r.ok());
  CHECK_THROWS_AS(verify(0, 1), Error);
  CHECK_THROWS_AS(verify(20, 3), Error);
}

TEST_CASE("acceptance subset runs with callback") {
  std::vector<int> seen;
  const auto r = run_acceptance({1, 2, 10}, [&](int id, const SuiteReport&) { seen.push_back(id); });
  CHECK(seen == std::vector<int>{1, 2, 10});
  CHECK(r.ok());
  CHECK_THROWS_AS(run_acceptance({11}), Error);
}
