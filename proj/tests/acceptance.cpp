// Acceptance grid: one PASS/FAIL line per criterion, with its time limit.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "krawlp/error.hpp"
#include "krawlp/verify.hpp"

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  int failed = 0;
  try {
    krawlp::run_acceptance(only, [&](int id, const krawlp::SuiteReport& s) {
      const bool pass = s.ok();
      if (!pass) ++failed;
      std::printf("%s criterion %d: %s  [%llu checks, %.2f s, limit %.0f s]\n", pass ? "PASS" : "FAIL", id,
                  s.findings.name.c_str(), static_cast<unsigned long long>(s.findings.checked), s.seconds,
                  s.limit_seconds);
      const std::size_t shown = std::min<std::size_t>(s.findings.violations.size(), 5);
      for (std::size_t k = 0; k < shown; ++k) std::printf("    %s\n", s.findings.violations[k].c_str());
      if (s.findings.violations.size() > shown)
        std::printf("    ... %zu more\n", s.findings.violations.size() - shown);
      if (s.findings.ok() && !pass) std::printf("    time limit exceeded\n");
      std::fflush(stdout);
    });
  } catch (const krawlp::Error& e) {
    std::printf("FAIL setup: %s\n", e.what());
    return 1;
  }
  return failed == 0 ? 0 : 1;
}
