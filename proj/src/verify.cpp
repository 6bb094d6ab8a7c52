#include "krawlp/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <tuple>

#include "krawlp/error.hpp"
#include "krawlp/lp_model.hpp"
#include "krawlp/oracle.hpp"
#include "krawlp/solver.hpp"

namespace krawlp {

bool VerifyReport::ok() const {
  for (const auto& s : suites)
    if (!s.ok()) return false;
  return true;
}

std::size_t VerifyReport::violation_count() const {
  std::size_t total = 0;
  for (const auto& s : suites) total += s.findings.violations.size();
  return total;
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json suites = nlohmann::json::array();
  for (const auto& s : report.suites) {
    nlohmann::json j{{"name", s.findings.name},
                     {"ok", s.ok()},
                     {"checked", s.findings.checked},
                     {"skipped", s.skipped},
                     {"seconds", s.seconds},
                     {"violations", s.findings.violations}};
    if (s.limit_seconds > 0) j["limit_seconds"] = s.limit_seconds;
    if (!s.note.empty()) j["note"] = s.note;
    suites.push_back(std::move(j));
  }
  nlohmann::json out{{"ok", report.ok()}, {"violations", report.violation_count()}, {"suites", std::move(suites)}};
  if (report.n > 0) {
    out["n"] = report.n;
    out["l"] = report.level;
  }
  return out;
}

void for_each_linear_code(int n, const std::function<void(const CodeSet&)>& visit) {
  if (n < 1 || n > kMaxLinearCodeBlocklength) fail(ErrorCode::Capacity, "subspace enumeration budget is n <= 10");
  // Reduced echelon form: pivot p is the lowest set bit of its row; other pivot
  // columns are zero and the free entries sit at non-pivot columns above p.
  for (Word pivots = 0; pivots < (Word{1} << n); ++pivots) {
    std::vector<int> pivot_list;
    std::vector<std::vector<int>> free_cols;
    int free_total = 0;
    for (int p = 0; p < n; ++p) {
      if (!((pivots >> p) & 1U)) continue;
      pivot_list.push_back(p);
      free_cols.emplace_back();
      for (int c = p + 1; c < n; ++c)
        if (!((pivots >> c) & 1U)) free_cols.back().push_back(c);
      free_total += static_cast<int>(free_cols.back().size());
    }
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free_total); ++bits) {
      std::vector<Word> rows;
      int used = 0;
      for (std::size_t r = 0; r < pivot_list.size(); ++r) {
        Word row = Word{1} << pivot_list[r];
        for (const int c : free_cols[r]) {
          if ((bits >> used) & 1U) row |= Word{1} << c;
          ++used;
        }
        rows.push_back(row);
      }
      visit(CodeSet::span(n, rows));
    }
  }
}

namespace {

using Clock = std::chrono::steady_clock;

// Shared memo for tables and LP values across suites.
class Context {
 public:
  const KrawtchoukTable& table(int n, int level) {
    auto& slot = tables_[{n, level}];
    if (!slot) slot = std::make_unique<KrawtchoukTable>(build_table(n, level));
    return *slot;
  }

  // kind: 0 Delsarte, 1 hierarchy, 2 Fourier.
  const SolveResult& solve(int kind, int n, int d, int level, bool linear) {
    const auto key = std::make_tuple(kind, n, d, level, linear);
    auto it = solves_.find(key);
    if (it != solves_.end()) return it->second;
    LinearProgram lp;
    if (kind == 0) {
      lp = build_delsarte(n, d);
    } else if (kind == 1) {
      lp = build_hierarchy_lp(table(n, level), d, linear);
    } else {
      lp = build_fourier_lp(n, d, level, linear);
    }
    return solves_.emplace(key, solve_exact(lp)).first->second;
  }

  const OracleResult& oracle(int n, int d, bool linear) {
    const auto key = std::make_tuple(n, d, linear);
    auto it = oracles_.find(key);
    if (it != oracles_.end()) return it->second;
    return oracles_.emplace(key, linear ? max_linear_code(n, d) : max_code(n, d)).first->second;
  }

 private:
  std::map<std::pair<int, int>, std::unique_ptr<KrawtchoukTable>> tables_;
  std::map<std::tuple<int, int, int, int, bool>, SolveResult> solves_;
  std::map<std::tuple<int, int, bool>, OracleResult> oracles_;
};

std::string at(int n, int level) { return "n=" + std::to_string(n) + " l=" + std::to_string(level); }
std::string at(int n, int d, int level) { return at(n, level) + " d=" + std::to_string(d); }

void note(IdentityReport& r, bool ok, const std::string& where) {
  ++r.checked;
  if (!ok) r.violations.push_back(where);
}

void merge(IdentityReport& into, const IdentityReport& from, const std::string& where) {
  into.checked += from.checked;
  for (const auto& v : from.violations) into.violations.push_back(where + ": " + v);
}

void census(IdentityReport& r, int n, int level) {
  const auto configs = enumerate_configs(n, level);
  note(r, BigInt(configs.size()) == config_count(n, level), at(n, level) + " count");
  BigInt total = 0;
  for (const auto& g : configs) total += orbit_size(g, n);
  note(r, total == pow2(static_cast<unsigned>(n * level)), at(n, level) + " orbit sum");
  note(r, !configs.empty() && configs.front().is_trivial(), at(n, level) + " trivial first");
}

void conversion(IdentityReport& r, int n, int level, bool tuples) {
  const ConfigSpace space(n, level);
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto& g = space.sd(i);
    const VennConfig v = sd_to_venn(g, n);
    note(r, venn_to_sd(v) == g && v == space.venn(i) && space.index_of(g) == i,
         at(n, level) + " config " + std::to_string(i));
  }
  if (!tuples) return;
  // Grouping every tuple by configuration reproduces the orbit sizes.
  std::vector<BigInt> counts(space.size(), BigInt(0));
  const std::uint64_t total = std::uint64_t{1} << (n * level);
  const Word mask = (Word{1} << n) - 1;
  for (std::uint64_t x = 0; x < total; ++x) {
    std::vector<Word> words(static_cast<std::size_t>(level));
    for (int j = 0; j < level; ++j) words[static_cast<std::size_t>(j)] = (x >> (j * n)) & mask;
    const WordTuple t(n, std::move(words));
    const SDConfig g = config_of_tuple(t);
    const VennConfig v = venn_of_tuple(t);
    if (venn_to_sd(v) != g) note(r, false, at(n, level) + " tuple " + std::to_string(x));
    counts[space.index_of(v)] += 1;
  }
  for (std::size_t i = 0; i < space.size(); ++i)
    note(r, counts[i] == space.orbit(i), at(n, level) + " orbit class " + std::to_string(i));
}

void agreement(IdentityReport& r, Context& ctx, int n, int level) {
  const KrawtchoukTable& base = ctx.table(n, level);
  note(r, build_table(n, level, TableMethod::InLevel) == base, at(n, level) + " recursions differ");
  note(r, build_table(n, level, TableMethod::Explicit) == base, at(n, level) + " explicit differs");
  if (n * level <= kMaxDirectBits && n * level <= 8)
    note(r, build_table(n, level, TableMethod::Direct) == base, at(n, level) + " direct differs");
  if (level == 1)
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        note(r, base(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) == classical_krawtchouk(i, j, n),
             at(n, level) + " classical K_" + std::to_string(i) + "(" + std::to_string(j) + ")");
}

void identities(IdentityReport& r, Context& ctx, int n, int level) {
  const KrawtchoukTable& t = ctx.table(n, level);
  merge(r, verify_orthogonality(t), at(n, level));
  merge(r, verify_reflection(t), at(n, level));
  merge(r, verify_table_invariants(t), at(n, level));
}

void macwilliams_identity(IdentityReport& r, Context& ctx, int n, int level) {
  const KrawtchoukTable& t = ctx.table(n, level);
  std::size_t index = 0;
  for_each_linear_code(n, [&](const CodeSet& code) {
    const auto rep = verify_macwilliams(code, t);
    const std::string where = at(n, level) + " linear code #" + std::to_string(index++);
    merge(r, rep.identity, where);
    merge(r, rep.inequality, where);
    note(r, dual_code(dual_code(code)) == code, where + " double dual");
  });
}

void macwilliams_inequality(IdentityReport& r, Context& ctx, int n, int level, std::size_t max_size) {
  const KrawtchoukTable& t = ctx.table(n, level);
  const std::size_t words = std::size_t{1} << n;
  std::vector<Word> chosen;
  const std::function<void(std::size_t)> extend = [&](std::size_t next) {
    if (!chosen.empty()) {
      const CodeSet code(n, chosen);
      merge(r, verify_macwilliams(code, t).inequality, at(n, level) + " code " + to_json(code)["words"].dump());
    }
    if (chosen.size() == max_size) return;
    for (std::size_t w = next; w < words; ++w) {
      chosen.push_back(static_cast<Word>(w));
      extend(w + 1);
      chosen.pop_back();
    }
  };
  extend(0);
}

void soundness(IdentityReport& r, Context& ctx, int n, int level, bool general_oracle) {
  for (int d = 1; d <= n; ++d) {
    for (const bool linear : {false, true}) {
      if (!linear && !general_oracle) continue;
      const SolveResult& s = ctx.solve(1, n, d, level, linear);
      const OracleResult& o = ctx.oracle(n, d, linear);
      const std::string where = at(n, d, level) + (linear ? " linear" : " general");
      note(r, s.status == SolveStatus::Optimal && s.certified, where + " not solved to a certified optimum");
      if (s.status != SolveStatus::Optimal) continue;
      BigInt power = 1;
      for (int j = 0; j < level; ++j) power *= static_cast<long>(o.size);
      note(r, s.value >= Rational(power), where + " value " + to_fraction_string(s.value) + " below oracle^l");
      note(r, root_value(s.value, level) >= static_cast<double>(o.size), where + " root below oracle size");
      // The witness profile itself is feasible.
      const LinearProgram lp = build_hierarchy_lp(ctx.table(n, level), d, linear);
      const CodeProfile profile = profile_of_code(o.witness, ctx.table(n, level).space(), linear);
      const auto verdict = check_feasibility(lp, profile);
      note(r, verdict.feasible(), where + " witness profile " + to_string(verdict.kind) + " at " + verdict.location);
      note(r, profile.total() == Rational(power), where + " profile total");
    }
  }
}

void collapse(IdentityReport& r, Context& ctx, int n, int level) {
  for (int d = 1; d <= n; ++d) {
    const SolveResult& del = ctx.solve(0, n, d, 1, false);
    const SolveResult& hier = ctx.solve(1, n, d, level, false);
    Rational power = 1;
    for (int j = 0; j < level; ++j) power *= del.value;
    note(r, del.status == SolveStatus::Optimal && hier.status == SolveStatus::Optimal && hier.value == power,
         at(n, d, level) + " hierarchy " + to_fraction_string(hier.value) + " vs Delsarte^l " + to_fraction_string(power));
  }
}

void subadditivity(IdentityReport& r, Context& ctx, int n, int level) {
  if (level < 2) return;
  for (int d = 1; d <= n; ++d) {
    const SolveResult& top = ctx.solve(1, n, d, level, true);
    const SolveResult& below = ctx.solve(1, n, d, level - 1, true);
    const SolveResult& one = ctx.solve(1, n, d, 1, true);
    note(r, top.value <= below.value * one.value,
         at(n, d, level) + " linear value " + to_fraction_string(top.value) + " exceeds product " +
             to_fraction_string(below.value * one.value));
  }
}

void fourier(IdentityReport& r, Context& ctx, int n, int level) {
  for (int d = 1; d <= n; ++d) {
    for (const bool linear : {false, true}) {
      const std::string where = at(n, d, level) + (linear ? " linear" : " general");
      const SolveResult& f = ctx.solve(2, n, d, level, linear);
      const SolveResult& k = ctx.solve(1, n, d, level, linear);
      note(r, f.status == k.status && f.value == k.value,
           where + " Fourier " + to_fraction_string(f.value) + " vs Krawtchouk " + to_fraction_string(k.value));
    }
    // Indicator-product point of the linear witness.
    const OracleResult& o = ctx.oracle(n, d, true);
    const auto point = indicator_solution(o.witness, level);
    const std::string where = at(n, d, level) + " indicator";
    const auto verdict = check_feasibility(build_fourier_lp(n, d, level, true), point);
    note(r, verdict.feasible(), where + " " + to_string(verdict.kind) + " at " + verdict.location);
    const auto& space = ctx.table(n, level).space();
    note(r, aggregate_by_config(point, space) == profile_of_code(o.witness, space, true).values, where + " aggregation");
  }
}

void level_one(IdentityReport& r, int n) {
  for (int d = 1; d <= n + 1; ++d) {
    const LinearProgram del = build_delsarte(n, d);
    for (const bool linear : {false, true}) {
      const LinearProgram h = build_hierarchy_lp(n, d, 1, linear);
      note(r, h.variables == del.variables && h.variable_names == del.variable_names && h.objective == del.objective &&
                  h.rows == del.rows,
           at(n, d, 1) + (linear ? " linear" : " general"));
    }
  }
}

template <typename Body>
SuiteReport timed(const std::string& name, double limit, Body&& body) {
  SuiteReport s;
  s.findings.name = name;
  s.limit_seconds = limit;
  const auto start = Clock::now();
  try {
    body(s.findings);
  } catch (const Error& e) {
    s.findings.violations.push_back(std::string("error (") + to_string(e.code()) + "): " + e.what());
  }
  s.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return s;
}

SuiteReport skipped(const std::string& name, const std::string& why) {
  SuiteReport s;
  s.findings.name = name;
  s.skipped = true;
  s.note = why;
  return s;
}

}  // namespace

VerifyReport verify(int n, int level) {
  if (n < 1 || level < 1) fail(ErrorCode::InvalidInput, "n and l must be positive");
  if (level > kMaxLevelLp) fail(ErrorCode::Capacity, "verify supports l <= " + std::to_string(kMaxLevelLp));
  if (config_count(n, level) > BigInt(kMaxTableConfigs))
    fail(ErrorCode::Capacity, "Krawtchouk table budget is " + std::to_string(kMaxTableConfigs) + " configurations");
  Context ctx;
  VerifyReport report;
  report.n = n;
  report.level = level;
  auto& out = report.suites;
  out.push_back(timed("config-census", 0, [&](IdentityReport& r) { census(r, n, level); }));
  out.push_back(timed("config-conversion", 0, [&](IdentityReport& r) { conversion(r, n, level, n * level <= 16); }));
  out.push_back(timed("krawtchouk-agreement", 0, [&](IdentityReport& r) { agreement(r, ctx, n, level); }));
  out.push_back(timed("orthogonality-reflection", 0, [&](IdentityReport& r) { identities(r, ctx, n, level); }));
  if (n <= 6) {
    out.push_back(timed("macwilliams-identity", 0, [&](IdentityReport& r) { macwilliams_identity(r, ctx, n, level); }));
  } else {
    out.push_back(skipped("macwilliams-identity", "subspace sweep runs for n <= 6"));
  }
  if (n <= 4) {
    out.push_back(
        timed("macwilliams-inequality", 0, [&](IdentityReport& r) { macwilliams_inequality(r, ctx, n, level, 4); }));
  } else {
    out.push_back(skipped("macwilliams-inequality", "code sweep runs for n <= 4"));
  }
  if (n <= kMaxLinearCodeBlocklength) {
    const bool general = n <= kMaxCodeBlocklength;
    SuiteReport s = timed("soundness", 0, [&](IdentityReport& r) { soundness(r, ctx, n, level, general); });
    if (!general) s.note = "general oracle skipped (n > " + std::to_string(kMaxCodeBlocklength) + ")";
    out.push_back(std::move(s));
  } else {
    out.push_back(skipped("soundness", "oracle budget exceeded"));
  }
  out.push_back(timed("collapse", 0, [&](IdentityReport& r) { collapse(r, ctx, n, level); }));
  if (level >= 2) {
    out.push_back(timed("subadditivity", 0, [&](IdentityReport& r) { subadditivity(r, ctx, n, level); }));
  } else {
    out.push_back(skipped("subadditivity", "needs l >= 2"));
  }
  if (n * level <= 6) {
    out.push_back(timed("fourier-equivalence", 0, [&](IdentityReport& r) { fourier(r, ctx, n, level); }));
  } else {
    out.push_back(skipped("fourier-equivalence", "runs for n*l <= 6"));
  }
  if (level == 1) {
    out.push_back(timed("level-one-coincidence", 0, [&](IdentityReport& r) { level_one(r, n); }));
  } else {
    out.push_back(skipped("level-one-coincidence", "needs l = 1"));
  }
  return report;
}

VerifyReport run_acceptance(const std::vector<int>& criteria, const std::function<void(int, const SuiteReport&)>& on_done) {
  const auto wanted = [&](int id) {
    return criteria.empty() || std::find(criteria.begin(), criteria.end(), id) != criteria.end();
  };
  for (const int id : criteria)
    if (id < 1 || id > 10) fail(ErrorCode::InvalidInput, "acceptance criteria are numbered 1..10");
  Context ctx;
  VerifyReport report;
  const auto add = [&](int id, SuiteReport s) {
    if (on_done) on_done(id, s);
    report.suites.push_back(std::move(s));
  };

  if (wanted(1))
    add(1, timed("1 config-census", 5, [&](IdentityReport& r) {
          for (int level = 1; level <= 3; ++level)
            for (int n = 1; n <= 10; ++n) census(r, n, level);
        }));
  if (wanted(2))
    add(2, timed("2 conversion-identity", 5, [&](IdentityReport& r) {
          for (int level = 1; level <= 3; ++level)
            for (int n = 1; n <= 10; ++n) conversion(r, n, level, false);
        }));
  if (wanted(3))
    add(3, timed("3 krawtchouk-triple-agreement", 60, [&](IdentityReport& r) {
          for (int level = 1; level <= 2; ++level)
            for (int n = 1; n <= 4; ++n) agreement(r, ctx, n, level);
        }));
  if (wanted(4))
    add(4, timed("4 orthogonality-reflection", 60, [&](IdentityReport& r) {
          for (int level = 1; level <= 2; ++level)
            for (int n = 1; n <= 5; ++n) identities(r, ctx, n, level);
        }));
  if (wanted(5))
    add(5, timed("5 macwilliams", 600, [&](IdentityReport& r) {
          for (int level = 1; level <= 2; ++level) {
            for (int n = 1; n <= 5; ++n) macwilliams_identity(r, ctx, n, level);
            for (int n = 1; n <= 4; ++n) macwilliams_inequality(r, ctx, n, level, 4);
          }
        }));
  if (wanted(6))
    add(6, timed("6 soundness", 600, [&](IdentityReport& r) {
          for (int level = 1; level <= 2; ++level)
            for (int n = 1; n <= 5; ++n) soundness(r, ctx, n, level, true);
        }));
  if (wanted(7))
    add(7, timed("7 hierarchy-collapse", 600, [&](IdentityReport& r) {
          for (int n = 1; n <= 5; ++n) collapse(r, ctx, n, 2);
        }));
  if (wanted(8))
    add(8, timed("8 subadditivity", 600, [&](IdentityReport& r) {
          for (int n = 1; n <= 5; ++n) subadditivity(r, ctx, n, 2);
        }));
  if (wanted(9))
    add(9, timed("9 symmetrization-equivalence", 600, [&](IdentityReport& r) {
          for (int level = 1; level <= 2; ++level)
            for (int n = 1; n <= 3; ++n) fourier(r, ctx, n, level);
        }));
  if (wanted(10))
    add(10, timed("10 level-one-coincidence", 5, [&](IdentityReport& r) {
          for (int n = 1; n <= 8; ++n) level_one(r, n);
        }));
  return report;
}

}  // namespace krawlp
