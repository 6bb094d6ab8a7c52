#include "krawlp/krawlp.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "krawlp/error.hpp"
#include "krawlp/krawtchouk.hpp"
#include "krawlp/lp_model.hpp"
#include "krawlp/oracle.hpp"
#include "krawlp/solver.hpp"
#include "krawlp/verify.hpp"

struct krawlp_table {
  krawlp::KrawtchoukTable table;
};

struct krawlp_lp {
  krawlp::LinearProgram lp;
};

struct krawlp_solution {
  krawlp::SolveResult result;
  krawlp::LinearProgram lp;
};

namespace {

thread_local std::string last_error;

krawlp_status status_of(krawlp::ErrorCode code) {
  using krawlp::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidInput: return KRAWLP_ERR_INVALID_INPUT;
    case ErrorCode::NotAConfig: return KRAWLP_ERR_NOT_A_CONFIG;
    case ErrorCode::NotLinear: return KRAWLP_ERR_NOT_LINEAR;
    case ErrorCode::Capacity: return KRAWLP_ERR_CAPACITY;
    case ErrorCode::Resource: return KRAWLP_ERR_RESOURCE;
    case ErrorCode::Domain: return KRAWLP_ERR_DOMAIN;
    case ErrorCode::Io: return KRAWLP_ERR_IO;
  }
  return KRAWLP_ERR_INTERNAL;
}

template <typename Body>
krawlp_status guarded(Body&& body) {
  last_error.clear();
  try {
    body();
    return KRAWLP_OK;
  } catch (const krawlp::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return KRAWLP_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return KRAWLP_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) krawlp::fail(krawlp::ErrorCode::InvalidInput, std::string("null ") + what);
}

std::filesystem::path cache_dir() {
  const char* dir = std::getenv("KRAWLP_CACHE_DIR");
  return dir ? std::filesystem::path(dir) : std::filesystem::path();
}

krawlp::KrawtchoukTable table_for(int n, int l) {
  if (n < 1 || l < 1) krawlp::fail(krawlp::ErrorCode::InvalidInput, "n and l must be positive");
  if (l > krawlp::kMaxLevelLp)
    krawlp::fail(krawlp::ErrorCode::Capacity, "table budget is l <= " + std::to_string(krawlp::kMaxLevelLp));
  if (krawlp::config_count(n, l) > krawlp::BigInt(krawlp::kMaxTableConfigs))
    krawlp::fail(krawlp::ErrorCode::Capacity,
                 "table budget is " + std::to_string(krawlp::kMaxTableConfigs) + " configurations");
  return krawlp::load_or_build_table(n, l, cache_dir());
}

}  // namespace

extern "C" {

const char* krawlp_version(void) { return KRAWLP_VERSION_STRING; }

const char* krawlp_last_error(void) { return last_error.c_str(); }

const char* krawlp_status_name(krawlp_status status) {
  switch (status) {
    case KRAWLP_OK: return "ok";
    case KRAWLP_ERR_INVALID_INPUT: return "invalid-input";
    case KRAWLP_ERR_NOT_A_CONFIG: return "not-a-configuration";
    case KRAWLP_ERR_NOT_LINEAR: return "not-linear";
    case KRAWLP_ERR_CAPACITY: return "capacity";
    case KRAWLP_ERR_RESOURCE: return "resource";
    case KRAWLP_ERR_DOMAIN: return "domain";
    case KRAWLP_ERR_IO: return "io";
    case KRAWLP_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void krawlp_string_free(char* s) { std::free(s); }

krawlp_status krawlp_config_count(int n, int l, char** count) {
  return guarded([&] {
    need(count, "output");
    if (n < 1 || l < 1) krawlp::fail(krawlp::ErrorCode::InvalidInput, "n and l must be positive");
    if (l > krawlp::kMaxLevel)
      krawlp::fail(krawlp::ErrorCode::Capacity, "configuration budget is l <= " + std::to_string(krawlp::kMaxLevel));
    *count = dup(krawlp::config_count(n, l).str());
  });
}

krawlp_status krawlp_configs_json(int n, int l, char** json) {
  return guarded([&] {
    need(json, "output");
    if (l > krawlp::kMaxLevel)
      krawlp::fail(krawlp::ErrorCode::Capacity, "configuration budget is l <= " + std::to_string(krawlp::kMaxLevel));
    const krawlp::ConfigSpace space(n, l);
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < space.size(); ++i) {
      nlohmann::json item = krawlp::to_json(space.sd(i), n);
      item["index"] = i;
      item["orbit"] = space.orbit(i).str();
      out.push_back(std::move(item));
    }
    *json = dup(out.dump());
  });
}

krawlp_status krawlp_table_build(int n, int l, krawlp_table** out) {
  return guarded([&] {
    need(out, "output");
    *out = new krawlp_table{table_for(n, l)};
  });
}

size_t krawlp_table_size(const krawlp_table* table) { return table ? table->table.size() : 0; }

krawlp_status krawlp_table_entry(const krawlp_table* table, size_t h, size_t g, char** value) {
  return guarded([&] {
    need(table, "table");
    need(value, "output");
    if (h >= table->table.size() || g >= table->table.size())
      krawlp::fail(krawlp::ErrorCode::InvalidInput, "configuration index out of range");
    *value = dup(table->table(h, g).str());
  });
}

krawlp_status krawlp_table_csv(const krawlp_table* table, char** csv) {
  return guarded([&] {
    need(table, "table");
    need(csv, "output");
    *csv = dup(krawlp::table_to_csv(table->table));
  });
}

void krawlp_table_free(krawlp_table* table) { delete table; }

krawlp_status krawlp_lp_delsarte(int n, int d, krawlp_lp** out) {
  return guarded([&] {
    need(out, "output");
    *out = new krawlp_lp{krawlp::build_delsarte(n, d)};
  });
}

krawlp_status krawlp_lp_hierarchy(int n, int d, int l, int linear, krawlp_lp** out) {
  return guarded([&] {
    need(out, "output");
    if (d < 0 || d > n + 1) krawlp::fail(krawlp::ErrorCode::InvalidInput, "distance must lie in [0, n+1]");
    *out = new krawlp_lp{krawlp::build_hierarchy_lp(table_for(n, l), d, linear != 0)};
  });
}

krawlp_status krawlp_lp_fourier(int n, int d, int l, int linear, krawlp_lp** out) {
  return guarded([&] {
    need(out, "output");
    *out = new krawlp_lp{krawlp::build_fourier_lp(n, d, l, linear != 0)};
  });
}

krawlp_status krawlp_lp_from_json(const char* json, krawlp_lp** out) {
  return guarded([&] {
    need(json, "input");
    need(out, "output");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      krawlp::fail(krawlp::ErrorCode::InvalidInput, std::string("bad JSON: ") + e.what());
    }
    *out = new krawlp_lp{krawlp::lp_from_json(j)};
  });
}

krawlp_status krawlp_lp_export(const krawlp_lp* lp, krawlp_lp_format format, char** text) {
  return guarded([&] {
    need(lp, "program");
    need(text, "output");
    const auto f = format == KRAWLP_FORMAT_JSON ? krawlp::LpFormat::Json : krawlp::LpFormat::LpText;
    *text = dup(krawlp::export_lp(lp->lp, f));
  });
}

krawlp_status krawlp_lp_dims(const krawlp_lp* lp, size_t* variables, size_t* rows) {
  return guarded([&] {
    need(lp, "program");
    if (variables) *variables = lp->lp.num_variables();
    if (rows) *rows = lp->lp.rows.size();
  });
}

void krawlp_lp_free(krawlp_lp* lp) { delete lp; }

krawlp_status krawlp_solve(const krawlp_lp* lp, krawlp_solve_mode mode, krawlp_solution** out) {
  return guarded([&] {
    need(lp, "program");
    need(out, "output");
    auto result = mode == KRAWLP_SOLVE_FLOAT ? krawlp::solve_float(lp->lp) : krawlp::solve_exact(lp->lp);
    *out = new krawlp_solution{std::move(result), lp->lp};
  });
}

krawlp_solve_status krawlp_solution_status(const krawlp_solution* sol) {
  if (!sol) return KRAWLP_INFEASIBLE;
  switch (sol->result.status) {
    case krawlp::SolveStatus::Optimal: return KRAWLP_OPTIMAL;
    case krawlp::SolveStatus::Infeasible: return KRAWLP_INFEASIBLE;
    case krawlp::SolveStatus::Unbounded: return KRAWLP_UNBOUNDED;
  }
  return KRAWLP_INFEASIBLE;
}

krawlp_status krawlp_solution_value(const krawlp_solution* sol, char** value) {
  return guarded([&] {
    need(sol, "solution");
    need(value, "output");
    if (sol->result.status != krawlp::SolveStatus::Optimal)
      krawlp::fail(krawlp::ErrorCode::Domain, "solution has no optimal value");
    *value = dup(krawlp::to_fraction_string(sol->result.value));
  });
}

krawlp_status krawlp_solution_root(const krawlp_solution* sol, double* root) {
  return guarded([&] {
    need(sol, "solution");
    need(root, "output");
    if (sol->result.status != krawlp::SolveStatus::Optimal)
      krawlp::fail(krawlp::ErrorCode::Domain, "solution has no optimal value");
    *root = krawlp::root_value(sol->result.value, std::max(sol->lp.level, 1));
  });
}

krawlp_status krawlp_solution_json(const krawlp_solution* sol, char** json) {
  return guarded([&] {
    need(sol, "solution");
    need(json, "output");
    *json = dup(krawlp::to_json(sol->result, sol->lp).dump());
  });
}

void krawlp_solution_free(krawlp_solution* sol) { delete sol; }

krawlp_status krawlp_oracle(int n, int d, int linear, char** json) {
  return guarded([&] {
    need(json, "output");
    const auto result = krawlp::load_or_compute_oracle(n, d, linear != 0, cache_dir());
    *json = dup(krawlp::to_json(result, n, d, linear != 0).dump());
  });
}

krawlp_status krawlp_verify(int n, int l, int acceptance, char** report_json, size_t* violations) {
  return guarded([&] {
    const krawlp::VerifyReport report = acceptance ? krawlp::run_acceptance() : krawlp::verify(n, l);
    std::size_t bad = report.violation_count();
    for (const auto& s : report.suites)
      if (s.findings.ok() && !s.ok()) ++bad;
    if (violations) *violations = bad;
    if (report_json) *report_json = dup(krawlp::to_json(report).dump());
  });
}

}  // extern "C"
