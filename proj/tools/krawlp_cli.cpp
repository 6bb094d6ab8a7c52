// krawlp-cli: batch front end over the C API.
//
// stdout carries the primary artifact. For record-valued commands (configs,
// solve, oracle, verify) that is the JSON record. For text artifacts (tables,
// programs, grids) the record goes to stdout when -o is given, else to stderr.
// Timings always go to stderr as a separate JSON line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "krawlp/krawlp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitParams = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitInternal = 4;

struct Failure {
  krawlp_status status;
  std::string message;
};

int exit_code(krawlp_status s) {
  switch (s) {
    case KRAWLP_OK: return kExitOk;
    case KRAWLP_ERR_CAPACITY:
    case KRAWLP_ERR_RESOURCE: return kExitCapacity;
    case KRAWLP_ERR_INTERNAL: return kExitInternal;
    default: return kExitParams;
  }
}

void check(krawlp_status s) {
  if (s != KRAWLP_OK) throw Failure{s, krawlp_last_error()};
}

// Owns a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  krawlp_string_free(s);
  return out;
}

struct LpDeleter {
  void operator()(krawlp_lp* p) const { krawlp_lp_free(p); }
};
struct TableDeleter {
  void operator()(krawlp_table* p) const { krawlp_table_free(p); }
};
struct SolutionDeleter {
  void operator()(krawlp_solution* p) const { krawlp_solution_free(p); }
};
using LpPtr = std::unique_ptr<krawlp_lp, LpDeleter>;
using TablePtr = std::unique_ptr<krawlp_table, TableDeleter>;
using SolutionPtr = std::unique_ptr<krawlp_solution, SolutionDeleter>;

struct Options {
  int n = 0;
  int d = 1;
  int l = 1;
  bool linear = false;
  bool general = false;
  bool count = false;
  bool use_float = false;
  bool decimal = false;
  bool acceptance = false;
  std::string kind = "krawtchouk";
  std::string format;
  std::string output;
  std::string input;
  std::optional<std::size_t> h;
  std::optional<std::size_t> g;
  int n_min = 1;
  int n_max = 0;
  std::vector<int> levels{1, 2};
};

nlohmann::json base_record(const std::string& command) {
  return nlohmann::json{{"command", command}, {"version", krawlp_version()}};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{KRAWLP_ERR_IO, "cannot open '" + path + "' for writing"};
  out << text;
  if (!out) throw Failure{KRAWLP_ERR_IO, "write to '" + path + "' failed"};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{KRAWLP_ERR_IO, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Emits a text artifact plus its record per the stream convention above.
void emit_artifact(const Options& o, const std::string& text, nlohmann::json record) {
  if (!o.output.empty()) {
    write_file(o.output, text);
    record["output"] = o.output;
    std::cout << record.dump() << '\n';
  } else {
    std::cout << text;
    std::cerr << record.dump() << '\n';
  }
}

std::string decimal_of(const std::string& fraction) {
  const auto slash = fraction.find('/');
  if (slash == std::string::npos) return fraction;
  const long double v = std::stold(fraction.substr(0, slash)) / std::stold(fraction.substr(slash + 1));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", v);
  return buf;
}

LpPtr make_lp(const Options& o) {
  krawlp_lp* raw = nullptr;
  if (!o.input.empty()) {
    check(krawlp_lp_from_json(read_file(o.input).c_str(), &raw));
  } else if (o.kind == "delsarte") {
    check(krawlp_lp_delsarte(o.n, o.d, &raw));
  } else if (o.kind == "fourier") {
    check(krawlp_lp_fourier(o.n, o.d, o.l, o.linear ? 1 : 0, &raw));
  } else {
    check(krawlp_lp_hierarchy(o.n, o.d, o.l, o.linear ? 1 : 0, &raw));
  }
  return LpPtr(raw);
}

int cmd_configs(const Options& o) {
  auto rec = base_record("configs");
  rec["n"] = o.n;
  rec["l"] = o.l;
  const std::string count = take([&] {
    char* s = nullptr;
    check(krawlp_config_count(o.n, o.l, &s));
    return s;
  }());
  rec["count"] = nlohmann::json::parse(count);
  if (o.count) {
    std::cout << count << '\n';
    std::cerr << rec.dump() << '\n';
    return kExitOk;
  }
  char* s = nullptr;
  check(krawlp_configs_json(o.n, o.l, &s));
  rec["configs"] = nlohmann::json::parse(take(s));
  std::cout << rec.dump(1) << '\n';
  return kExitOk;
}

int cmd_krawtchouk(const Options& o) {
  krawlp_table* raw = nullptr;
  check(krawlp_table_build(o.n, o.l, &raw));
  TablePtr table(raw);
  auto rec = base_record("krawtchouk");
  rec["n"] = o.n;
  rec["l"] = o.l;
  rec["size"] = krawlp_table_size(table.get());
  if (o.h || o.g) {
    if (!o.h || !o.g) throw Failure{KRAWLP_ERR_INVALID_INPUT, "--h and --g go together"};
    char* s = nullptr;
    check(krawlp_table_entry(table.get(), *o.h, *o.g, &s));
    rec["h"] = *o.h;
    rec["g"] = *o.g;
    rec["value"] = take(s);
    std::cout << rec.dump() << '\n';
    return kExitOk;
  }
  char* s = nullptr;
  check(krawlp_table_csv(table.get(), &s));
  rec["format"] = "csv";
  emit_artifact(o, take(s), rec);
  return kExitOk;
}

int cmd_build_lp(const Options& o) {
  LpPtr lp = make_lp(o);
  const bool json = o.format == "json";
  if (!o.format.empty() && o.format != "json" && o.format != "lp")
    throw Failure{KRAWLP_ERR_INVALID_INPUT, "--format is lp or json"};
  char* s = nullptr;
  check(krawlp_lp_export(lp.get(), json ? KRAWLP_FORMAT_JSON : KRAWLP_FORMAT_LP, &s));
  std::size_t vars = 0, rows = 0;
  check(krawlp_lp_dims(lp.get(), &vars, &rows));
  auto rec = base_record("build-lp");
  rec["kind"] = o.input.empty() ? o.kind : "file";
  rec["n"] = o.n;
  rec["d"] = o.d;
  rec["l"] = o.l;
  rec["family"] = o.linear ? "linear" : "general";
  rec["format"] = json ? "json" : "lp";
  rec["variables"] = vars;
  rec["rows"] = rows;
  emit_artifact(o, take(s), rec);
  return kExitOk;
}

int cmd_solve(const Options& o) {
  LpPtr lp = make_lp(o);
  krawlp_solution* raw = nullptr;
  check(krawlp_solve(lp.get(), o.use_float ? KRAWLP_SOLVE_FLOAT : KRAWLP_SOLVE_EXACT, &raw));
  SolutionPtr sol(raw);
  char* s = nullptr;
  check(krawlp_solution_json(sol.get(), &s));
  auto rec = base_record("solve");
  rec["kind"] = o.input.empty() ? o.kind : "file";
  rec["family"] = o.linear ? "linear" : "general";
  rec["result"] = nlohmann::json::parse(take(s));
  if (o.decimal && rec["result"].contains("value"))
    rec["result"]["value_decimal"] = decimal_of(rec["result"]["value"].get<std::string>());
  std::cout << rec.dump(1) << '\n';
  return kExitOk;
}

int cmd_oracle(const Options& o) {
  char* s = nullptr;
  check(krawlp_oracle(o.n, o.d, o.linear ? 1 : 0, &s));
  auto rec = base_record("oracle");
  rec["result"] = nlohmann::json::parse(take(s));
  std::cout << rec.dump(1) << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o) {
  char* s = nullptr;
  std::size_t violations = 0;
  check(krawlp_verify(o.n, o.l, o.acceptance ? 1 : 0, &s, &violations));
  auto report = nlohmann::json::parse(take(s));
  // Timings move to stderr so the record stays deterministic.
  nlohmann::json timings = nlohmann::json::object();
  for (auto& suite : report["suites"]) {
    timings[suite["name"].get<std::string>()] = suite["seconds"];
    suite.erase("seconds");
  }
  auto rec = base_record("verify");
  rec["mode"] = o.acceptance ? "acceptance" : "point";
  rec["report"] = std::move(report);
  std::cout << rec.dump(1) << '\n';
  std::cerr << nlohmann::json{{"suite_seconds", timings}}.dump() << '\n';
  return violations == 0 ? kExitOk : kExitViolation;
}

int cmd_table(const Options& o) {
  const int n_max = o.n_max > 0 ? o.n_max : o.n;
  if (n_max < o.n_min || o.n_min < 1) throw Failure{KRAWLP_ERR_INVALID_INPUT, "need 1 <= --n-min <= --n-max"};
  std::ostringstream csv;
  csv << "n,d,l,family,status,value,root\n";
  std::size_t cells = 0;
  for (int n = o.n_min; n <= n_max; ++n) {
    for (int d = 1; d <= n; ++d) {
      for (const int l : o.levels) {
        for (const bool linear : {false, true}) {
          if ((o.linear && !linear) || (o.general && linear)) continue;
          krawlp_lp* raw = nullptr;
          check(krawlp_lp_hierarchy(n, d, l, linear ? 1 : 0, &raw));
          LpPtr lp(raw);
          krawlp_solution* sraw = nullptr;
          check(krawlp_solve(lp.get(), o.use_float ? KRAWLP_SOLVE_FLOAT : KRAWLP_SOLVE_EXACT, &sraw));
          SolutionPtr sol(sraw);
          csv << n << ',' << d << ',' << l << ',' << (linear ? "linear" : "general") << ',';
          if (krawlp_solution_status(sol.get()) == KRAWLP_OPTIMAL) {
            char* v = nullptr;
            check(krawlp_solution_value(sol.get(), &v));
            double root = 0;
            check(krawlp_solution_root(sol.get(), &root));
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", root);
            const std::string value = take(v);
            csv << "optimal," << (o.decimal ? decimal_of(value) : value) << ',' << buf << '\n';
          } else {
            csv << (krawlp_solution_status(sol.get()) == KRAWLP_INFEASIBLE ? "infeasible" : "unbounded") << ",,\n";
          }
          ++cells;
        }
      }
    }
  }
  auto rec = base_record("table");
  rec["n_min"] = o.n_min;
  rec["n_max"] = n_max;
  rec["levels"] = o.levels;
  rec["cells"] = cells;
  emit_artifact(o, csv.str(), rec);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Krawtchouk LP hierarchy for binary codes"};
  app.set_help_flag("--help", "print help");  // -h would shadow --h
  app.set_version_flag("--version", std::string(krawlp_version()));
  app.require_subcommand(1);
  Options o;

  const auto add_n = [&](CLI::App* c) { c->add_option("--n", o.n, "blocklength")->required()->check(CLI::PositiveNumber); };
  const auto add_l = [&](CLI::App* c) { c->add_option("--l", o.l, "level")->check(CLI::PositiveNumber); };
  const auto add_family = [&](CLI::App* c) {
    auto* lin = c->add_flag("--linear", o.linear, "linear-code program");
    auto* gen = c->add_flag("--general", o.general, "general-code program (default)");
    lin->excludes(gen);
  };
  const auto add_lp_source = [&](CLI::App* c) {
    c->add_option("--n", o.n, "blocklength")->check(CLI::PositiveNumber);
    c->add_option("--d", o.d, "minimum distance")->check(CLI::NonNegativeNumber);
    add_l(c);
    add_family(c);
    c->add_option("--kind", o.kind, "program family")->check(CLI::IsMember({"delsarte", "krawtchouk", "fourier"}));
    c->add_option("--input", o.input, "read a JSON program instead of building one");
  };

  auto* configs = app.add_subcommand("configs", "list or count configurations");
  add_n(configs);
  add_l(configs);
  configs->add_flag("--count", o.count, "print only the count");

  auto* kraw = app.add_subcommand("krawtchouk", "Krawtchouk table as CSV, or a single entry");
  add_n(kraw);
  add_l(kraw);
  kraw->add_option("--h", o.h, "row configuration index");
  kraw->add_option("--g", o.g, "column configuration index");
  kraw->add_option("-o,--output", o.output, "output file");

  auto* build = app.add_subcommand("build-lp", "write a linear program");
  add_lp_source(build);
  build->add_option("--format", o.format, "lp (default) or json");
  build->add_option("-o,--output", o.output, "output file");

  auto* solve = app.add_subcommand("solve", "solve a program; reports value and value^(1/l)");
  add_lp_source(solve);
  solve->add_flag("--float", o.use_float, "floating-point screen instead of exact simplex");
  solve->add_flag("--decimal", o.decimal, "also print a rounded decimal value");

  auto* oracle = app.add_subcommand("oracle", "largest code by exhaustive search");
  add_n(oracle);
  oracle->add_option("--d", o.d, "minimum distance")->required()->check(CLI::NonNegativeNumber);
  add_family(oracle);

  auto* verify = app.add_subcommand("verify", "run property suites; exit 1 on any violation");
  verify->add_option("--n", o.n, "blocklength")->check(CLI::PositiveNumber);
  add_l(verify);
  verify->add_flag("--acceptance", o.acceptance, "run the full acceptance grid instead");

  auto* table = app.add_subcommand("table", "sweep hierarchy values over a grid into CSV");
  table->add_option("--n-min", o.n_min, "smallest blocklength")->check(CLI::PositiveNumber);
  table->add_option("--n-max,--n", o.n_max, "largest blocklength")->required()->check(CLI::PositiveNumber);
  table->add_option("--levels", o.levels, "levels to include")->delimiter(',');
  add_family(table);
  table->add_flag("--float", o.use_float, "floating-point screen");
  table->add_flag("--decimal", o.decimal, "rounded decimal values");
  table->add_option("-o,--output", o.output, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParams;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  std::string name;
  try {
    if (*configs) {
      name = "configs";
      code = cmd_configs(o);
    } else if (*kraw) {
      name = "krawtchouk";
      code = cmd_krawtchouk(o);
    } else if (*build) {
      name = "build-lp";
      if (o.input.empty() && o.n < 1) throw Failure{KRAWLP_ERR_INVALID_INPUT, "--n or --input is required"};
      code = cmd_build_lp(o);
    } else if (*solve) {
      name = "solve";
      if (o.input.empty() && o.n < 1) throw Failure{KRAWLP_ERR_INVALID_INPUT, "--n or --input is required"};
      code = cmd_solve(o);
    } else if (*oracle) {
      name = "oracle";
      code = cmd_oracle(o);
    } else if (*verify) {
      name = "verify";
      if (!o.acceptance && o.n < 1) throw Failure{KRAWLP_ERR_INVALID_INPUT, "--n or --acceptance is required"};
      code = cmd_verify(o);
    } else {
      name = "table";
      code = cmd_table(o);
    }
  } catch (const Failure& f) {
    nlohmann::json err{{"command", name},
                       {"version", krawlp_version()},
                       {"error", krawlp_status_name(f.status)},
                       {"message", f.message}};
    std::cerr << err.dump() << '\n';
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"command", name}, {"error", "internal"}, {"message", e.what()}}.dump() << '\n';
    return kExitInternal;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << nlohmann::json{{"timing", {{"command", name}, {"seconds", seconds}}}}.dump() << '\n';
  return code;
}
