#include <charconv>
#include <sstream>

#include "krawlp/error.hpp"
#include "krawlp/lp_model.hpp"

namespace krawlp {

namespace {

const char* relation_symbol(Relation r) { return r == Relation::Equal ? "=" : ">="; }

Relation relation_from_symbol(const std::string& s) {
  if (s == "=") return Relation::Equal;
  if (s == ">=") return Relation::GreaterEqual;
  fail(ErrorCode::InvalidInput, "unknown row relation '" + s + "'");
}

// Shortest decimal that round-trips through double; `exact` is cleared when the
// decimal does not equal the rational.
std::string decimal(const Rational& value, bool& exact) {
  if (boost::multiprecision::denominator(value) == 1 && abs(value) < Rational(BigInt(1) << 53))
    return boost::multiprecision::numerator(value).str();
  const double d = to_double(value);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, d);
  if (from_double(d) != value) exact = false;
  return std::string(buf, res.ptr);
}

void write_terms(std::ostream& out, const std::vector<Rational>& coeffs, const std::vector<std::string>& names,
                 bool& exact) {
  bool first = true;
  for (std::size_t v = 0; v < coeffs.size(); ++v) {
    const Rational& c = coeffs[v];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      out << (negative ? "-" : "");
    } else {
      out << (negative ? " - " : " + ");
    }
    if (mag != 1) out << decimal(mag, exact) << ' ';
    out << names[v];
    first = false;
  }
  if (first) out << "0 " << (names.empty() ? "x" : names.front());
}

std::string to_lp_text(const LinearProgram& lp) {
  bool exact = true;
  std::ostringstream body;
  body << "Maximize\n obj: ";
  write_terms(body, lp.objective, lp.variable_names, exact);
  body << "\nSubject To\n";
  for (const auto& row : lp.rows) {
    body << ' ' << row.name << ": ";
    write_terms(body, row.coeffs, lp.variable_names, exact);
    body << ' ' << relation_symbol(row.relation) << ' ';
    if (row.rhs < 0) {
      body << '-' << decimal(Rational(-row.rhs), exact);
    } else {
      body << decimal(row.rhs, exact);
    }
    body << '\n';
  }
  body << "Bounds\n";
  for (const auto& name : lp.variable_names) body << ' ' << name << " >= 0\n";
  body << "End\n";

  std::ostringstream out;
  out << "\\ krawlp " << KRAWLP_VERSION_STRING << " linear program\n";
  out << "\\ kind=" << to_string(lp.kind) << " n=" << lp.n << " d=" << lp.d << " l=" << lp.level
      << " family=" << (lp.linear ? "linear" : "general") << '\n';
  out << "\\ exact=" << (exact ? "true" : "false") << '\n';
  out << body.str();
  return out.str();
}

nlohmann::json fractions(const std::vector<Rational>& values) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : values) out.push_back(to_fraction_string(v));
  return out;
}

std::vector<Rational> parse_fractions(const nlohmann::json& arr) {
  std::vector<Rational> out;
  for (const auto& item : arr) out.push_back(parse_fraction(item.get<std::string>()));
  return out;
}

}  // namespace

nlohmann::json lp_to_json(const LinearProgram& lp) {
  lp.validate();
  nlohmann::json vars = nlohmann::json::array();
  for (std::size_t v = 0; v < lp.num_variables(); ++v)
    vars.push_back({{"name", lp.variable_names[v]}, {"index", lp.variables[v]}});
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : lp.rows)
    rows.push_back({{"name", row.name},
                    {"relation", relation_symbol(row.relation)},
                    {"rhs", to_fraction_string(row.rhs)},
                    {"coeffs", fractions(row.coeffs)}});
  return nlohmann::json{{"schema", "krawlp.lp"},
                        {"version", kLpJsonVersion},
                        {"kind", to_string(lp.kind)},
                        {"n", lp.n},
                        {"d", lp.d},
                        {"l", lp.level},
                        {"linear", lp.linear},
                        {"index_size", lp.index_size},
                        {"variables", std::move(vars)},
                        {"objective", fractions(lp.objective)},
                        {"rows", std::move(rows)}};
}

LinearProgram lp_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<std::string>() != "krawlp.lp") fail(ErrorCode::InvalidInput, "not a krawlp.lp document");
    if (j.at("version").get<int>() != kLpJsonVersion) fail(ErrorCode::InvalidInput, "unsupported LP schema version");
    LinearProgram lp;
    lp.kind = lp_kind_from_string(j.at("kind").get<std::string>());
    lp.n = j.at("n").get<int>();
    lp.d = j.at("d").get<int>();
    lp.level = j.at("l").get<int>();
    lp.linear = j.at("linear").get<bool>();
    lp.index_size = j.at("index_size").get<std::size_t>();
    for (const auto& v : j.at("variables")) {
      lp.variable_names.push_back(v.at("name").get<std::string>());
      lp.variables.push_back(v.at("index").get<std::size_t>());
    }
    lp.objective = parse_fractions(j.at("objective"));
    for (const auto& r : j.at("rows")) {
      lp.rows.push_back(LpRow{r.at("name").get<std::string>(), parse_fractions(r.at("coeffs")),
                              relation_from_symbol(r.at("relation").get<std::string>()),
                              parse_fraction(r.at("rhs").get<std::string>())});
    }
    lp.validate();
    return lp;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("malformed LP JSON: ") + e.what());
  }
}

std::string export_lp(const LinearProgram& lp, LpFormat format) {
  lp.validate();
  if (format == LpFormat::Json) return lp_to_json(lp).dump(1) + "\n";
  return to_lp_text(lp);
}

}  // namespace krawlp
