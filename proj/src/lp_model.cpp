#include "krawlp/lp_model.hpp"

#include <algorithm>
#include <map>

#include "krawlp/error.hpp"

namespace krawlp {

const char* to_string(LpKind kind) {
  switch (kind) {
    case LpKind::Delsarte: return "delsarte";
    case LpKind::Krawtchouk: return "krawtchouk";
    case LpKind::Fourier: return "fourier";
    case LpKind::Custom: return "custom";
  }
  return "custom";
}

LpKind lp_kind_from_string(const std::string& text) {
  if (text == "delsarte") return LpKind::Delsarte;
  if (text == "krawtchouk") return LpKind::Krawtchouk;
  if (text == "fourier") return LpKind::Fourier;
  if (text == "custom") return LpKind::Custom;
  fail(ErrorCode::InvalidInput, "unknown program kind '" + text + "'");
}

const char* to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Feasible: return "feasible";
    case VerdictKind::RowViolated: return "row-violated";
    case VerdictKind::BoundViolated: return "bound-violated";
    case VerdictKind::DistanceViolated: return "distance-violated";
  }
  return "unknown";
}

std::optional<std::size_t> LinearProgram::variable_of(std::size_t index) const {
  const auto it = std::lower_bound(variables.begin(), variables.end(), index);
  if (it == variables.end() || *it != index) return std::nullopt;
  return static_cast<std::size_t>(it - variables.begin());
}

void LinearProgram::validate() const {
  const std::size_t nv = variables.size();
  if (variable_names.size() != nv || objective.size() != nv)
    fail(ErrorCode::InvalidInput, "program variables, names and objective differ in length");
  for (std::size_t i = 0; i < nv; ++i) {
    if (variables[i] >= index_size) fail(ErrorCode::InvalidInput, "variable index outside the index set");
    if (i > 0 && variables[i] <= variables[i - 1])
      fail(ErrorCode::InvalidInput, "variable indices must be strictly increasing");
  }
  for (const auto& row : rows)
    if (row.coeffs.size() != nv) fail(ErrorCode::InvalidInput, "row '" + row.name + "' has the wrong width");
}

bool same_program(const LinearProgram& a, const LinearProgram& b) {
  return a.index_size == b.index_size && a.variables == b.variables && a.variable_names == b.variable_names &&
         a.objective == b.objective && a.rows == b.rows;
}

namespace {

void check_distance(int n, int d, int lo) {
  if (n < 1) fail(ErrorCode::InvalidInput, "blocklength must be positive");
  if (d < lo || d > n + 1)
    fail(ErrorCode::InvalidInput, "distance must lie in [" + std::to_string(lo) + ", n+1], got " +
                                      std::to_string(d));
}

LpRow normalization_row(const LinearProgram& lp) {
  LpRow row{"NORM", std::vector<Rational>(lp.num_variables(), Rational(0)), Relation::Equal, Rational(1)};
  const auto zero = lp.variable_of(0);
  if (!zero) fail(ErrorCode::InvalidInput, "the trivial variable cannot be eliminated");
  row.coeffs[*zero] = 1;
  return row;
}

}  // namespace

LinearProgram build_delsarte(int n, int d) {
  check_distance(n, d, 1);
  LinearProgram lp;
  lp.kind = LpKind::Delsarte;
  lp.n = n;
  lp.d = d;
  lp.level = 1;
  lp.linear = false;
  lp.index_size = static_cast<std::size_t>(n) + 1;
  for (int w = 0; w <= n; ++w) {
    if (w >= 1 && w <= d - 1) continue;
    lp.variables.push_back(static_cast<std::size_t>(w));
    lp.variable_names.push_back("a_" + std::to_string(w));
    lp.objective.emplace_back(1);
  }
  lp.rows.push_back(normalization_row(lp));
  for (int i = 0; i <= n; ++i) {
    LpRow row{"MW_" + std::to_string(i), {}, Relation::GreaterEqual, Rational(0)};
    row.coeffs.reserve(lp.num_variables());
    for (const std::size_t w : lp.variables)
      row.coeffs.emplace_back(classical_krawtchouk(i, static_cast<int>(w), n));
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

LinearProgram build_hierarchy_lp(const KrawtchoukTable& table, int d, bool linear) {
  const int n = table.blocklength();
  check_distance(n, d, 0);
  const auto& space = table.space();
  LinearProgram lp;
  lp.kind = LpKind::Krawtchouk;
  lp.n = n;
  lp.d = d;
  lp.level = table.level();
  lp.linear = linear;
  lp.index_size = space.size();
  for (std::size_t g = 0; g < space.size(); ++g) {
    if (is_forbidden(space.sd(g), d, linear)) continue;
    lp.variables.push_back(g);
    lp.variable_names.push_back("a_" + std::to_string(g));
    lp.objective.emplace_back(1);
  }
  lp.rows.push_back(normalization_row(lp));
  // One row per configuration h, forbidden ones included.
  for (std::size_t h = 0; h < space.size(); ++h) {
    LpRow row{"MW_" + std::to_string(h), {}, Relation::GreaterEqual, Rational(0)};
    row.coeffs.reserve(lp.num_variables());
    for (const std::size_t g : lp.variables) row.coeffs.emplace_back(table(h, g));
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

LinearProgram build_hierarchy_lp(int n, int d, int level, bool linear) {
  check_distance(n, d, 0);
  return build_hierarchy_lp(build_table(n, level), d, linear);
}

Rational CodeProfile::total() const {
  Rational acc = 0;
  for (const auto& v : values) acc += v;
  return acc;
}

namespace {

std::size_t tuple_index(const ConfigSpace& space, std::span<const Word> words, std::vector<int>& cells) {
  std::fill(cells.begin(), cells.end(), 0);
  const int n = space.blocklength();
  for (int i = 0; i < n; ++i) {
    SubsetMask cell = 0;
    for (std::size_t j = 0; j < words.size(); ++j)
      if ((words[j] >> i) & 1U) cell |= SubsetMask{1} << j;
    ++cells[cell];
  }
  return space.index_of_cells(cells);
}

// Visits every l-tuple of items (odometer order).
template <typename Visit>
void for_each_tuple(std::size_t items, int level, Visit&& visit) {
  std::vector<std::size_t> pos(static_cast<std::size_t>(level), 0);
  while (true) {
    visit(pos);
    int j = level - 1;
    while (j >= 0 && ++pos[static_cast<std::size_t>(j)] == items) pos[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) return;
  }
}

}  // namespace

CodeProfile profile_of_code(const CodeSet& code, const ConfigSpace& space, bool linear) {
  if (code.blocklength() != space.blocklength())
    fail(ErrorCode::InvalidInput, "code blocklength does not match the configuration space");
  if (linear && !code.is_linear()) fail(ErrorCode::NotLinear, "code is not XOR-closed or lacks the zero word");
  const int level = space.level();
  CodeProfile profile;
  profile.n = space.blocklength();
  profile.level = level;
  profile.code_size = code.size();
  std::vector<BigInt> counts(space.size(), BigInt(0));
  std::vector<int> cells(std::size_t{1} << level);
  std::vector<Word> tuple(static_cast<std::size_t>(level));

  if (linear) {
    const auto words = code.words();
    for_each_tuple(words.size(), level, [&](const std::vector<std::size_t>& pos) {
      for (std::size_t j = 0; j < pos.size(); ++j) tuple[j] = words[pos[j]];
      ++counts[tuple_index(space, tuple, cells)];
    });
    for (auto& c : counts) profile.values.emplace_back(c);
    return profile;
  }

  // Pairs of l-tuples factor coordinatewise: count differences x - y once.
  std::map<Word, BigInt> diffs;
  for (const Word x : code.words())
    for (const Word y : code.words()) diffs[x ^ y] += 1;
  std::vector<Word> diff_words;
  std::vector<BigInt> diff_counts;
  for (const auto& [w, c] : diffs) {
    diff_words.push_back(w);
    diff_counts.push_back(c);
  }
  for_each_tuple(diff_words.size(), level, [&](const std::vector<std::size_t>& pos) {
    BigInt weight = 1;
    for (std::size_t j = 0; j < pos.size(); ++j) {
      tuple[j] = diff_words[pos[j]];
      weight *= diff_counts[pos[j]];
    }
    counts[tuple_index(space, tuple, cells)] += weight;
  });
  BigInt scale = 1;
  for (int j = 0; j < level; ++j) scale *= static_cast<long>(code.size());
  for (auto& c : counts) profile.values.emplace_back(c, scale);
  return profile;
}

CodeProfile profile_of_code(const CodeSet& code, int level, bool linear) {
  return profile_of_code(code, ConfigSpace(code.blocklength(), level), linear);
}

FeasibilityVerdict check_feasibility(const LinearProgram& lp, std::span<const Rational> point,
                                     const Rational& tolerance) {
  lp.validate();
  if (point.size() != lp.index_size)
    fail(ErrorCode::InvalidInput, "point has " + std::to_string(point.size()) + " entries, program index set has " +
                                      std::to_string(lp.index_size));
  if (tolerance < 0) fail(ErrorCode::InvalidInput, "tolerance must be non-negative");
  FeasibilityVerdict verdict;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (!lp.variable_of(i) && abs(point[i]) > tolerance) {
      verdict.kind = VerdictKind::DistanceViolated;
      verdict.location = "index " + std::to_string(i);
      return verdict;
    }
  }
  std::vector<Rational> x(lp.num_variables());
  for (std::size_t v = 0; v < lp.num_variables(); ++v) {
    x[v] = point[lp.variables[v]];
    if (x[v] < -tolerance) {
      verdict.kind = VerdictKind::BoundViolated;
      verdict.location = lp.variable_names[v];
      return verdict;
    }
  }
  for (const auto& row : lp.rows) {
    Rational lhs = 0;
    for (std::size_t v = 0; v < x.size(); ++v)
      if (row.coeffs[v] != 0 && x[v] != 0) lhs += row.coeffs[v] * x[v];
    const bool ok = row.relation == Relation::Equal ? abs(lhs - row.rhs) <= tolerance : lhs >= row.rhs - tolerance;
    if (!ok) {
      verdict.kind = VerdictKind::RowViolated;
      verdict.location = row.name;
      return verdict;
    }
  }
  for (std::size_t v = 0; v < x.size(); ++v) verdict.objective += lp.objective[v] * x[v];
  return verdict;
}

FeasibilityVerdict check_feasibility(const LinearProgram& lp, const CodeProfile& profile,
                                     const Rational& tolerance) {
  if (lp.kind == LpKind::Fourier || profile.n != lp.n || profile.level != lp.level)
    fail(ErrorCode::InvalidInput, "profile is not indexed compatibly with the program");
  return check_feasibility(lp, std::span<const Rational>(profile.values), tolerance);
}

}  // namespace krawlp
