#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "krawlp/code.hpp"
#include "krawlp/config.hpp"
#include "krawlp/krawtchouk.hpp"
#include "krawlp/numeric.hpp"

namespace krawlp {

enum class Relation { GreaterEqual, Equal };

struct LpRow {
  std::string name;
  std::vector<Rational> coeffs;  // one per program variable
  Relation relation = Relation::GreaterEqual;
  Rational rhs;

  friend bool operator==(const LpRow&, const LpRow&) = default;
};

enum class LpKind { Delsarte, Krawtchouk, Fourier, Custom };

const char* to_string(LpKind kind);
LpKind lp_kind_from_string(const std::string& text);

/// max objective . x  s.t. rows, x >= 0.
///
/// Variables are a subset of an index set (configurations in canonical order, or
/// points of (F_2^n)^l for Fourier programs). Indices absent from `variables`
/// are eliminated, i.e. pinned to zero.
struct LinearProgram {
  LpKind kind = LpKind::Custom;
  int n = 0;
  int d = 0;
  int level = 0;
  bool linear = false;

  std::size_t index_size = 0;
  std::vector<std::size_t> variables;  // strictly increasing positions in the index set
  std::vector<std::string> variable_names;
  std::vector<Rational> objective;
  std::vector<LpRow> rows;

  std::size_t num_variables() const { return variables.size(); }
  std::optional<std::size_t> variable_of(std::size_t index) const;

  /// Throws Error(InvalidInput) if shapes disagree.
  void validate() const;
};

/// Same variables, objective and rows (metadata ignored).
bool same_program(const LinearProgram& a, const LinearProgram& b);

LinearProgram build_delsarte(int n, int d);

/// General-code program (linear = false) or the linear-code one (linear = true).
LinearProgram build_hierarchy_lp(int n, int d, int level, bool linear);
LinearProgram build_hierarchy_lp(const KrawtchoukTable& table, int d, bool linear);

/// The l-configuration profile of a code, indexed by canonical configuration order.
struct CodeProfile {
  int n = 0;
  int level = 0;
  std::size_t code_size = 0;
  std::vector<Rational> values;

  /// sum_g a_g.
  Rational total() const;
};

/// General formula (pairs of l-tuples, divided by |C|^l), or the span formula
/// for linear codes. Throws Error(NotLinear) when `linear` is set on a non-linear code.
CodeProfile profile_of_code(const CodeSet& code, int level, bool linear);
CodeProfile profile_of_code(const CodeSet& code, const ConfigSpace& space, bool linear);

enum class VerdictKind { Feasible, RowViolated, BoundViolated, DistanceViolated };

struct FeasibilityVerdict {
  VerdictKind kind = VerdictKind::Feasible;
  std::string location;  // first violated row or index
  Rational objective;

  bool feasible() const { return kind == VerdictKind::Feasible; }
};

const char* to_string(VerdictKind kind);

/// `point` covers the whole index set (lp.index_size entries).
FeasibilityVerdict check_feasibility(const LinearProgram& lp, std::span<const Rational> point,
                                     const Rational& tolerance = Rational(0));
FeasibilityVerdict check_feasibility(const LinearProgram& lp, const CodeProfile& profile,
                                     const Rational& tolerance = Rational(0));

enum class LpFormat { LpText, Json };

/// Deterministic serialization. lp-text rounds non-integral coefficients to
/// shortest round-trip decimals and states whether the output is exact.
std::string export_lp(const LinearProgram& lp, LpFormat format);

inline constexpr int kLpJsonVersion = 1;

nlohmann::json lp_to_json(const LinearProgram& lp);
LinearProgram lp_from_json(const nlohmann::json& j);

}  // namespace krawlp
