#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "krawlp/lp_model.hpp"
#include "krawlp/numeric.hpp"

namespace krawlp {

enum class SolveStatus { Optimal, Infeasible, Unbounded };

const char* to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  Rational value;                 // optimal objective (exact mode); binary value of the float optimum otherwise
  std::vector<Rational> primal;   // one entry per program variable
  std::size_t pivots = 0;
  bool exact = true;              // false for the floating-point screen
  bool certified = false;         // exact re-verification (primal, dual, Farkas or ray) passed
  bool unstable = false;          // float mode: final point violates a row beyond tolerance
};

struct SolverOptions {
  /// Largest-coefficient pivots allowed before switching to Bland's rule for good.
  std::size_t dantzig_pivots = 200;
  /// Total pivot budget across both phases; exceeding it throws Error(Resource).
  std::size_t max_pivots = 200000;
  /// Exact mode: try the optimal basis of a double-precision run first and keep
  /// it only if it certifies exactly; otherwise pivot in rationals from scratch.
  bool warm_start = true;
};

/// Two-phase simplex over exact rationals. Every result is re-verified: optimal
/// points against all rows plus a dual solution of equal value, infeasibility by
/// a Farkas vector, unboundedness by an improving ray. A failed re-verification
/// throws, so a returned result is never silently wrong.
SolveResult solve_exact(const LinearProgram& lp, const SolverOptions& options = {});

/// Same algorithm in double precision; a fast screen only.
SolveResult solve_float(const LinearProgram& lp, double feas_tol = 1e-9, double opt_tol = 1e-9,
                        const SolverOptions& options = {});

/// value^{1/l} rounded down onto the double grid (error below 1 ulp).
double root_value(const Rational& value, int level);

nlohmann::json to_json(const SolveResult& result, const LinearProgram& lp);

}  // namespace krawlp
