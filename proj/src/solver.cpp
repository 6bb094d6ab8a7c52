#include "krawlp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <type_traits>

#include "krawlp/error.hpp"

namespace krawlp {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Sign tests for the two scalar types.
struct ExactArith {
  bool pos(const Rational& x) const { return x > 0; }
  bool neg(const Rational& x) const { return x < 0; }
  bool zero(const Rational& x) const { return x == 0; }
  static Rational from(const Rational& r) { return r; }
};

struct FloatArith {
  double eps;
  bool pos(double x) const { return x > eps; }
  bool neg(double x) const { return x < -eps; }
  bool zero(double x) const { return std::fabs(x) <= eps; }
  static double from(const Rational& r) { return to_double(r); }
};

// max c.x s.t. A x = b, x >= 0, b >= 0, with an identity starting basis made of
// slack or artificial columns.
struct StandardForm {
  std::size_t num_struct = 0;
  std::size_t first_artificial = 0;
  std::size_t num_cols = 0;
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  std::vector<Rational> cost;        // phase-2 costs
  std::vector<std::size_t> basis;    // initial basis, one per row
  std::vector<std::size_t> struct_of_var;  // program variable -> column, kNone if presolved away
  bool trivially_infeasible = false;
  bool trivially_unbounded = false;
  std::size_t unbounded_var = kNone;
};

bool row_is_empty(const LpRow& row) {
  for (const auto& c : row.coeffs)
    if (c != 0) return false;
  return true;
}

StandardForm to_standard_form(const LinearProgram& lp) {
  lp.validate();
  StandardForm sf;
  const std::size_t nv = lp.num_variables();

  // Presolve: empty rows are checked and dropped; empty columns are fixed at zero
  // unless they improve the objective, which makes the program unbounded.
  std::vector<const LpRow*> rows;
  for (const auto& row : lp.rows) {
    if (row_is_empty(row)) {
      const bool ok = row.relation == Relation::Equal ? row.rhs == 0 : row.rhs <= 0;
      if (!ok) sf.trivially_infeasible = true;
      continue;
    }
    // Exact duplicates add nothing and leave the basis rank-deficient.
    bool duplicate = false;
    for (const LpRow* seen : rows)
      if (seen->relation == row.relation && seen->rhs == row.rhs && seen->coeffs == row.coeffs) {
        duplicate = true;
        break;
      }
    if (!duplicate) rows.push_back(&row);
  }
  sf.struct_of_var.assign(nv, kNone);
  std::vector<std::size_t> kept;
  for (std::size_t v = 0; v < nv; ++v) {
    bool empty = true;
    for (const LpRow* row : rows)
      if (row->coeffs[v] != 0) {
        empty = false;
        break;
      }
    if (empty) {
      if (lp.objective[v] > 0 && !sf.trivially_unbounded) {
        sf.trivially_unbounded = true;
        sf.unbounded_var = v;
      }
      continue;
    }
    sf.struct_of_var[v] = kept.size();
    kept.push_back(v);
  }
  sf.num_struct = kept.size();

  const std::size_t m = rows.size();
  std::size_t num_slack = 0;
  for (const LpRow* row : rows)
    if (row->relation == Relation::GreaterEqual) ++num_slack;
  std::size_t num_art = 0;
  std::vector<bool> needs_art(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    const LpRow& row = *rows[i];
    needs_art[i] = row.relation == Relation::Equal || row.rhs > 0;
    if (needs_art[i]) ++num_art;
  }
  sf.first_artificial = sf.num_struct + num_slack;
  sf.num_cols = sf.first_artificial + num_art;
  sf.A.assign(m, std::vector<Rational>(sf.num_cols, Rational(0)));
  sf.b.assign(m, Rational(0));
  sf.cost.assign(sf.num_cols, Rational(0));
  for (std::size_t k = 0; k < kept.size(); ++k) sf.cost[k] = lp.objective[kept[k]];
  sf.basis.assign(m, kNone);

  std::size_t slack = sf.num_struct;
  std::size_t art = sf.first_artificial;
  for (std::size_t i = 0; i < m; ++i) {
    const LpRow& row = *rows[i];
    // GE rows with rhs <= 0 are negated so their slack enters the basis with a
    // non-negative value; everything else gets an artificial.
    const bool negate = row.rhs < 0 || (row.relation == Relation::GreaterEqual && row.rhs == 0);
    const Rational sign = negate ? Rational(-1) : Rational(1);
    for (std::size_t k = 0; k < kept.size(); ++k) sf.A[i][k] = sign * row.coeffs[kept[k]];
    sf.b[i] = sign * row.rhs;
    if (row.relation == Relation::GreaterEqual) {
      sf.A[i][slack] = -sign;
      if (!needs_art[i]) sf.basis[i] = slack;
      ++slack;
    }
    if (needs_art[i]) {
      sf.A[i][art] = 1;
      sf.basis[i] = art++;
    }
  }
  return sf;
}

template <typename T, typename Arith>
class Tableau {
 public:
  Tableau(const StandardForm& sf, const Arith& arith, const SolverOptions& options, bool perturb = false)
      : arith_(arith), options_(options), basis_(sf.basis), banned_(sf.num_cols, false) {
    rows_.resize(sf.A.size());
    rhs_.resize(sf.A.size());
    for (std::size_t i = 0; i < sf.A.size(); ++i) {
      rows_[i].reserve(sf.num_cols);
      for (const auto& a : sf.A[i]) rows_[i].push_back(Arith::from(a));
      rhs_[i] = Arith::from(sf.b[i]);
    }
    scale_.assign(sf.num_cols, T(1));
    alive_.assign(sf.A.size(), true);
    if constexpr (std::is_same_v<T, double>) {
      equilibrate();
      // Distinct tiny rhs shifts break the ties that stall degenerate programs.
      if (perturb)
        for (std::size_t i = 0; i < rhs_.size(); ++i) rhs_[i] += 1e-7 * (1.0 + static_cast<double>((i * 7919) % 997) / 997.0);
      orig_ = rows_;
      orig_rhs_ = rhs_;
    }
  }

  enum class Outcome { Optimal, Unbounded };

  // Sets the cost vector and recomputes reduced costs for the current basis.
  void set_costs(const std::vector<T>& costs) {
    costs_ = costs;
    for (std::size_t j = 0; j < costs_.size(); ++j) costs_[j] *= scale_[j];
    reprice();
  }

  Outcome run() {
    std::size_t since_refactor = 0;
    while (true) {
      std::size_t q = entering();
      if constexpr (std::is_same_v<T, double>) {
        // Reinvert periodically and before trusting an optimality claim.
        if (q == kNone || since_refactor >= kRefactorEvery) {
          refactor();
          since_refactor = 0;
          q = entering();
        }
      }
      if (q == kNone) return Outcome::Optimal;
      const std::size_t p = leaving(q);
      if (p == kNone) {
        ray_column_ = q;
        return Outcome::Unbounded;
      }
      pivot(p, q);
      ++since_refactor;
    }
  }

 private:
  static constexpr std::size_t kRefactorEvery = 100;

  void reprice() {
    reduced_ = costs_;
    objective_ = T(0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (!alive_[i]) continue;
      const T& cb = costs_[basis_[i]];
      if (arith_.zero(cb)) continue;
      for (std::size_t j = 0; j < reduced_.size(); ++j)
        if (!arith_.zero(rows_[i][j])) reduced_[j] -= cb * rows_[i][j];
      objective_ += cb * rhs_[i];
    }
  }

 public:
  void ban(std::size_t col) { banned_[col] = true; }

  // Pivots basic artificials out of the basis; rows that cannot be repaired are
  // linearly dependent and are retired.
  void drive_out(std::size_t first_artificial) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (!alive_[i] || basis_[i] < first_artificial) continue;
      std::size_t col = kNone;
      for (std::size_t j = 0; j < first_artificial; ++j)
        if (!arith_.zero(rows_[i][j])) {
          col = j;
          break;
        }
      if (col == kNone) {
        alive_[i] = false;
      } else {
        pivot(i, col);
      }
    }
  }

  const T& objective() const { return objective_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const std::vector<bool>& alive() const { return alive_; }
  const std::vector<T>& rhs() const { return rhs_; }
  std::size_t pivots() const { return pivots_; }
  std::size_t ray_column() const { return ray_column_; }
  const T& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }

  std::vector<T> primal(std::size_t num_cols) const {
    std::vector<T> x(num_cols, T(0));
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (alive_[i]) x[basis_[i]] = rhs_[i] * scale_[basis_[i]];
    return x;
  }

 private:
  // Double only: recomputes the tableau as B^-1 [A | b] from the scaled
  // original rows, discarding accumulated rounding. Skipped if B looks singular.
  void refactor() {
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (alive_[i]) live.push_back(i);
    const std::size_t k = live.size();
    const std::size_t nc = scale_.size();
    std::vector<std::vector<double>> B(k, std::vector<double>(k));
    std::vector<std::vector<double>> R(k);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) B[r][c] = orig_[live[r]][basis_[live[c]]];
      R[r] = orig_[live[r]];
      R[r].push_back(orig_rhs_[live[r]]);
    }
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < k; ++r)
        if (std::fabs(B[r][c]) > std::fabs(B[piv][c])) piv = r;
      if (std::fabs(B[piv][c]) < 1e-11) return;
      std::swap(B[piv], B[c]);
      std::swap(R[piv], R[c]);
      const double inv = 1.0 / B[c][c];
      for (auto& v : B[c]) v *= inv;
      for (auto& v : R[c]) v *= inv;
      for (std::size_t r = 0; r < k; ++r) {
        const double f = B[r][c];
        if (r == c || f == 0.0) continue;
        for (std::size_t j = c; j < k; ++j) B[r][j] -= f * B[c][j];
        for (std::size_t j = 0; j <= nc; ++j) R[r][j] -= f * R[c][j];
      }
    }
    for (std::size_t c = 0; c < k; ++c) {
      auto& row = rows_[live[c]];
      for (std::size_t j = 0; j < nc; ++j) row[j] = std::fabs(R[c][j]) <= 1e-12 ? 0.0 : R[c][j];
      for (std::size_t r = 0; r < k; ++r) row[basis_[live[r]]] = r == c ? 1.0 : 0.0;
      rhs_[live[c]] = R[c][nc] < 0.0 && R[c][nc] > -1e-9 ? 0.0 : R[c][nc];
    }
    reprice();
  }

  // Double only: rows then columns scaled to unit max-abs, twice over. Column j
  // of the tableau holds A_j * scale_[j], so x_j = scale_[j] * x'_j.
  void equilibrate() {
    for (int round = 0; round < 2; ++round) {
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        double big = 0.0;
        for (const double v : rows_[i]) big = std::max(big, std::fabs(v));
        if (big == 0.0) continue;
        for (double& v : rows_[i]) v /= big;
        rhs_[i] /= big;
      }
      for (std::size_t j = 0; j < scale_.size(); ++j) {
        double big = 0.0;
        for (const auto& row : rows_) big = std::max(big, std::fabs(row[j]));
        if (big == 0.0) continue;
        for (auto& row : rows_) row[j] /= big;
        scale_[j] /= big;
      }
    }
  }

  std::size_t entering() const {
    std::size_t best = kNone;
    for (std::size_t j = 0; j < reduced_.size(); ++j) {
      if (banned_[j] || !arith_.pos(reduced_[j])) continue;
      if (bland()) return j;
      if (best == kNone || reduced_[j] > reduced_[best]) best = j;
    }
    return best;
  }

  std::size_t leaving(std::size_t q) const {
    if constexpr (std::is_same_v<T, double>) return leaving_harris(q);
    std::size_t best = kNone;
    T best_ratio{};
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (!alive_[i] || !arith_.pos(rows_[i][q])) continue;
      T ratio = rhs_[i] / rows_[i][q];
      if (best == kNone || ratio < best_ratio ||
          (!(best_ratio < ratio) && basis_[i] < basis_[best])) {
        best = i;
        best_ratio = std::move(ratio);
      }
    }
    return best;
  }

  // Two-pass ratio test: bound the step with a small feasibility slack, then
  // take the largest pivot element under that bound. Keeps doubles stable.
  std::size_t leaving_harris(std::size_t q) const {
    constexpr double kPivotTol = 1e-9, kFeasTol = 1e-9;
    double bound = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const double a = rows_[i][q];
      if (!alive_[i] || a <= kPivotTol) continue;
      bound = std::min(bound, (std::max(rhs_[i], 0.0) + kFeasTol) / a);
    }
    std::size_t best = kNone;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const double a = rows_[i][q];
      if (!alive_[i] || a <= kPivotTol || std::max(rhs_[i], 0.0) / a > bound) continue;
      if (best == kNone || a > rows_[best][q]) best = i;
    }
    return best;
  }

  bool bland() const { return pivots_ >= options_.dantzig_pivots; }

  void pivot(std::size_t p, std::size_t q) {
    if (++pivots_ > options_.max_pivots)
      fail(ErrorCode::Resource, "simplex pivot budget of " + std::to_string(options_.max_pivots) + " exceeded");
    auto& prow = rows_[p];
    const T inv = T(1) / prow[q];
    for (auto& v : prow)
      if (!arith_.zero(v)) v *= inv;
    rhs_[p] *= inv;
    if constexpr (std::is_same_v<T, double>) rhs_[p] = std::max(rhs_[p], 0.0);
    prow[q] = T(1);
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < prow.size(); ++j)
      if (!arith_.zero(prow[j])) nz.push_back(j);
    auto eliminate = [&](std::vector<T>& row, T& rhs_or_obj, bool is_objective) {
      const T factor = row[q];
      if (arith_.zero(factor)) return;
      for (const std::size_t j : nz) row[j] -= factor * prow[j];
      row[q] = T(0);
      if (is_objective) {
        rhs_or_obj += factor * rhs_[p];
      } else {
        rhs_or_obj -= factor * rhs_[p];
      }
    };
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (i != p && alive_[i]) eliminate(rows_[i], rhs_[i], false);
    eliminate(reduced_, objective_, true);
    basis_[p] = q;
    if constexpr (std::is_same_v<T, double>)
      for (auto& r : rhs_)
        if (r < 0.0 && r > -1e-9) r = 0.0;
  }

  Arith arith_;
  SolverOptions options_;
  std::vector<std::vector<T>> rows_;
  std::vector<T> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<bool> banned_;
  std::vector<bool> alive_;
  std::vector<T> costs_;
  std::vector<T> scale_;
  std::vector<std::vector<T>> orig_;
  std::vector<T> orig_rhs_;
  std::vector<T> reduced_;
  T objective_{};
  std::size_t pivots_ = 0;
  std::size_t ray_column_ = kNone;
};

// Gauss-Jordan on the square submatrix A[rows, cols]. With `transpose` it
// solves the system with the transposed matrix and rhs indexed by `cols`,
// otherwise rhs is indexed by `rows`. Returns empty if the submatrix is singular.
std::vector<Rational> solve_basis(const StandardForm& sf, const std::vector<std::size_t>& rows,
                                  const std::vector<std::size_t>& cols, const std::vector<Rational>& rhs,
                                  bool transpose) {
  const std::size_t k = rows.size();
  std::vector<std::vector<Rational>> M(k, std::vector<Rational>(k + 1));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) M[r][c] = transpose ? sf.A[rows[c]][cols[r]] : sf.A[rows[r]][cols[c]];
    M[r][k] = transpose ? rhs[cols[r]] : rhs[rows[r]];
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    while (piv < k && M[piv][col] == 0) ++piv;
    if (piv == k) return {};
    std::swap(M[piv], M[col]);
    const Rational inv = Rational(1) / M[col][col];
    for (std::size_t c = col; c <= k; ++c)
      if (M[col][c] != 0) M[col][c] *= inv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || M[r][col] == 0) continue;
      const Rational f = M[r][col];
      for (std::size_t c = col; c <= k; ++c)
        if (M[col][c] != 0) M[r][c] -= f * M[col][c];
    }
  }
  std::vector<Rational> out(k);
  for (std::size_t c = 0; c < k; ++c) out[c] = std::move(M[c][k]);
  return out;
}

// Picks a maximal independent set of `cols` together with one pivot row per
// kept column, by exact elimination on A[:, cols].
void independent_subset(const StandardForm& sf, std::vector<std::size_t> cols, std::vector<std::size_t>& rows_out,
                        std::vector<std::size_t>& cols_out) {
  const std::size_t m = sf.A.size();
  std::vector<std::vector<Rational>> M(m, std::vector<Rational>(cols.size()));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c < cols.size(); ++c) M[i][c] = sf.A[i][cols[c]];
  std::vector<bool> used(m, false);
  rows_out.clear();
  cols_out.clear();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    std::size_t piv = kNone;
    for (std::size_t i = 0; i < m && piv == kNone; ++i)
      if (!used[i] && M[i][c] != 0) piv = i;
    if (piv == kNone) continue;
    used[piv] = true;
    rows_out.push_back(piv);
    cols_out.push_back(cols[c]);
    for (std::size_t i = 0; i < m; ++i) {
      if (used[i] || M[i][c] == 0) continue;
      const Rational f = M[i][c] / M[piv][c];
      for (std::size_t k = c; k < cols.size(); ++k)
        if (M[piv][k] != 0) M[i][k] -= f * M[piv][k];
    }
  }
}

std::vector<std::size_t> live_rows(const std::vector<bool>& alive) {
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < alive.size(); ++i)
    if (alive[i]) live.push_back(i);
  return live;
}

// Solves B^T y = c_B over the live rows; dead rows get y = 0.
std::vector<Rational> dual_from_basis(const StandardForm& sf, const std::vector<std::size_t>& basis,
                                      const std::vector<bool>& alive, const std::vector<Rational>& costs) {
  const auto live = live_rows(alive);
  std::vector<std::size_t> cols;
  for (const std::size_t i : live) cols.push_back(basis[i]);
  const auto sol = solve_basis(sf, live, cols, costs, true);
  if (sol.size() != live.size()) fail(ErrorCode::Resource, "singular basis during certification");
  std::vector<Rational> y(sf.A.size(), Rational(0));
  for (std::size_t c = 0; c < live.size(); ++c) y[live[c]] = sol[c];
  return y;
}

// A^T y >= costs on every column below `limit`; returns b . y.
bool dual_feasible(const StandardForm& sf, const std::vector<Rational>& y, const std::vector<Rational>& costs,
                   std::size_t limit, Rational& bound) {
  for (std::size_t j = 0; j < limit; ++j) {
    Rational acc = 0;
    for (std::size_t i = 0; i < sf.A.size(); ++i)
      if (y[i] != 0 && sf.A[i][j] != 0) acc += sf.A[i][j] * y[i];
    if (acc < costs[j]) return false;
  }
  bound = 0;
  for (std::size_t i = 0; i < sf.A.size(); ++i) bound += sf.b[i] * y[i];
  return true;
}

std::vector<Rational> program_point(const LinearProgram& lp, const StandardForm& sf,
                                    const std::vector<Rational>& x) {
  std::vector<Rational> out(lp.num_variables(), Rational(0));
  for (std::size_t v = 0; v < out.size(); ++v)
    if (sf.struct_of_var[v] != kNone) out[v] = x[sf.struct_of_var[v]];
  return out;
}

bool satisfies_rows(const LinearProgram& lp, const std::vector<Rational>& x) {
  for (const auto& v : x)
    if (v < 0) return false;
  for (const auto& row : lp.rows) {
    Rational lhs = 0;
    for (std::size_t v = 0; v < x.size(); ++v)
      if (row.coeffs[v] != 0 && x[v] != 0) lhs += row.coeffs[v] * x[v];
    if (row.relation == Relation::Equal ? lhs != row.rhs : lhs < row.rhs) return false;
  }
  return true;
}

Rational objective_of(const LinearProgram& lp, const std::vector<Rational>& x) {
  Rational acc = 0;
  for (std::size_t v = 0; v < x.size(); ++v) acc += lp.objective[v] * x[v];
  return acc;
}

void certification_failure(const char* what) {
  fail(ErrorCode::Resource, std::string("exact re-verification failed: ") + what);
}

// Runs the double tableau and, if it ends optimal, recomputes its final basis
// exactly. Returns a certified result, or nothing when the basis does not
// survive exact arithmetic.
std::optional<SolveResult> solve_from_float_basis(const LinearProgram& lp, const StandardForm& sf,
                                                  const SolverOptions& options) {
  Tableau<double, FloatArith> tab(sf, FloatArith{1e-9}, options, true);
  std::vector<double> phase1(sf.num_cols, 0.0);
  for (std::size_t j = sf.first_artificial; j < sf.num_cols; ++j) phase1[j] = -1.0;
  tab.set_costs(phase1);
  tab.run();
  if (tab.objective() < -1e-6) return std::nullopt;
  tab.drive_out(sf.first_artificial);
  for (std::size_t j = sf.first_artificial; j < sf.num_cols; ++j) tab.ban(j);
  std::vector<double> costs;
  for (const auto& c : sf.cost) costs.push_back(to_double(c));
  tab.set_costs(costs);
  if (tab.run() != decltype(tab)::Outcome::Optimal) return std::nullopt;

  // The double run may keep a dependent row alive on rounding noise, so the
  // exact basis is rebuilt from its columns rather than its row bookkeeping.
  std::vector<std::size_t> basic;
  const auto level = tab.primal(sf.num_cols);
  for (std::size_t i = 0; i < sf.A.size(); ++i)
    if (tab.alive()[i] && tab.basis()[i] < sf.first_artificial) basic.push_back(tab.basis()[i]);
  // Columns the float run left near zero are the first to go if the rank is short.
  std::stable_sort(basic.begin(), basic.end(), [&](std::size_t a, std::size_t b) { return level[a] > level[b]; });
  // A basis that is singular in exact arithmetic gets completed from the
  // remaining columns, slacks before structurals.
  std::vector<bool> in_basic(sf.num_cols, false);
  for (const std::size_t c : basic) in_basic[c] = true;
  for (std::size_t j = sf.num_struct; j < sf.first_artificial; ++j)
    if (!in_basic[j]) basic.push_back(j);
  for (std::size_t j = 0; j < sf.num_struct; ++j)
    if (!in_basic[j]) basic.push_back(j);
  std::vector<std::size_t> rows, cols;
  independent_subset(sf, basic, rows, cols);
  const auto xb = solve_basis(sf, rows, cols, sf.b, false);
  if (xb.size() != rows.size()) return std::nullopt;
  std::vector<Rational> x(sf.num_cols, Rational(0));
  for (std::size_t c = 0; c < cols.size(); ++c) x[cols[c]] = xb[c];

  SolveResult result;
  result.exact = true;
  result.pivots = tab.pivots();
  result.primal = program_point(lp, sf, x);
  // Rows outside the pivot set hold only if the float run got the rank right.
  if (!satisfies_rows(lp, result.primal)) return std::nullopt;
  result.value = objective_of(lp, result.primal);
  const auto yr = solve_basis(sf, rows, cols, sf.cost, true);
  if (yr.size() != rows.size()) return std::nullopt;
  std::vector<Rational> y(sf.A.size(), Rational(0));
  for (std::size_t c = 0; c < rows.size(); ++c) y[rows[c]] = yr[c];
  // Weak duality: a feasible dual of equal value proves optimality.
  Rational bound;
  if (!dual_feasible(sf, y, sf.cost, sf.first_artificial, bound) || bound != result.value) return std::nullopt;
  result.status = SolveStatus::Optimal;
  result.certified = true;
  return result;
}

}  // namespace

SolveResult solve_exact(const LinearProgram& lp, const SolverOptions& options) {
  const StandardForm sf = to_standard_form(lp);
  SolveResult result;
  result.exact = true;
  if (sf.trivially_infeasible) {
    result.status = SolveStatus::Infeasible;
    result.certified = true;  // an empty row contradicts its right-hand side
    return result;
  }

  if (options.warm_start && !sf.trivially_unbounded) {
    try {
      if (auto warm = solve_from_float_basis(lp, sf, options)) return *warm;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Resource) throw;  // float pivot budget: fall through
    }
  }

  Tableau<Rational, ExactArith> tab(sf, ExactArith{}, options);
  std::vector<Rational> phase1(sf.num_cols, Rational(0));
  for (std::size_t j = sf.first_artificial; j < sf.num_cols; ++j) phase1[j] = -1;
  tab.set_costs(phase1);
  tab.run();  // bounded above by 0
  if (tab.objective() < 0) {
    const auto y = dual_from_basis(sf, tab.basis(), tab.alive(), phase1);
    Rational bound;
    if (!dual_feasible(sf, y, phase1, sf.num_cols, bound) || bound >= 0) certification_failure("Farkas vector");
    result.status = SolveStatus::Infeasible;
    result.certified = true;
    result.pivots = tab.pivots();
    return result;
  }
  if (sf.trivially_unbounded) {
    result.status = SolveStatus::Unbounded;
    result.certified = true;  // objective-improving column absent from every row
    result.pivots = tab.pivots();
    return result;
  }

  tab.drive_out(sf.first_artificial);
  for (std::size_t j = sf.first_artificial; j < sf.num_cols; ++j) tab.ban(j);
  tab.set_costs(sf.cost);
  const auto outcome = tab.run();
  result.pivots = tab.pivots();

  if (outcome == decltype(tab)::Outcome::Unbounded) {
    // Ray: +1 on the entering column, minus its tableau column on the basis.
    const std::size_t q = tab.ray_column();
    std::vector<Rational> ray(sf.num_cols, Rational(0));
    ray[q] = 1;
    for (std::size_t i = 0; i < sf.A.size(); ++i)
      if (tab.alive()[i]) ray[tab.basis()[i]] -= tab.at(i, q);
    Rational gain = 0;
    for (std::size_t j = 0; j < sf.num_cols; ++j) {
      if (ray[j] < 0) certification_failure("negative ray component");
      gain += sf.cost[j] * ray[j];
    }
    for (std::size_t i = 0; i < sf.A.size(); ++i) {
      Rational acc = 0;
      for (std::size_t j = 0; j < sf.num_cols; ++j) acc += sf.A[i][j] * ray[j];
      if (acc != 0) certification_failure("ray leaves the affine hull");
    }
    if (gain <= 0) certification_failure("ray does not improve the objective");
    result.status = SolveStatus::Unbounded;
    result.certified = true;
    return result;
  }

  const auto x = tab.primal(sf.num_cols);
  result.primal = program_point(lp, sf, x);
  result.value = objective_of(lp, result.primal);
  if (result.value != tab.objective()) certification_failure("objective bookkeeping");
  if (!satisfies_rows(lp, result.primal)) certification_failure("primal point infeasible");
  const auto y = dual_from_basis(sf, tab.basis(), tab.alive(), sf.cost);
  Rational bound;
  if (!dual_feasible(sf, y, sf.cost, sf.first_artificial, bound)) certification_failure("dual infeasible");
  if (bound != result.value) certification_failure("duality gap");
  result.status = SolveStatus::Optimal;
  result.certified = true;
  return result;
}

SolveResult solve_float(const LinearProgram& lp, double feas_tol, double opt_tol, const SolverOptions& options) {
  if (!(feas_tol > 0) || !(opt_tol > 0)) fail(ErrorCode::InvalidInput, "tolerances must be positive");
  const StandardForm sf = to_standard_form(lp);
  SolveResult result;
  result.exact = false;
  if (sf.trivially_infeasible) {
    result.status = SolveStatus::Infeasible;
    return result;
  }
  Tableau<double, FloatArith> tab(sf, FloatArith{opt_tol}, options);
  std::vector<double> phase1(sf.num_cols, 0.0);
  for (std::size_t j = sf.first_artificial; j < sf.num_cols; ++j) phase1[j] = -1.0;
  tab.set_costs(phase1);
  tab.run();
  if (tab.objective() < -feas_tol) {
    result.status = SolveStatus::Infeasible;
    result.pivots = tab.pivots();
    return result;
  }
  if (sf.trivially_unbounded) {
    result.status = SolveStatus::Unbounded;
    result.pivots = tab.pivots();
    return result;
  }
  tab.drive_out(sf.first_artificial);
  for (std::size_t j = sf.first_artificial; j < sf.num_cols; ++j) tab.ban(j);
  std::vector<double> costs;
  for (const auto& c : sf.cost) costs.push_back(to_double(c));
  tab.set_costs(costs);
  const auto outcome = tab.run();
  result.pivots = tab.pivots();
  if (outcome == decltype(tab)::Outcome::Unbounded) {
    result.status = SolveStatus::Unbounded;
    return result;
  }
  const auto x = tab.primal(sf.num_cols);
  result.primal.assign(lp.num_variables(), Rational(0));
  double value = 0.0;
  std::vector<double> xp(lp.num_variables(), 0.0);
  for (std::size_t v = 0; v < lp.num_variables(); ++v) {
    if (sf.struct_of_var[v] == kNone) continue;
    xp[v] = std::max(0.0, x[sf.struct_of_var[v]]);
    result.primal[v] = from_double(xp[v]);
    value += to_double(lp.objective[v]) * xp[v];
  }
  // Stability screen: every row within a scaled feasibility tolerance.
  for (const auto& row : lp.rows) {
    double lhs = 0.0;
    double scale = 1.0;
    for (std::size_t v = 0; v < xp.size(); ++v) {
      const double term = to_double(row.coeffs[v]) * xp[v];
      lhs += term;
      scale += std::fabs(term);
    }
    const double gap = lhs - to_double(row.rhs);
    const bool bad = row.relation == Relation::Equal ? std::fabs(gap) > feas_tol * scale : gap < -feas_tol * scale;
    if (bad) result.unstable = true;
  }
  result.value = from_double(value);
  result.status = SolveStatus::Optimal;
  return result;
}

double root_value(const Rational& value, int level) {
  if (level < 1) fail(ErrorCode::Domain, "root order must be positive");
  if (value < 0) fail(ErrorCode::Domain, "root of a negative value");
  if (value == 0) return 0.0;
  const auto power = [level](double r) {
    const Rational base = from_double(r);
    Rational acc = 1;
    for (int i = 0; i < level; ++i) acc *= base;
    return acc;
  };
  double r = std::pow(to_double(value), 1.0 / level);
  // Walk onto the largest double whose l-th power does not exceed value.
  while (power(r) > value) r = std::nextafter(r, 0.0);
  while (true) {
    const double up = std::nextafter(r, std::numeric_limits<double>::infinity());
    if (power(up) > value) break;
    r = up;
  }
  return r;
}

nlohmann::json to_json(const SolveResult& result, const LinearProgram& lp) {
  nlohmann::json primal = nlohmann::json::object();
  for (std::size_t v = 0; v < result.primal.size(); ++v)
    if (result.primal[v] != 0) primal[lp.variable_names[v]] = to_fraction_string(result.primal[v]);
  nlohmann::json j{{"status", to_string(result.status)},
                   {"exact", result.exact},
                   {"certified", result.certified},
                   {"pivots", result.pivots},
                   {"primal", std::move(primal)}};
  if (result.status == SolveStatus::Optimal) {
    j["value"] = to_fraction_string(result.value);
    j["root_value"] = root_value(result.value, std::max(lp.level, 1));
  }
  if (!result.exact) j["unstable"] = result.unstable;
  return j;
}

}  // namespace krawlp
