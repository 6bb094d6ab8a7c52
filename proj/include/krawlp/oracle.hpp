#pragma once

// Brute-force ground truth at desk scale: exact A_2(n,d) and A_2^Lin(n,d), dual
// codes, MacWilliams checks, and the unsymmetrized Fourier program.

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <json.hpp>

#include "krawlp/code.hpp"
#include "krawlp/krawtchouk.hpp"
#include "krawlp/lp_model.hpp"

namespace krawlp {

inline constexpr int kMaxCodeBlocklength = 7;        // 2^n <= 128 vertices
inline constexpr int kMaxLinearCodeBlocklength = 10;
/// Budget on n*l for Fourier programs. Dense rows make 2^{nl} x 2^{nl} rationals.
inline constexpr int kMaxFourierBits = 10;

struct OracleResult {
  std::uint64_t size = 0;
  CodeSet witness;
};

/// Maximum code with minimum distance >= d (maximum independent set of the
/// graph joining words at distance 1..d-1).
OracleResult max_code(int n, int d);

/// Maximum linear code with minimum distance >= d, by reduced-row-echelon search.
OracleResult max_linear_code(int n, int d);

/// Throws Error(NotLinear) for a non-linear code.
CodeSet dual_code(const CodeSet& code);

/// Identity (linear codes only): |C|^l a^{C-perp}_h = sum_g K_h(g) a^C_g.
/// Inequality (any code): sum_g K_h(g) a^C_g >= 0.
struct MacWilliamsReport {
  bool identity_checked = false;
  IdentityReport identity{"macwilliams-identity", 0, {}};
  IdentityReport inequality{"macwilliams-inequality", 0, {}};

  bool ok() const { return identity.ok() && inequality.ok(); }
};

MacWilliamsReport verify_macwilliams(const CodeSet& code, const KrawtchoukTable& table);
MacWilliamsReport verify_macwilliams(const CodeSet& code, int level);

/// Points of (F_2^n)^l are packed integers: word j occupies bits [jn, (j+1)n).
std::uint64_t pack_point(std::span<const Word> words, int n);

/// Fourier program with one variable per point and one row per character.
LinearProgram build_fourier_lp(int n, int d, int level, bool linear);

/// a_x = prod_j 1[x_j in C], over the whole point set.
std::vector<Rational> indicator_solution(const CodeSet& code, int level);

/// Sums a point-indexed vector over configuration classes: a'_g = sum_{x in g} a_x.
std::vector<Rational> aggregate_by_config(std::span<const Rational> point, const ConfigSpace& space);

nlohmann::json to_json(const OracleResult& result, int n, int d, bool linear);

/// Cached by (n, d, flag) in `cache_dir` when nonempty.
OracleResult load_or_compute_oracle(int n, int d, bool linear, const std::filesystem::path& cache_dir);

}  // namespace krawlp
