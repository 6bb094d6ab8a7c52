#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "krawlp/config.hpp"
#include "krawlp/numeric.hpp"

namespace krawlp {

/// Budget on 2^{nl} for the character-sum evaluator.
inline constexpr int kMaxDirectBits = 24;
/// Budget on the number of configurations for a full table (entries = count^2).
inline constexpr std::size_t kMaxTableConfigs = 2500;

/// K_h(g) as a character sum over every tuple of configuration h, evaluated at a
/// representative of g. Cost 2^{nl}; throws Error(Capacity) past kMaxDirectBits.
BigInt eval_direct(const SDConfig& h, const SDConfig& g, int n);

/// K_h(g) as a signed sum over 2^l x 2^l contingency tables with row sums V(g)
/// and column sums V(h).
BigInt eval_explicit(const SDConfig& h, const SDConfig& g, int n);

/// Binary Krawtchouk polynomial sum_t (-1)^t C(j,t) C(n-j, i-t).
BigInt classical_krawtchouk(int i, int j, int n);

enum class TableMethod {
  Recursive,      ///< n-reducing recursion from the n = 1 base (production path)
  InLevel,        ///< same-n recursion on the empty cell (cross-validation path)
  Explicit,       ///< contingency-table formula per cell
  Direct,         ///< character sum per cell
};

/// Dense table values[h][g] = K_h(g) over the canonical configuration order.
class KrawtchoukTable {
 public:
  KrawtchoukTable(std::shared_ptr<const ConfigSpace> space, std::vector<BigInt> values);

  int blocklength() const { return space_->blocklength(); }
  int level() const { return space_->level(); }
  std::size_t size() const { return space_->size(); }
  const ConfigSpace& space() const { return *space_; }
  std::shared_ptr<const ConfigSpace> shared_space() const { return space_; }

  const BigInt& operator()(std::size_t h, std::size_t g) const { return values_[h * size() + g]; }
  std::span<const BigInt> row(std::size_t h) const { return {values_.data() + h * size(), size()}; }

  friend bool operator==(const KrawtchoukTable& a, const KrawtchoukTable& b) {
    return a.blocklength() == b.blocklength() && a.level() == b.level() && a.values_ == b.values_;
  }

 private:
  std::shared_ptr<const ConfigSpace> space_;
  std::vector<BigInt> values_;
};

KrawtchoukTable build_table(int n, int level, TableMethod method = TableMethod::Recursive);

/// Findings of an exhaustive identity sweep over a table.
struct IdentityReport {
  std::string name;
  std::uint64_t checked = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// sum_g |g| K_h(g) K_h'(g) = 2^{ln} |h| [h = h'] for every pair.
IdentityReport verify_orthogonality(const KrawtchoukTable& table);

/// K_h(g) |g| = K_g(h) |h| for every pair.
IdentityReport verify_reflection(const KrawtchoukTable& table);

/// Trivial-column, trivial-row, row-sum and magnitude invariants.
IdentityReport verify_table_invariants(const KrawtchoukTable& table);

// Persistence. CSV rows are "h,g,value" over canonical indices.
std::string table_to_csv(const KrawtchoukTable& table);

inline constexpr std::uint32_t kTableCacheVersion = 1;

void save_table_binary(const KrawtchoukTable& table, const std::filesystem::path& path);
/// Throws Error(Io) on a missing or mismatched file.
KrawtchoukTable load_table_binary(const std::filesystem::path& path, int n, int level);
std::filesystem::path table_cache_path(const std::filesystem::path& dir, int n, int level);

/// Loads from `cache_dir` when present and valid, otherwise builds and stores.
/// An empty `cache_dir` disables caching.
KrawtchoukTable load_or_build_table(int n, int level, const std::filesystem::path& cache_dir);

}  // namespace krawlp
