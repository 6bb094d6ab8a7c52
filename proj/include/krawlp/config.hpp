#pragma once

// Configurations of l-tuples of words in F_2^n.
//
// Subsets J of [l] = {1..l} are bitmasks: bit j-1 stands for element j. Both
// configuration flavours are dense arrays of length 2^l indexed by that mask.
//
//   SDConfig   g(J) = |XOR_{j in J} z_j|            (symmetric-difference view)
//   VennConfig v(J) = #{i : {j : z_j[i] = 1} = J}   (support-partition view)

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "krawlp/numeric.hpp"

namespace krawlp {

using SubsetMask = std::uint32_t;
using Word = std::uint64_t;

/// Largest level accepted by pure configuration operations.
inline constexpr int kMaxLevel = 6;
/// Largest level accepted by Krawtchouk tables and LP builders.
inline constexpr int kMaxLevelLp = 4;
/// Largest blocklength representable by a Word.
inline constexpr int kMaxBlocklength = 64;
/// Enumeration budget on the number of configurations.
inline constexpr std::uint64_t kMaxConfigCount = 5'000'000;

static_assert(kMaxLevelLp <= kMaxLevel);
static_assert((std::size_t{1} << kMaxLevel) <= 64, "subset masks must fit the Venn arrays");

inline int popcount(Word w) { return __builtin_popcountll(w); }
inline int popcount(SubsetMask m) { return __builtin_popcount(m); }

/// l words of common length n. Coordinate i of a word is bit i.
class WordTuple {
 public:
  WordTuple(int n, std::vector<Word> words);

  /// Each string is a 0/1 word, character i giving coordinate i. Lengths must agree.
  static WordTuple parse(std::span<const std::string> words);

  int blocklength() const { return n_; }
  int level() const { return static_cast<int>(words_.size()); }
  Word operator[](std::size_t j) const { return words_[j]; }
  std::span<const Word> words() const { return words_; }

 private:
  int n_;
  std::vector<Word> words_;
};

class SDConfig {
 public:
  SDConfig() = default;
  /// entries.size() must be 2^level; entry(empty set) must be 0.
  SDConfig(int level, std::vector<int> entries);

  int level() const { return level_; }
  int operator[](SubsetMask subset) const { return entries_[subset]; }
  std::span<const int> entries() const { return entries_; }
  bool is_trivial() const;

  friend bool operator==(const SDConfig&, const SDConfig&) = default;

 private:
  int level_ = 0;
  std::vector<int> entries_;
};

class VennConfig {
 public:
  VennConfig() = default;
  /// Entries must be non-negative and sum to n >= 1.
  VennConfig(int n, int level, std::vector<int> entries);

  int blocklength() const { return n_; }
  int level() const { return level_; }
  int operator[](SubsetMask subset) const { return entries_[subset]; }
  std::span<const int> entries() const { return entries_; }

  friend bool operator==(const VennConfig&, const VennConfig&) = default;

 private:
  int n_ = 0;
  int level_ = 0;
  std::vector<int> entries_;
};

SDConfig config_of_tuple(const WordTuple& tuple);
VennConfig venn_of_tuple(const WordTuple& tuple);

/// Map V. Throws Error(NotAConfig) if g is not the configuration of any tuple in (F_2^n)^l.
VennConfig sd_to_venn(const SDConfig& g, int n);
/// Map D.
SDConfig venn_to_sd(const VennConfig& v);

/// A tuple whose Venn configuration is v (cells laid out in increasing mask order).
WordTuple representative(const VennConfig& v);

/// C(n + 2^l - 1, 2^l - 1), exact.
BigInt config_count(int n, int level);

/// All configurations in canonical order: descending lexicographic order of the
/// Venn vector, so the trivial configuration comes first. Throws Error(Capacity)
/// when the count exceeds kMaxConfigCount.
std::vector<SDConfig> enumerate_configs(int n, int level);

/// Number of tuples with configuration g: n! / prod_J V(g)(J)!.
BigInt orbit_size(const SDConfig& g, int n);
BigInt orbit_size(const VennConfig& v);

/// General: some g({j}) in {1..d-1}. Linear: some g(J) in {1..d-1}.
bool is_forbidden(const SDConfig& g, int d, bool linear);
std::vector<SDConfig> forbidden_configs(int n, int d, int level, bool linear);

/// Canonical enumeration with constant-time-ish index lookup in both directions.
class ConfigSpace {
 public:
  ConfigSpace(int n, int level);

  int blocklength() const { return n_; }
  int level() const { return level_; }
  std::size_t size() const { return sd_.size(); }

  const SDConfig& sd(std::size_t index) const { return sd_[index]; }
  const VennConfig& venn(std::size_t index) const { return venn_[index]; }
  const BigInt& orbit(std::size_t index) const { return orbit_[index]; }
  std::span<const SDConfig> configs() const { return sd_; }

  /// Position in canonical order; the argument must belong to this (n, l).
  std::size_t index_of(const VennConfig& v) const;
  std::size_t index_of(const SDConfig& g) const;
  /// Index of a Venn vector given as raw cell sizes (must sum to n).
  std::size_t index_of_cells(std::span<const int> cells) const;

 private:
  int n_;
  int level_;
  std::vector<SDConfig> sd_;
  std::vector<VennConfig> venn_;
  std::vector<BigInt> orbit_;
  // binom_[a][b] = C(a, b), saturating, for the ranking function.
  std::vector<std::vector<std::uint64_t>> binom_;
};

/// {"n":…, "l":…, "venn":[…], "sd":[…]}
nlohmann::json to_json(const SDConfig& g, int n);
SDConfig sd_config_from_json(const nlohmann::json& j, int* n_out = nullptr);

}  // namespace krawlp
