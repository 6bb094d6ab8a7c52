#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "krawlp/config.hpp"

namespace krawlp {

/// A binary code: a nonempty set of n-bit words (coordinate i is bit i).
class CodeSet {
 public:
  /// Words are deduplicated and sorted. Throws Error(InvalidInput) on an empty
  /// set, a bad blocklength, or a word wider than n.
  CodeSet(int n, std::vector<Word> words);

  /// Span of the given generators (always linear).
  static CodeSet span(int n, std::span<const Word> generators);

  int blocklength() const { return n_; }
  std::size_t size() const { return words_.size(); }
  std::span<const Word> words() const { return words_; }
  bool contains(Word w) const;

  /// XOR-closed and contains 0.
  bool is_linear() const;
  /// Minimum pairwise distance; n + 1 for a single-word code.
  int min_distance() const;

  friend bool operator==(const CodeSet&, const CodeSet&) = default;

 private:
  int n_;
  std::vector<Word> words_;
};

/// Hex word list: {"n":…, "words":["0x…", …]}.
nlohmann::json to_json(const CodeSet& code);
CodeSet code_from_json(const nlohmann::json& j);

std::string to_hex(Word w);

}  // namespace krawlp
