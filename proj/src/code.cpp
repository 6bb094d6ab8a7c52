#include "krawlp/code.hpp"

#include <algorithm>
#include <cstdio>

#include "krawlp/error.hpp"

namespace krawlp {

CodeSet::CodeSet(int n, std::vector<Word> words) : n_(n), words_(std::move(words)) {
  if (n < 1 || n > kMaxBlocklength) fail(ErrorCode::InvalidInput, "code blocklength must lie in [1, 64]");
  if (words_.empty()) fail(ErrorCode::InvalidInput, "code must be nonempty");
  const Word mask = n >= 64 ? ~Word{0} : (Word{1} << n) - 1;
  for (const Word w : words_)
    if (w & ~mask) fail(ErrorCode::InvalidInput, "codeword wider than the blocklength");
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

CodeSet CodeSet::span(int n, std::span<const Word> generators) {
  std::vector<Word> words{0};
  for (const Word g : generators) {
    if (std::find(words.begin(), words.end(), g) != words.end()) continue;
    const std::size_t size = words.size();
    for (std::size_t i = 0; i < size; ++i) words.push_back(words[i] ^ g);
  }
  return CodeSet(n, std::move(words));
}

bool CodeSet::contains(Word w) const { return std::binary_search(words_.begin(), words_.end(), w); }

bool CodeSet::is_linear() const {
  if (!contains(0)) return false;
  for (std::size_t i = 0; i < words_.size(); ++i)
    for (std::size_t j = i + 1; j < words_.size(); ++j)
      if (!contains(words_[i] ^ words_[j])) return false;
  return true;
}

int CodeSet::min_distance() const {
  int best = n_ + 1;
  for (std::size_t i = 0; i < words_.size(); ++i)
    for (std::size_t j = i + 1; j < words_.size(); ++j) best = std::min(best, popcount(words_[i] ^ words_[j]));
  return best;
}

std::string to_hex(Word w) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(w));
  return buf;
}

nlohmann::json to_json(const CodeSet& code) {
  nlohmann::json words = nlohmann::json::array();
  for (const Word w : code.words()) words.push_back(to_hex(w));
  return {{"n", code.blocklength()}, {"size", code.size()}, {"words", std::move(words)}};
}

CodeSet code_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    std::vector<Word> words;
    for (const auto& item : j.at("words")) {
      const auto text = item.get<std::string>();
      std::size_t used = 0;
      const Word w = std::stoull(text, &used, 16);
      if (used != text.size()) fail(ErrorCode::InvalidInput, "bad hex word '" + text + "'");
      words.push_back(w);
    }
    return CodeSet(n, std::move(words));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("malformed code JSON: ") + e.what());
  } catch (const std::logic_error&) {
    fail(ErrorCode::InvalidInput, "malformed hex word in code JSON");
  }
}

}  // namespace krawlp
