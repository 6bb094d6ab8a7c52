#include "krawlp/config.hpp"

#include <algorithm>
#include <limits>

#include "krawlp/error.hpp"

namespace krawlp {

namespace {

void check_level(int level, int max_level = kMaxLevel) {
  if (level < 1 || level > max_level)
    fail(ErrorCode::InvalidInput, "level must lie in [1, " + std::to_string(max_level) + "], got " +
                                      std::to_string(level));
}

void check_blocklength(int n) {
  if (n < 1) fail(ErrorCode::InvalidInput, "blocklength must be positive, got " + std::to_string(n));
}

std::size_t cells(int level) { return std::size_t{1} << level; }

Word low_mask(int n) { return n >= 64 ? ~Word{0} : ((Word{1} << n) - 1); }

}  // namespace

WordTuple::WordTuple(int n, std::vector<Word> words) : n_(n), words_(std::move(words)) {
  if (n < 1 || n > kMaxBlocklength)
    fail(ErrorCode::InvalidInput, "word length must lie in [1, 64], got " + std::to_string(n));
  check_level(static_cast<int>(words_.size()), 64);
  for (const Word w : words_)
    if ((w & ~low_mask(n)) != 0) fail(ErrorCode::InvalidInput, "word has bits beyond the blocklength");
}

WordTuple WordTuple::parse(std::span<const std::string> words) {
  if (words.empty()) fail(ErrorCode::InvalidInput, "empty word tuple");
  const std::size_t n = words.front().size();
  std::vector<Word> packed;
  packed.reserve(words.size());
  for (const auto& text : words) {
    if (text.size() != n) fail(ErrorCode::InvalidInput, "mismatched word lengths in tuple");
    if (n == 0 || n > static_cast<std::size_t>(kMaxBlocklength))
      fail(ErrorCode::InvalidInput, "word length must lie in [1, 64]");
    Word w = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (text[i] == '1') {
        w |= Word{1} << i;
      } else if (text[i] != '0') {
        fail(ErrorCode::InvalidInput, "word '" + text + "' is not a 0/1 string");
      }
    }
    packed.push_back(w);
  }
  return WordTuple(static_cast<int>(n), std::move(packed));
}

SDConfig::SDConfig(int level, std::vector<int> entries) : level_(level), entries_(std::move(entries)) {
  check_level(level);
  if (entries_.size() != cells(level)) fail(ErrorCode::InvalidInput, "SD configuration must have 2^l entries");
  if (entries_[0] != 0) fail(ErrorCode::NotAConfig, "SD configuration must vanish on the empty set");
  for (const int e : entries_)
    if (e < 0) fail(ErrorCode::NotAConfig, "SD configuration has a negative weight");
}

bool SDConfig::is_trivial() const {
  return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e == 0; });
}

VennConfig::VennConfig(int n, int level, std::vector<int> entries)
    : n_(n), level_(level), entries_(std::move(entries)) {
  check_blocklength(n);
  check_level(level);
  if (entries_.size() != cells(level)) fail(ErrorCode::InvalidInput, "Venn configuration must have 2^l entries");
  long total = 0;
  for (const int e : entries_) {
    if (e < 0) fail(ErrorCode::NotAConfig, "Venn configuration has a negative cell");
    total += e;
  }
  if (total != n) fail(ErrorCode::NotAConfig, "Venn cells must sum to the blocklength");
}

SDConfig config_of_tuple(const WordTuple& tuple) {
  const int level = tuple.level();
  check_level(level);
  std::vector<int> entries(cells(level), 0);
  for (SubsetMask mask = 1; mask < cells(level); ++mask) {
    Word acc = 0;
    for (int j = 0; j < level; ++j)
      if (mask & (SubsetMask{1} << j)) acc ^= tuple[static_cast<std::size_t>(j)];
    entries[mask] = popcount(acc);
  }
  return SDConfig(level, std::move(entries));
}

VennConfig venn_of_tuple(const WordTuple& tuple) {
  const int level = tuple.level();
  check_level(level);
  std::vector<int> entries(cells(level), 0);
  for (int i = 0; i < tuple.blocklength(); ++i) {
    SubsetMask cell = 0;
    for (int j = 0; j < level; ++j)
      if ((tuple[static_cast<std::size_t>(j)] >> i) & 1U) cell |= SubsetMask{1} << j;
    ++entries[cell];
  }
  return VennConfig(tuple.blocklength(), level, std::move(entries));
}

VennConfig sd_to_venn(const SDConfig& g, int n) {
  check_blocklength(n);
  const int level = g.level();
  const std::size_t size = cells(level);
  const long scale = 1L << (level - 1);
  std::vector<int> entries(size, 0);
  for (SubsetMask J = 0; J < size; ++J) {
    // 2^{l-1} V(J) = n 2^{l-1} [J = 0] + sum_T (-1)^{|T & J| - 1} g(T)
    long acc = (J == 0) ? static_cast<long>(n) * scale : 0;
    for (SubsetMask T = 0; T < size; ++T) {
      const long term = g[T];
      acc += (popcount(T & J) % 2 == 1) ? term : -term;
    }
    if (acc % scale != 0)
      fail(ErrorCode::NotAConfig, "SD vector maps to a non-integral Venn cell");
    const long cell = acc / scale;
    if (cell < 0) fail(ErrorCode::NotAConfig, "SD vector maps to a negative Venn cell");
    entries[J] = static_cast<int>(cell);
  }
  return VennConfig(n, level, std::move(entries));
}

SDConfig venn_to_sd(const VennConfig& v) {
  const std::size_t size = cells(v.level());
  std::vector<int> entries(size, 0);
  for (SubsetMask J = 1; J < size; ++J) {
    int acc = 0;
    for (SubsetMask T = 0; T < size; ++T)
      if (popcount(T & J) % 2 == 1) acc += v[T];
    entries[J] = acc;
  }
  return SDConfig(v.level(), std::move(entries));
}

WordTuple representative(const VennConfig& v) {
  if (v.blocklength() > kMaxBlocklength) fail(ErrorCode::InvalidInput, "blocklength too large for a word tuple");
  std::vector<Word> words(static_cast<std::size_t>(v.level()), 0);
  int position = 0;
  for (SubsetMask J = 0; J < cells(v.level()); ++J) {
    for (int k = 0; k < v[J]; ++k, ++position)
      for (int j = 0; j < v.level(); ++j)
        if (J & (SubsetMask{1} << j)) words[static_cast<std::size_t>(j)] |= Word{1} << position;
  }
  return WordTuple(v.blocklength(), std::move(words));
}

BigInt config_count(int n, int level) {
  check_blocklength(n);
  check_level(level);
  const int parts = 1 << level;
  return binomial(n + parts - 1, parts - 1);
}

namespace {

void check_enumerable(int n, int level) {
  if (config_count(n, level) > kMaxConfigCount)
    fail(ErrorCode::Capacity, "configuration count C(n+2^l-1, 2^l-1) exceeds the budget of " +
                                  std::to_string(kMaxConfigCount) + " for n=" + std::to_string(n) +
                                  ", l=" + std::to_string(level));
}

// Weak compositions of n into parts, descending lexicographic order.
template <typename Visit>
void for_each_composition(int n, int parts, Visit&& visit) {
  std::vector<int> current(static_cast<std::size_t>(parts), 0);
  auto recurse = [&](auto&& self, int index, int remaining) -> void {
    if (index == parts - 1) {
      current[static_cast<std::size_t>(index)] = remaining;
      visit(current);
      return;
    }
    for (int value = remaining; value >= 0; --value) {
      current[static_cast<std::size_t>(index)] = value;
      self(self, index + 1, remaining - value);
    }
  };
  recurse(recurse, 0, n);
}

}  // namespace

std::vector<SDConfig> enumerate_configs(int n, int level) {
  check_enumerable(n, level);
  std::vector<SDConfig> out;
  out.reserve(config_count(n, level).convert_to<std::size_t>());
  for_each_composition(n, 1 << level, [&](const std::vector<int>& venn) {
    out.push_back(venn_to_sd(VennConfig(n, level, venn)));
  });
  return out;
}

BigInt orbit_size(const VennConfig& v) {
  return multinomial(v.blocklength(), v.entries().data(), v.entries().size());
}

BigInt orbit_size(const SDConfig& g, int n) { return orbit_size(sd_to_venn(g, n)); }

bool is_forbidden(const SDConfig& g, int d, bool linear) {
  const auto in_range = [d](int w) { return w >= 1 && w <= d - 1; };
  const std::size_t size = cells(g.level());
  for (SubsetMask J = 1; J < size; ++J) {
    if (!linear && popcount(J) != 1) continue;
    if (in_range(g[J])) return true;
  }
  return false;
}

std::vector<SDConfig> forbidden_configs(int n, int d, int level, bool linear) {
  if (d < 0 || d > n + 1)
    fail(ErrorCode::InvalidInput, "distance must lie in [0, n+1], got " + std::to_string(d));
  std::vector<SDConfig> out;
  for (auto& g : enumerate_configs(n, level))
    if (is_forbidden(g, d, linear)) out.push_back(std::move(g));
  return out;
}

ConfigSpace::ConfigSpace(int n, int level) : n_(n), level_(level) {
  check_enumerable(n, level);
  const int parts = 1 << level;
  const std::size_t count = config_count(n, level).convert_to<std::size_t>();
  sd_.reserve(count);
  venn_.reserve(count);
  orbit_.reserve(count);
  for_each_composition(n, parts, [&](const std::vector<int>& cells_now) {
    VennConfig v(n, level, cells_now);
    sd_.push_back(venn_to_sd(v));
    orbit_.push_back(orbit_size(v));
    venn_.push_back(std::move(v));
  });

  const int rows = n + parts + 1;
  binom_.assign(static_cast<std::size_t>(rows), std::vector<std::uint64_t>(static_cast<std::size_t>(parts + 1), 0));
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  for (int a = 0; a < rows; ++a) {
    auto& row = binom_[static_cast<std::size_t>(a)];
    row[0] = 1;
    for (int b = 1; b <= std::min(a, parts); ++b) {
      const auto& prev = binom_[static_cast<std::size_t>(a - 1)];
      const std::uint64_t x = prev[static_cast<std::size_t>(b - 1)];
      const std::uint64_t y = prev[static_cast<std::size_t>(b)];
      row[static_cast<std::size_t>(b)] = (x > cap - y) ? cap : x + y;
    }
  }
}

std::size_t ConfigSpace::index_of_cells(std::span<const int> cells_in) const {
  const int parts = 1 << level_;
  if (static_cast<int>(cells_in.size()) != parts) fail(ErrorCode::InvalidInput, "Venn vector has the wrong length");
  // Rank among weak compositions in descending lex order: at each position count
  // the compositions that agree on the prefix and carry a larger value here.
  std::uint64_t rank = 0;
  int remaining = n_;
  for (int i = 0; i + 1 < parts; ++i) {
    const int value = cells_in[static_cast<std::size_t>(i)];
    if (value < 0 || value > remaining) fail(ErrorCode::NotAConfig, "Venn vector does not belong to this space");
    const int after = parts - i - 1;
    if (value < remaining) rank += binom_[static_cast<std::size_t>(remaining - value - 1 + after)][static_cast<std::size_t>(after)];
    remaining -= value;
  }
  if (cells_in[static_cast<std::size_t>(parts - 1)] != remaining)
    fail(ErrorCode::NotAConfig, "Venn vector does not sum to the blocklength");
  return static_cast<std::size_t>(rank);
}

std::size_t ConfigSpace::index_of(const VennConfig& v) const {
  if (v.blocklength() != n_ || v.level() != level_)
    fail(ErrorCode::InvalidInput, "configuration belongs to a different (n, l)");
  return index_of_cells(v.entries());
}

std::size_t ConfigSpace::index_of(const SDConfig& g) const {
  if (g.level() != level_) fail(ErrorCode::InvalidInput, "configuration belongs to a different level");
  return index_of(sd_to_venn(g, n_));
}

nlohmann::json to_json(const SDConfig& g, int n) {
  const VennConfig v = sd_to_venn(g, n);
  return nlohmann::json{{"n", n},
                        {"l", g.level()},
                        {"venn", std::vector<int>(v.entries().begin(), v.entries().end())},
                        {"sd", std::vector<int>(g.entries().begin(), g.entries().end())}};
}

SDConfig sd_config_from_json(const nlohmann::json& j, int* n_out) {
  try {
    const int n = j.at("n").get<int>();
    const int level = j.at("l").get<int>();
    SDConfig g(level, j.at("sd").get<std::vector<int>>());
    if (j.contains("venn")) {
      const VennConfig v(n, level, j.at("venn").get<std::vector<int>>());
      if (venn_to_sd(v) != g) fail(ErrorCode::NotAConfig, "venn and sd fields disagree");
    } else {
      (void)sd_to_venn(g, n);
    }
    if (n_out) *n_out = n;
    return g;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("malformed configuration JSON: ") + e.what());
  }
}

}  // namespace krawlp
