#include <doctest.h>

#include <algorithm>
#include <bitset>
#include <map>
#include <numeric>
#include <set>

#include "krawlp/config.hpp"
#include "krawlp/error.hpp"

using namespace krawlp;

namespace {

// Test-side references, written without the library's conversion code.

std::vector<int> sd_by_hand(const std::vector<Word>& words, int level) {
  std::vector<int> out(std::size_t{1} << level, 0);
  for (SubsetMask J = 0; J < out.size(); ++J) {
    Word acc = 0;
    for (int j = 0; j < level; ++j)
      if (J >> j & 1U) acc ^= words[static_cast<std::size_t>(j)];
    out[J] = static_cast<int>(std::bitset<64>(acc).count());
  }
  return out;
}

std::vector<int> venn_by_hand(const std::vector<Word>& words, int n, int level) {
  std::vector<int> out(std::size_t{1} << level, 0);
  for (int i = 0; i < n; ++i) {
    unsigned cell = 0;
    for (int j = 0; j < level; ++j)
      if (words[static_cast<std::size_t>(j)] >> i & 1U) cell |= 1U << j;
    ++out[cell];
  }
  return out;
}

std::vector<Word> unpack(std::uint64_t x, int n, int level) {
  std::vector<Word> w(static_cast<std::size_t>(level));
  for (int j = 0; j < level; ++j) w[static_cast<std::size_t>(j)] = (x >> (j * n)) & ((Word{1} << n) - 1);
  return w;
}

// Permutes coordinates of every word.
std::vector<Word> permute(const std::vector<Word>& words, const std::vector<int>& perm) {
  std::vector<Word> out;
  for (const Word w : words) {
    Word p = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      if (w >> i & 1U) p |= Word{1} << perm[i];
    out.push_back(p);
  }
  return out;
}

std::uint64_t pack(const std::vector<Word>& w, int n) {
  std::uint64_t x = 0;
  for (std::size_t j = 0; j < w.size(); ++j) x |= w[j] << (static_cast<int>(j) * n);
  return x;
}

std::uint64_t choose(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

TEST_CASE("config_of_tuple examples") {
  CHECK(config_of_tuple(WordTuple(4, {0, 0, 0})).is_trivial());
  const std::vector<std::string> pair{"10", "01"};
  const auto g = config_of_tuple(WordTuple::parse(pair));
  CHECK(std::vector<int>(g.entries().begin(), g.entries().end()) == std::vector<int>{0, 1, 1, 2});
  const std::vector<std::string> one{"1101"};
  CHECK(config_of_tuple(WordTuple::parse(one))[1] == 3);
}

TEST_CASE("venn_of_tuple examples") {
  const std::vector<std::string> pair{"10", "01"};
  const auto v = venn_of_tuple(WordTuple::parse(pair));
  CHECK(std::vector<int>(v.entries().begin(), v.entries().end()) == std::vector<int>{0, 1, 1, 0});
  const auto zero = venn_of_tuple(WordTuple(3, {0, 0}));
  CHECK(zero[0] == 3);
  CHECK(zero[1] + zero[2] + zero[3] == 0);
  const std::vector<std::string> one{"1101"};
  const auto w = venn_of_tuple(WordTuple::parse(one));
  CHECK(w[0] == 1);
  CHECK(w[1] == 3);
}

TEST_CASE("mismatched word lengths are rejected") {
  const std::vector<std::string> bad{"10", "011"};
  CHECK_THROWS_AS(WordTuple::parse(bad), Error);
  CHECK_THROWS_AS(WordTuple(2, {0b111}), Error);
}

TEST_CASE("sd_to_venn and venn_to_sd examples") {
  CHECK(sd_to_venn(SDConfig(1, {0, 3}), 4) == VennConfig(4, 1, {1, 3}));
  CHECK(sd_to_venn(SDConfig(2, {0, 1, 1, 2}), 2) == VennConfig(2, 2, {0, 1, 1, 0}));
  const auto zero = sd_to_venn(SDConfig(3, std::vector<int>(8, 0)), 5);
  CHECK(zero[0] == 5);
  CHECK(venn_to_sd(VennConfig(2, 2, {0, 1, 1, 0})) == SDConfig(2, {0, 1, 1, 2}));
  CHECK(venn_to_sd(VennConfig(6, 2, {6, 0, 0, 0})).is_trivial());
  CHECK(venn_to_sd(VennConfig(4, 1, {1, 3})) == SDConfig(1, {0, 3}));
}

TEST_CASE("sd_to_venn rejects non-configurations") {
  // Weights 1, 1, 1 on a pair: 1+1+1 is odd, so V is not integral.
  CHECK_THROWS_AS(sd_to_venn(SDConfig(2, {0, 1, 1, 1}), 3), Error);
  // Triangle inequality broken: |z1 + z2| > |z1| + |z2|.
  CHECK_THROWS_AS(sd_to_venn(SDConfig(2, {0, 1, 1, 4}), 4), Error);
  // Weight beyond n.
  CHECK_THROWS_AS(sd_to_venn(SDConfig(1, {0, 5}), 4), Error);
  try {
    sd_to_venn(SDConfig(2, {0, 1, 1, 1}), 3);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAConfig);
  }
}

TEST_CASE("every tuple: D(Venn) equals SD, both match hand computation") {
  for (int level = 1; level <= 3; ++level) {
    for (int n = 1; n * level <= 12; ++n) {
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << (n * level)); ++x) {
        const auto words = unpack(x, n, level);
        const WordTuple t(n, words);
        const auto g = config_of_tuple(t);
        const auto v = venn_of_tuple(t);
        REQUIRE(std::vector<int>(g.entries().begin(), g.entries().end()) == sd_by_hand(words, level));
        REQUIRE(std::vector<int>(v.entries().begin(), v.entries().end()) == venn_by_hand(words, n, level));
        REQUIRE(venn_to_sd(v) == g);
        REQUIRE(sd_to_venn(g, n) == v);
      }
    }
  }
}

TEST_CASE("enumerate_configs counts and order") {
  CHECK(enumerate_configs(2, 1).size() == 3);
  CHECK(enumerate_configs(1, 2).size() == 4);
  CHECK(enumerate_configs(4, 2).size() == 35);
  for (int level = 1; level <= 3; ++level) {
    for (int n = 1; n <= 10; ++n) {
      const auto configs = enumerate_configs(n, level);
      const int parts = 1 << level;
      CHECK(configs.size() == choose(n + parts - 1, parts - 1));
      CHECK(config_count(n, level) == BigInt(choose(n + parts - 1, parts - 1)));
      CHECK(configs.front().is_trivial());
      // Distinct, and strictly descending lexicographic on Venn vectors.
      for (std::size_t i = 1; i < configs.size(); ++i) {
        const auto a = sd_to_venn(configs[i - 1], n);
        const auto b = sd_to_venn(configs[i], n);
        REQUIRE(std::lexicographical_compare(b.entries().begin(), b.entries().end(), a.entries().begin(),
                                             a.entries().end()));
      }
    }
  }
  // Level 1 lists weights 0..n.
  const auto l1 = enumerate_configs(5, 1);
  for (int w = 0; w <= 5; ++w) CHECK(l1[static_cast<std::size_t>(w)][1] == w);
}

TEST_CASE("enumeration past the budget is a capacity error") {
  try {
    enumerate_configs(40, 4);
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Capacity);
  }
}

TEST_CASE("orbit_size examples") {
  CHECK(orbit_size(SDConfig(2, {0, 0, 0, 0}), 6) == 1);
  CHECK(orbit_size(SDConfig(1, {0, 2}), 4) == 6);
  CHECK(orbit_size(SDConfig(2, {0, 1, 1, 2}), 2) == 2);
}

TEST_CASE("orbits: class sizes match, classes are S_n orbits, sizes sum to 2^{nl}") {
  for (int level = 1; level <= 2; ++level) {
    for (int n = 1; n <= 4; ++n) {
      const ConfigSpace space(n, level);
      std::map<std::size_t, std::set<std::uint64_t>> classes;
      const std::uint64_t total = std::uint64_t{1} << (n * level);
      for (std::uint64_t x = 0; x < total; ++x)
        classes[space.index_of(config_of_tuple(WordTuple(n, unpack(x, n, level))))].insert(x);
      REQUIRE(classes.size() == space.size());
      BigInt sum = 0;
      for (const auto& [index, members] : classes) {
        CHECK(BigInt(members.size()) == space.orbit(index));
        sum += space.orbit(index);
        // Orbit of the first member under all coordinate permutations.
        std::set<std::uint64_t> orbit;
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        const auto seed = unpack(*members.begin(), n, level);
        do {
          orbit.insert(pack(permute(seed, perm), n));
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(orbit == members);
      }
      CHECK(sum == BigInt(total));
    }
  }
}

TEST_CASE("forbidden_configs") {
  const auto f = forbidden_configs(2, 2, 1, false);
  REQUIRE(f.size() == 1);
  CHECK(f[0][1] == 1);
  for (int d : {0, 1}) {
    CHECK(forbidden_configs(4, d, 2, false).empty());
    CHECK(forbidden_configs(4, d, 2, true).empty());
  }
  CHECK_FALSE(is_forbidden(SDConfig(2, {0, 2, 2, 0}), 2, false));
  CHECK_FALSE(is_forbidden(SDConfig(2, {0, 2, 2, 0}), 2, true));
  CHECK(is_forbidden(SDConfig(2, {0, 1, 1, 2}), 2, false));
  CHECK(is_forbidden(SDConfig(2, {0, 1, 1, 2}), 2, true));
  const SDConfig h = venn_to_sd(VennConfig(4, 2, {1, 0, 1, 2}));  // weights 2, 3, 1
  CHECK_FALSE(is_forbidden(h, 2, false));
  CHECK(is_forbidden(h, 2, true));
  // Linear set contains the general set; d = n+1 is accepted.
  for (int d = 0; d <= 5; ++d) {
    const auto gen = forbidden_configs(4, d, 2, false);
    const auto lin = forbidden_configs(4, d, 2, true);
    for (const auto& x : gen) CHECK(std::find(lin.begin(), lin.end(), x) != lin.end());
  }
  CHECK(forbidden_configs(3, 4, 1, false).size() == 3);
}

TEST_CASE("ConfigSpace indexing and JSON") {
  const ConfigSpace space(4, 2);
  for (std::size_t i = 0; i < space.size(); ++i) {
    CHECK(space.index_of(space.sd(i)) == i);
    CHECK(space.index_of(space.venn(i)) == i);
    CHECK(space.index_of_cells(space.venn(i).entries()) == i);
    int n_back = 0;
    CHECK(sd_config_from_json(to_json(space.sd(i), 4), &n_back) == space.sd(i));
    CHECK(n_back == 4);
  }
  const auto j = to_json(SDConfig(2, {0, 1, 1, 2}), 2);
  CHECK(j.dump() == R"({"l":2,"n":2,"sd":[0,1,1,2],"venn":[0,1,1,0]})");
}
