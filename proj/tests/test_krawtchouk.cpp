#include <doctest.h>

#include <bitset>
#include <filesystem>
#include <map>

#include "krawlp/error.hpp"
#include "krawlp/krawtchouk.hpp"

using namespace krawlp;

namespace {

std::vector<Word> unpack(std::uint64_t x, int n, int level) {
  std::vector<Word> w(static_cast<std::size_t>(level));
  for (int j = 0; j < level; ++j) w[static_cast<std::size_t>(j)] = (x >> (j * n)) & ((Word{1} << n) - 1);
  return w;
}

// Reference table straight from the character-sum definition: classify every
// tuple, pick the first tuple of each class as the representative.
std::vector<std::vector<long long>> brute_table(int n, int level) {
  const ConfigSpace space(n, level);
  const std::uint64_t total = std::uint64_t{1} << (n * level);
  std::vector<std::size_t> cls(total);
  std::vector<std::uint64_t> rep(space.size(), total);
  for (std::uint64_t x = 0; x < total; ++x) {
    cls[x] = space.index_of(config_of_tuple(WordTuple(n, unpack(x, n, level))));
    if (rep[cls[x]] == total) rep[cls[x]] = x;
  }
  std::vector<std::vector<long long>> K(space.size(), std::vector<long long>(space.size(), 0));
  for (std::size_t g = 0; g < space.size(); ++g)
    for (std::uint64_t y = 0; y < total; ++y)
      K[cls[y]][g] += std::bitset<64>(rep[g] & y).count() % 2 ? -1 : 1;
  return K;
}

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

SDConfig cfg(std::vector<Word> words, int n) { return config_of_tuple(WordTuple(n, std::move(words))); }

}  // namespace

TEST_CASE("eval examples") {
  const SDConfig h = cfg({1, 0}, 1);
  const SDConfig g = cfg({1, 1}, 1);
  CHECK(eval_direct(h, g, 1) == -1);
  CHECK(eval_explicit(h, g, 1) == -1);
  const ConfigSpace space(3, 2);
  for (std::size_t i = 0; i < space.size(); ++i) {
    CHECK(eval_direct(space.sd(0), space.sd(i), 3) == 1);
    CHECK(eval_explicit(space.sd(0), space.sd(i), 3) == 1);
    CHECK(eval_direct(space.sd(i), space.sd(0), 3) == space.orbit(i));
    CHECK(eval_explicit(space.sd(i), space.sd(0), 3) == space.orbit(i));
  }
  // Level 1, n = 4.
  CHECK(eval_explicit(SDConfig(1, {0, 1}), SDConfig(1, {0, 1}), 4) == 2);
  CHECK(eval_explicit(SDConfig(1, {0, 2}), SDConfig(1, {0, 1}), 4) == 0);
}

TEST_CASE("classical_krawtchouk") {
  for (int n = 1; n <= 8; ++n) {
    for (int j = 0; j <= n; ++j) {
      CHECK(classical_krawtchouk(0, j, n) == 1);
      CHECK(classical_krawtchouk(1, j, n) == n - 2 * j);
      for (int i = 0; i <= n; ++i) {
        long long ref = 0;
        for (int t = 0; t <= i; ++t) ref += (t % 2 ? -1 : 1) * binom(j, t) * binom(n - j, i - t);
        CHECK(classical_krawtchouk(i, j, n) == ref);
      }
    }
  }
  CHECK(classical_krawtchouk(1, 1, 4) == 2);
  CHECK(classical_krawtchouk(2, 2, 2) == 1);
}

TEST_CASE("build_table small cases") {
  const auto t = build_table(2, 1);
  const long long expect[3][3] = {{1, 1, 1}, {2, 0, -2}, {1, -1, 1}};
  for (std::size_t h = 0; h < 3; ++h)
    for (std::size_t g = 0; g < 3; ++g) CHECK(t(h, g) == expect[h][g]);

  // n = 1, l = 2: the character table of F_2^2 (entries +-1, rows orthogonal).
  const auto c = build_table(1, 2);
  REQUIRE(c.size() == 4);
  for (std::size_t h = 0; h < 4; ++h) {
    for (std::size_t g = 0; g < 4; ++g) CHECK(abs(c(h, g)) == 1);
    for (std::size_t k = 0; k < 4; ++k) {
      BigInt dot = 0;
      for (std::size_t g = 0; g < 4; ++g) dot += c(h, g) * c(k, g);
      CHECK(dot == (h == k ? 4 : 0));
    }
  }
}

TEST_CASE("every method matches the brute-force definition") {
  for (int level = 1; level <= 3; ++level) {
    for (int n = 1; n * level <= 9 && n <= 5; ++n) {
      const auto ref = brute_table(n, level);
      for (const auto method : {TableMethod::Recursive, TableMethod::InLevel, TableMethod::Explicit, TableMethod::Direct}) {
        const auto t = build_table(n, level, method);
        for (std::size_t h = 0; h < t.size(); ++h)
          for (std::size_t g = 0; g < t.size(); ++g) REQUIRE(t(h, g) == ref[h][g]);
      }
    }
  }
}

TEST_CASE("recursions agree beyond brute-force range") {
  CHECK(build_table(6, 2, TableMethod::Recursive) == build_table(6, 2, TableMethod::InLevel));
  CHECK(build_table(6, 2, TableMethod::Recursive) == build_table(6, 2, TableMethod::Explicit));
  CHECK(build_table(2, 3, TableMethod::Recursive) == build_table(2, 3, TableMethod::InLevel));
}

TEST_CASE("level 1 table is the classical Krawtchouk matrix") {
  for (int n = 1; n <= 9; ++n) {
    const auto t = build_table(n, 1);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        CHECK(t(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) == classical_krawtchouk(i, j, n));
  }
}

TEST_CASE("orthogonality") {
  for (const auto& [n, l] : std::vector<std::pair<int, int>>{{3, 1}, {2, 2}, {5, 2}, {2, 3}}) {
    const auto r = verify_orthogonality(build_table(n, l));
    CHECK(r.ok());
    const std::size_t size = build_table(n, l).size();
    CHECK(r.checked == size * (size + 1) / 2);  // unordered pairs
  }
  // Diagonal weight-1 entry at n = 2: 1*2^2 + 2*0 + 1*(-2)^2 = 8 = 2^2 * 2.
  const auto t = build_table(2, 1);
  BigInt acc = 0;
  for (std::size_t g = 0; g < 3; ++g) acc += t.space().orbit(g) * t(1, g) * t(1, g);
  CHECK(acc == 8);
}

TEST_CASE("reflection") {
  const auto t = build_table(4, 1);
  CHECK(t(1, 2) * t.space().orbit(2) == 0);
  CHECK(t(2, 1) * t.space().orbit(1) == 0);
  CHECK(verify_reflection(t).ok());
  CHECK(verify_reflection(build_table(3, 2)).ok());
}

TEST_CASE("identity checks catch a corrupted table") {
  const auto good = build_table(3, 1);
  std::vector<BigInt> values;
  for (std::size_t h = 0; h < good.size(); ++h)
    for (std::size_t g = 0; g < good.size(); ++g) values.push_back(good(h, g));
  values[1] += 2;  // K_0(1), off the diagonal
  const KrawtchoukTable bad(good.shared_space(), values);
  CHECK_FALSE(verify_orthogonality(bad).ok());
  CHECK_FALSE(verify_reflection(bad).ok());
  CHECK(verify_table_invariants(good).ok());
}

TEST_CASE("table invariants") {
  for (int n = 1; n <= 5; ++n)
    for (int l = 1; l <= 2; ++l) CHECK(verify_table_invariants(build_table(n, l)).ok());
}

TEST_CASE("budgets") {
  try {
    eval_direct(SDConfig(2, {0, 0, 0, 0}), SDConfig(2, {0, 0, 0, 0}), 13);
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Capacity);
  }
  try {
    build_table(12, 3);
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Capacity);
  }
}

TEST_CASE("CSV and binary cache") {
  const auto t = build_table(2, 1);
  CHECK(table_to_csv(t) == "h,g,value\n0,0,1\n0,1,1\n0,2,1\n1,0,2\n1,1,0\n1,2,-2\n2,0,1\n2,1,-1\n2,2,1\n");
  const auto dir = std::filesystem::temp_directory_path() / "krawlp_test_cache";
  std::filesystem::remove_all(dir);
  const auto built = load_or_build_table(3, 2, dir);
  CHECK(std::filesystem::exists(table_cache_path(dir, 3, 2)));
  CHECK(load_or_build_table(3, 2, dir) == built);
  CHECK(load_table_binary(table_cache_path(dir, 3, 2), 3, 2) == built);
  CHECK_THROWS_AS(load_table_binary(table_cache_path(dir, 3, 2), 4, 2), Error);
  CHECK_THROWS_AS(load_table_binary(dir / "missing.bin", 3, 2), Error);
  std::filesystem::remove_all(dir);
}
