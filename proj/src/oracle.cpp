#include "krawlp/oracle.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <numeric>

#include "krawlp/error.hpp"

namespace krawlp {

namespace {

void check_code_params(int n, int d, int max_n) {
  if (n < 1) fail(ErrorCode::InvalidInput, "blocklength must be positive");
  if (d < 0 || d > n + 1) fail(ErrorCode::InvalidInput, "distance must lie in [0, n+1]");
  if (n > max_n)
    fail(ErrorCode::Capacity, "oracle budget is n <= " + std::to_string(max_n) + ", got n=" + std::to_string(n));
}

// Fixed 128-bit vertex set.
struct Bits128 {
  std::array<std::uint64_t, 2> w{0, 0};

  void set(int i) { w[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w[static_cast<std::size_t>(i >> 6)] &= ~(std::uint64_t{1} << (i & 63)); }
  bool any() const { return (w[0] | w[1]) != 0; }
  int count() const { return __builtin_popcountll(w[0]) + __builtin_popcountll(w[1]); }
  int first() const { return w[0] ? __builtin_ctzll(w[0]) : 64 + __builtin_ctzll(w[1]); }
  Bits128 operator&(const Bits128& o) const { return {{w[0] & o.w[0], w[1] & o.w[1]}}; }
  Bits128 minus(const Bits128& o) const { return {{w[0] & ~o.w[0], w[1] & ~o.w[1]}}; }
};

// Maximum clique with greedy-colouring bounds; colouring the compatibility graph
// is a clique cover of the conflict graph.
class CliqueSearch {
 public:
  explicit CliqueSearch(std::vector<Bits128> adjacency) : adj_(std::move(adjacency)) {}

  std::vector<int> run(const Bits128& candidates) {
    std::vector<int> current;
    expand(current, candidates);
    return best_;
  }

 private:
  void expand(std::vector<int>& current, Bits128 candidates) {
    std::vector<int> order;
    std::vector<int> colour;
    colour_sort(candidates, order, colour);
    for (std::size_t k = order.size(); k-- > 0;) {
      if (current.size() + static_cast<std::size_t>(colour[k]) <= best_.size()) return;
      const int v = order[k];
      current.push_back(v);
      const Bits128 next = candidates & adj_[static_cast<std::size_t>(v)];
      if (next.any()) {
        expand(current, next);
      } else if (current.size() > best_.size()) {
        best_ = current;
      }
      current.pop_back();
      candidates.reset(v);
    }
  }

  void colour_sort(Bits128 uncoloured, std::vector<int>& order, std::vector<int>& colour) const {
    int c = 0;
    while (uncoloured.any()) {
      ++c;
      Bits128 available = uncoloured;
      while (available.any()) {
        const int v = available.first();
        available.reset(v);
        available = available.minus(adj_[static_cast<std::size_t>(v)]);
        uncoloured.reset(v);
        order.push_back(v);
        colour.push_back(c);
      }
    }
  }

  std::vector<Bits128> adj_;
  std::vector<int> best_;
};

}  // namespace

OracleResult max_code(int n, int d) {
  check_code_params(n, d, kMaxCodeBlocklength);
  const int count = 1 << n;
  if (d <= 1) {
    std::vector<Word> all(static_cast<std::size_t>(count));
    std::iota(all.begin(), all.end(), Word{0});
    return {static_cast<std::uint64_t>(count), CodeSet(n, std::move(all))};
  }
  // Translation invariance: some maximum code contains 0, so search among words
  // of weight >= d. Vertices are relabelled by decreasing degree in that set.
  std::vector<Word> cand;
  for (Word w = 1; w < static_cast<Word>(count); ++w)
    if (popcount(w) >= d) cand.push_back(w);
  const auto compatible = [d](Word a, Word b) { return popcount(a ^ b) >= d; };
  std::vector<int> degree(cand.size(), 0);
  for (std::size_t i = 0; i < cand.size(); ++i)
    for (std::size_t j = 0; j < cand.size(); ++j)
      if (i != j && compatible(cand[i], cand[j])) ++degree[i];
  std::vector<std::size_t> order(cand.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
  std::vector<Bits128> adj(cand.size());
  Bits128 all;
  for (std::size_t i = 0; i < order.size(); ++i) {
    all.set(static_cast<int>(i));
    for (std::size_t j = 0; j < order.size(); ++j)
      if (i != j && compatible(cand[order[i]], cand[order[j]])) adj[i].set(static_cast<int>(j));
  }
  std::vector<Word> words{0};
  if (!cand.empty()) {
    for (const int v : CliqueSearch(std::move(adj)).run(all)) words.push_back(cand[order[static_cast<std::size_t>(v)]]);
  }
  CodeSet witness(n, std::move(words));
  return {witness.size(), std::move(witness)};
}

namespace {

// Depth-first search over reduced row echelon generator matrices, built from the
// row with the largest pivot down. A row with pivot p is zero below p and on the
// pivots already placed; its other entries are free.
class EchelonSearch {
 public:
  EchelonSearch(int n, int d) : n_(n), d_(d) {}

  bool find(int k, std::vector<Word>& basis_out) {
    span_.assign(1, 0);
    basis_.clear();
    pivots_ = 0;
    if (!extend(k, n_)) return false;
    basis_out = basis_;
    return true;
  }

 private:
  bool extend(int rows_left, int pivot_limit) {
    if (rows_left == 0) return true;
    for (int p = pivot_limit - 1; p >= rows_left - 1; --p) {
      std::vector<int> free_cols;
      for (int c = p + 1; c < n_; ++c)
        if (!((pivots_ >> c) & 1U)) free_cols.push_back(c);
      const std::uint64_t choices = std::uint64_t{1} << free_cols.size();
      for (std::uint64_t bits = 0; bits < choices; ++bits) {
        Word row = Word{1} << p;
        for (std::size_t f = 0; f < free_cols.size(); ++f)
          if ((bits >> f) & 1U) row |= Word{1} << free_cols[f];
        if (!coset_ok(row)) continue;
        const std::size_t old = span_.size();
        for (std::size_t i = 0; i < old; ++i) span_.push_back(span_[i] ^ row);
        basis_.push_back(row);
        pivots_ |= Word{1} << p;
        if (extend(rows_left - 1, p)) return true;
        pivots_ &= ~(Word{1} << p);
        basis_.pop_back();
        span_.resize(old);
      }
    }
    return false;
  }

  bool coset_ok(Word row) const {
    for (const Word s : span_)
      if (popcount(row ^ s) < d_) return false;
    return true;
  }

  int n_;
  int d_;
  std::vector<Word> span_;
  std::vector<Word> basis_;
  Word pivots_ = 0;
};

}  // namespace

OracleResult max_linear_code(int n, int d) {
  check_code_params(n, d, kMaxLinearCodeBlocklength);
  std::vector<Word> best_basis;
  // Existence is monotone in k (subcodes keep the distance), so stop at the
  // first dimension with no code.
  EchelonSearch search(n, std::max(d, 1));
  for (int k = 1; k <= n; ++k) {
    std::vector<Word> basis;
    if (!search.find(k, basis)) break;
    best_basis = std::move(basis);
  }
  CodeSet witness = CodeSet::span(n, best_basis);
  return {witness.size(), std::move(witness)};
}

CodeSet dual_code(const CodeSet& code) {
  if (!code.is_linear()) fail(ErrorCode::NotLinear, "dual code requires a linear code");
  const int n = code.blocklength();
  if (n > 24) fail(ErrorCode::Capacity, "dual code enumeration budget is n <= 24");
  // Basis by greedy insertion with xor-reduction.
  std::vector<Word> basis;
  for (Word w : code.words()) {
    for (const Word b : basis) w = std::min(w, w ^ b);
    if (w != 0) {
      basis.push_back(w);
      std::sort(basis.rbegin(), basis.rend());
    }
  }
  std::vector<Word> dual;
  for (Word x = 0; x < (Word{1} << n); ++x) {
    bool orthogonal = true;
    for (const Word b : basis)
      if (popcount(x & b) % 2 != 0) {
        orthogonal = false;
        break;
      }
    if (orthogonal) dual.push_back(x);
  }
  return CodeSet(n, std::move(dual));
}

MacWilliamsReport verify_macwilliams(const CodeSet& code, const KrawtchoukTable& table) {
  if (code.blocklength() != table.blocklength())
    fail(ErrorCode::InvalidInput, "code and table blocklengths differ");
  const auto& space = table.space();
  const std::size_t N = space.size();
  MacWilliamsReport report;

  const CodeProfile general = profile_of_code(code, space, false);
  std::vector<Rational> transform(N, Rational(0));
  for (std::size_t h = 0; h < N; ++h) {
    for (std::size_t g = 0; g < N; ++g)
      if (general.values[g] != 0) transform[h] += Rational(table(h, g)) * general.values[g];
    ++report.inequality.checked;
    if (transform[h] < 0)
      report.inequality.violations.push_back("h=" + std::to_string(h) + ": " + to_fraction_string(transform[h]));
  }

  if (code.is_linear()) {
    report.identity_checked = true;
    const CodeProfile mine = profile_of_code(code, space, true);
    const CodeProfile dual = profile_of_code(dual_code(code), space, true);
    BigInt scale = 1;
    for (int j = 0; j < table.level(); ++j) scale *= static_cast<long>(code.size());
    for (std::size_t h = 0; h < N; ++h) {
      Rational rhs = 0;
      for (std::size_t g = 0; g < N; ++g)
        if (mine.values[g] != 0) rhs += Rational(table(h, g)) * mine.values[g];
      rhs /= Rational(scale);
      ++report.identity.checked;
      if (rhs != dual.values[h])
        report.identity.violations.push_back("h=" + std::to_string(h) + ": transform " + to_fraction_string(rhs) +
                                             " vs dual profile " + to_fraction_string(dual.values[h]));
    }
  }
  return report;
}

MacWilliamsReport verify_macwilliams(const CodeSet& code, int level) {
  return verify_macwilliams(code, build_table(code.blocklength(), level));
}

std::uint64_t pack_point(std::span<const Word> words, int n) {
  std::uint64_t packed = 0;
  for (std::size_t j = 0; j < words.size(); ++j) packed |= words[j] << (static_cast<int>(j) * n);
  return packed;
}

namespace {

void check_fourier_budget(int n, int level) {
  if (n < 1 || level < 1) fail(ErrorCode::InvalidInput, "blocklength and level must be positive");
  if (n * level > kMaxFourierBits)
    fail(ErrorCode::Capacity, "Fourier program needs 2^" + std::to_string(n * level) + " variables; budget is 2^" +
                                  std::to_string(kMaxFourierBits));
}

std::vector<Word> unpack_point(std::uint64_t x, int n, int level) {
  std::vector<Word> words(static_cast<std::size_t>(level));
  const Word mask = (Word{1} << n) - 1;
  for (int j = 0; j < level; ++j) words[static_cast<std::size_t>(j)] = (x >> (j * n)) & mask;
  return words;
}

bool point_forbidden(std::uint64_t x, int n, int d, int level, bool linear) {
  const auto words = unpack_point(x, n, level);
  const auto bad = [d](int w) { return w >= 1 && w <= d - 1; };
  for (SubsetMask J = 1; J < (SubsetMask{1} << level); ++J) {
    if (!linear && popcount(J) != 1) continue;
    Word acc = 0;
    for (int j = 0; j < level; ++j)
      if (J & (SubsetMask{1} << j)) acc ^= words[static_cast<std::size_t>(j)];
    if (bad(popcount(acc))) return true;
  }
  return false;
}

}  // namespace

LinearProgram build_fourier_lp(int n, int d, int level, bool linear) {
  check_fourier_budget(n, level);
  if (d < 0 || d > n + 1) fail(ErrorCode::InvalidInput, "distance must lie in [0, n+1]");
  const std::uint64_t points = std::uint64_t{1} << (n * level);
  LinearProgram lp;
  lp.kind = LpKind::Fourier;
  lp.n = n;
  lp.d = d;
  lp.level = level;
  lp.linear = linear;
  lp.index_size = points;
  for (std::uint64_t x = 0; x < points; ++x) {
    if (point_forbidden(x, n, d, level, linear)) continue;
    lp.variables.push_back(x);
    lp.variable_names.push_back("x_" + std::to_string(x));
    lp.objective.emplace_back(1);
  }
  LpRow norm{"NORM", std::vector<Rational>(lp.num_variables(), Rational(0)), Relation::Equal, Rational(1)};
  norm.coeffs[0] = 1;  // the zero point always survives
  lp.rows.push_back(std::move(norm));
  for (std::uint64_t alpha = 0; alpha < points; ++alpha) {
    LpRow row{"FC_" + std::to_string(alpha), {}, Relation::GreaterEqual, Rational(0)};
    row.coeffs.reserve(lp.num_variables());
    for (const std::size_t x : lp.variables)
      row.coeffs.emplace_back(popcount(static_cast<Word>(alpha & x)) % 2 == 0 ? 1 : -1);
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

std::vector<Rational> indicator_solution(const CodeSet& code, int level) {
  const int n = code.blocklength();
  check_fourier_budget(n, level);
  const std::uint64_t points = std::uint64_t{1} << (n * level);
  std::vector<Rational> a(points, Rational(0));
  for (std::uint64_t x = 0; x < points; ++x) {
    const auto words = unpack_point(x, n, level);
    if (std::all_of(words.begin(), words.end(), [&](Word w) { return code.contains(w); })) a[x] = 1;
  }
  return a;
}

std::vector<Rational> aggregate_by_config(std::span<const Rational> point, const ConfigSpace& space) {
  const int n = space.blocklength();
  const int level = space.level();
  check_fourier_budget(n, level);
  if (point.size() != (std::size_t{1} << (n * level))) fail(ErrorCode::InvalidInput, "point vector has the wrong size");
  std::vector<Rational> out(space.size(), Rational(0));
  for (std::uint64_t x = 0; x < point.size(); ++x) {
    if (point[x] == 0) continue;
    const WordTuple tuple(n, unpack_point(x, n, level));
    out[space.index_of(venn_of_tuple(tuple))] += point[x];
  }
  return out;
}

nlohmann::json to_json(const OracleResult& result, int n, int d, bool linear) {
  return nlohmann::json{{"n", n},
                        {"d", d},
                        {"family", linear ? "linear" : "general"},
                        {"size", result.size},
                        {"min_distance", result.witness.min_distance()},
                        {"witness", to_json(result.witness)}};
}

OracleResult load_or_compute_oracle(int n, int d, bool linear, const std::filesystem::path& cache_dir) {
  const auto compute = [&] { return linear ? max_linear_code(n, d) : max_code(n, d); };
  if (cache_dir.empty()) return compute();
  const auto path = cache_dir / ("oracle_n" + std::to_string(n) + "_d" + std::to_string(d) + "_" +
                                 (linear ? "linear" : "general") + ".json");
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) {
    try {
      std::ifstream in(path);
      const auto j = nlohmann::json::parse(in);
      CodeSet witness = code_from_json(j.at("witness"));
      const auto size = j.at("size").get<std::uint64_t>();
      // Accept the cache only if the witness proves the stored size.
      if (witness.size() == size && witness.blocklength() == n && witness.min_distance() >= d &&
          (!linear || witness.is_linear()))
        return {size, std::move(witness)};
    } catch (const std::exception&) {
      // fall through and recompute
    }
  }
  OracleResult result = compute();
  std::filesystem::create_directories(cache_dir, ec);
  std::ofstream out(path);
  if (out) out << to_json(result, n, d, linear).dump(1) << '\n';
  return result;
}

}  // namespace krawlp
