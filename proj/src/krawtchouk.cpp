#include "krawlp/krawtchouk.hpp"

#include <algorithm>
#include <limits>

#include "krawlp/error.hpp"

namespace krawlp {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void check_pair(const SDConfig& h, const SDConfig& g) {
  if (h.level() != g.level()) fail(ErrorCode::InvalidInput, "configurations have different levels");
}

void check_table_level(int level) {
  if (level < 1 || level > kMaxLevelLp)
    fail(ErrorCode::InvalidInput, "table level must lie in [1, " + std::to_string(kMaxLevelLp) + "]");
}

void check_direct_budget(int n, int level) {
  if (n * level > kMaxDirectBits)
    fail(ErrorCode::Capacity, "character-sum evaluation needs 2^" + std::to_string(n * level) +
                                  " tuples; budget is 2^" + std::to_string(kMaxDirectBits));
}

// Venn cell sizes of the tuple packed into `packed` (word j at bits [jn, (j+1)n)).
void packed_venn(std::uint64_t packed, int n, int level, std::vector<int>& out) {
  std::fill(out.begin(), out.end(), 0);
  for (int i = 0; i < n; ++i) {
    SubsetMask cell = 0;
    for (int j = 0; j < level; ++j)
      if ((packed >> (j * n + i)) & 1U) cell |= SubsetMask{1} << j;
    ++out[cell];
  }
}

std::uint64_t pack(const WordTuple& t) {
  std::uint64_t packed = 0;
  for (int j = 0; j < t.level(); ++j) packed |= t[static_cast<std::size_t>(j)] << (j * t.blocklength());
  return packed;
}

}  // namespace

BigInt eval_direct(const SDConfig& h, const SDConfig& g, int n) {
  check_pair(h, g);
  const int level = g.level();
  check_direct_budget(n, level);
  const VennConfig target = sd_to_venn(h, n);
  const std::uint64_t x = pack(representative(sd_to_venn(g, n)));
  const std::uint64_t total = std::uint64_t{1} << (n * level);
  std::vector<int> cells(std::size_t{1} << level);
  long acc = 0;
  for (std::uint64_t y = 0; y < total; ++y) {
    packed_venn(y, n, level, cells);
    if (!std::equal(cells.begin(), cells.end(), target.entries().begin())) continue;
    acc += (popcount(x & y) % 2 == 0) ? 1 : -1;
  }
  return BigInt(acc);
}

namespace {

// Signed sum over contingency tables F with row sums `rows` and column sums `cols`
// of prod_J rows[J]! / prod_{J,K} F(J,K)! times (-1)^{sum F(J,K) |J & K|}.
class ContingencySum {
 public:
  ContingencySum(std::span<const int> rows, std::span<const int> cols)
      : rows_(rows), side_(rows.size()), col_left_(cols.begin(), cols.end()) {}

  BigInt run() {
    numerator_ = 1;
    for (const int r : rows_) numerator_ *= factorial(r);
    total_ = 0;
    visit(0, 0, rows_.empty() ? 0 : rows_[0], BigInt(1), 0);
    return total_;
  }

 private:
  void visit(std::size_t row, std::size_t col, int row_left, const BigInt& denom, int parity) {
    if (row == side_) {
      BigInt term = numerator_ / denom;
      total_ += (parity % 2 == 0) ? term : BigInt(-term);
      return;
    }
    const int bits = popcount(static_cast<SubsetMask>(row & col));
    if (col + 1 == side_) {
      // Last cell of the row takes what is left.
      if (row_left > col_left_[col]) return;
      if (row + 1 == side_) {
        // Final cell: every column must be exhausted.
        for (std::size_t k = 0; k + 1 < side_; ++k)
          if (col_left_[k] != 0) return;
        if (row_left != col_left_[col]) return;
      }
      col_left_[col] -= row_left;
      const int next_row_sum = (row + 1 < side_) ? rows_[row + 1] : 0;
      visit(row + 1, 0, next_row_sum, denom * factorial(row_left), parity + bits * row_left);
      col_left_[col] += row_left;
      return;
    }
    const int hi = std::min(row_left, col_left_[col]);
    for (int f = 0; f <= hi; ++f) {
      col_left_[col] -= f;
      visit(row, col + 1, row_left - f, denom * factorial(f), parity + bits * f);
      col_left_[col] += f;
    }
  }

  std::span<const int> rows_;
  std::size_t side_;
  std::vector<int> col_left_;
  BigInt numerator_;
  BigInt total_;
};

BigInt explicit_from_venn(const VennConfig& h, const VennConfig& g) {
  return ContingencySum(g.entries(), h.entries()).run();
}

}  // namespace

BigInt eval_explicit(const SDConfig& h, const SDConfig& g, int n) {
  check_pair(h, g);
  return explicit_from_venn(sd_to_venn(h, n), sd_to_venn(g, n));
}

BigInt classical_krawtchouk(int i, int j, int n) {
  if (n < 0 || i < 0 || j < 0 || i > n || j > n)
    fail(ErrorCode::InvalidInput, "classical Krawtchouk needs 0 <= i, j <= n");
  BigInt acc = 0;
  for (int t = 0; t <= i; ++t) {
    const BigInt term = binomial(j, t) * binomial(n - j, i - t);
    if (t % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

KrawtchoukTable::KrawtchoukTable(std::shared_ptr<const ConfigSpace> space, std::vector<BigInt> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_ || values_.size() != space_->size() * space_->size())
    fail(ErrorCode::InvalidInput, "table storage does not match its configuration space");
}

namespace {

std::shared_ptr<const ConfigSpace> table_space(int n, int level) {
  check_table_level(level);
  auto space = std::make_shared<const ConfigSpace>(n, level);
  if (space->size() > kMaxTableConfigs)
    fail(ErrorCode::Capacity, "table for n=" + std::to_string(n) + ", l=" + std::to_string(level) + " has " +
                                  std::to_string(space->size()) + " configurations; budget is " +
                                  std::to_string(kMaxTableConfigs));
  return space;
}

// removed[i][K] = index in `lower` of venn(i) - e_K, or kNone when cell K is empty.
std::vector<std::vector<std::size_t>> removal_map(const ConfigSpace& upper, const ConfigSpace& lower) {
  const std::size_t cells = std::size_t{1} << upper.level();
  std::vector<std::vector<std::size_t>> out(upper.size(), std::vector<std::size_t>(cells, kNone));
  std::vector<int> buf(cells);
  for (std::size_t i = 0; i < upper.size(); ++i) {
    const auto v = upper.venn(i).entries();
    for (std::size_t K = 0; K < cells; ++K) {
      if (v[K] == 0) continue;
      std::copy(v.begin(), v.end(), buf.begin());
      --buf[K];
      out[i][K] = lower.index_of_cells(buf);
    }
  }
  return out;
}

std::size_t first_occupied(const VennConfig& v, std::size_t from) {
  for (std::size_t J = from; J < v.entries().size(); ++J)
    if (v.entries()[J] > 0) return J;
  return kNone;
}

KrawtchoukTable build_explicit(std::shared_ptr<const ConfigSpace> space) {
  const std::size_t N = space->size();
  std::vector<BigInt> values(N * N);
  for (std::size_t h = 0; h < N; ++h)
    for (std::size_t g = 0; g < N; ++g) values[h * N + g] = explicit_from_venn(space->venn(h), space->venn(g));
  return KrawtchoukTable(std::move(space), std::move(values));
}

KrawtchoukTable build_direct(std::shared_ptr<const ConfigSpace> space) {
  const int n = space->blocklength();
  const int level = space->level();
  check_direct_budget(n, level);
  const std::size_t N = space->size();
  const std::uint64_t total = std::uint64_t{1} << (n * level);
  // Index of every packed tuple, computed once.
  std::vector<std::uint32_t> index_of_tuple(total);
  std::vector<int> cells(std::size_t{1} << level);
  for (std::uint64_t y = 0; y < total; ++y) {
    packed_venn(y, n, level, cells);
    index_of_tuple[y] = static_cast<std::uint32_t>(space->index_of_cells(cells));
  }
  std::vector<long> acc(N * N, 0);
  for (std::size_t g = 0; g < N; ++g) {
    const std::uint64_t x = pack(representative(space->venn(g)));
    for (std::uint64_t y = 0; y < total; ++y)
      acc[index_of_tuple[y] * N + g] += (popcount(x & y) % 2 == 0) ? 1 : -1;
  }
  std::vector<BigInt> values(acc.begin(), acc.end());
  return KrawtchoukTable(std::move(space), std::move(values));
}

// K_h(g) = sum_{K0 : V(h)(K0) > 0} (-1)^{|J0 & K0|} K_{h - K0}(g - J0), J0 the first occupied cell of g.
KrawtchoukTable build_recursive(int n, int level) {
  auto space = table_space(1, level);
  KrawtchoukTable table = build_explicit(space);
  for (int m = 2; m <= n; ++m) {
    auto upper = table_space(m, level);
    const auto removed = removal_map(*upper, table.space());
    const std::size_t N = upper->size();
    const std::size_t cells = std::size_t{1} << level;
    std::vector<BigInt> values(N * N);
    for (std::size_t h = 0; h < N; ++h) {
      for (std::size_t g = 0; g < N; ++g) {
        const std::size_t J0 = first_occupied(upper->venn(g), 0);
        const std::size_t g_low = removed[g][J0];
        BigInt acc = 0;
        for (std::size_t K0 = 0; K0 < cells; ++K0) {
          const std::size_t h_low = removed[h][K0];
          if (h_low == kNone) continue;
          if (popcount(static_cast<SubsetMask>(J0 & K0)) % 2 == 0) {
            acc += table(h_low, g_low);
          } else {
            acc -= table(h_low, g_low);
          }
        }
        values[h * N + g] = std::move(acc);
      }
    }
    table = KrawtchoukTable(std::move(upper), std::move(values));
  }
  return table;
}

// Same-n recursion obtained by shifting one coordinate into the empty cell:
//   K_h(g) = - sum_{K0 != 0, V(h)(K0) > 0} K_{h+0-K0}(g)
//            + sum_{K0 : V(h+0)(K0) > 0} (-1)^{|J0 & K0|} K_{h+0-K0}(g+0-J0)
// with J0 a nonempty occupied cell of g. Every referenced entry has a larger
// empty cell on h or g, hence an earlier canonical index.
KrawtchoukTable build_in_level(int n, int level) {
  auto space = table_space(n, level);
  const std::size_t N = space->size();
  const std::size_t cells = std::size_t{1} << level;
  // shifted[i][K] = index of venn(i) + e_0 - e_K (K = 0 maps to i itself).
  std::vector<std::vector<std::size_t>> shifted(N, std::vector<std::size_t>(cells, kNone));
  std::vector<int> buf(cells);
  for (std::size_t i = 0; i < N; ++i) {
    const auto v = space->venn(i).entries();
    shifted[i][0] = i;
    for (std::size_t K = 1; K < cells; ++K) {
      if (v[K] == 0) continue;
      std::copy(v.begin(), v.end(), buf.begin());
      ++buf[0];
      --buf[K];
      shifted[i][K] = space->index_of_cells(buf);
    }
  }
  std::vector<BigInt> values(N * N);
  auto at = [&](std::size_t h, std::size_t g) -> BigInt& { return values[h * N + g]; };
  for (std::size_t h = 0; h < N; ++h) {
    for (std::size_t g = 0; g < N; ++g) {
      if (h == 0) {
        at(h, g) = 1;
        continue;
      }
      if (g == 0) {
        at(h, g) = space->orbit(h);
        continue;
      }
      const std::size_t J0 = first_occupied(space->venn(g), 1);
      const std::size_t g_shift = shifted[g][J0];
      BigInt acc = at(h, g_shift);  // K0 = 0 term
      for (std::size_t K0 = 1; K0 < cells; ++K0) {
        const std::size_t h_shift = shifted[h][K0];
        if (h_shift == kNone) continue;
        acc -= at(h_shift, g);
        if (popcount(static_cast<SubsetMask>(J0 & K0)) % 2 == 0) {
          acc += at(h_shift, g_shift);
        } else {
          acc -= at(h_shift, g_shift);
        }
      }
      at(h, g) = std::move(acc);
    }
  }
  return KrawtchoukTable(std::move(space), std::move(values));
}

}  // namespace

KrawtchoukTable build_table(int n, int level, TableMethod method) {
  check_table_level(level);
  switch (method) {
    case TableMethod::Recursive: return build_recursive(n, level);
    case TableMethod::InLevel: return build_in_level(n, level);
    case TableMethod::Explicit: return build_explicit(table_space(n, level));
    case TableMethod::Direct: return build_direct(table_space(n, level));
  }
  fail(ErrorCode::InvalidInput, "unknown table method");
}

namespace {

std::string pair_label(std::size_t a, std::size_t b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

IdentityReport verify_orthogonality(const KrawtchoukTable& table) {
  IdentityReport report{"orthogonality", 0, {}};
  const std::size_t N = table.size();
  const auto& space = table.space();
  const BigInt scale = pow2(static_cast<unsigned>(table.level() * table.blocklength()));
  for (std::size_t h = 0; h < N; ++h) {
    for (std::size_t h2 = h; h2 < N; ++h2) {
      BigInt acc = 0;
      for (std::size_t g = 0; g < N; ++g) acc += space.orbit(g) * table(h, g) * table(h2, g);
      const BigInt expected = (h == h2) ? BigInt(scale * space.orbit(h)) : BigInt(0);
      ++report.checked;
      if (acc != expected)
        report.violations.push_back("pair " + pair_label(h, h2) + ": got " + acc.str() + ", expected " +
                                    expected.str());
    }
  }
  return report;
}

IdentityReport verify_reflection(const KrawtchoukTable& table) {
  IdentityReport report{"reflection", 0, {}};
  const std::size_t N = table.size();
  const auto& space = table.space();
  for (std::size_t h = 0; h < N; ++h) {
    for (std::size_t g = h; g < N; ++g) {
      ++report.checked;
      if (table(h, g) * space.orbit(g) != table(g, h) * space.orbit(h))
        report.violations.push_back("pair " + pair_label(h, g));
    }
  }
  return report;
}

IdentityReport verify_table_invariants(const KrawtchoukTable& table) {
  IdentityReport report{"table-invariants", 0, {}};
  const std::size_t N = table.size();
  const auto& space = table.space();
  const BigInt bound = pow2(static_cast<unsigned>(table.level() * table.blocklength()));
  for (std::size_t h = 0; h < N; ++h) {
    ++report.checked;
    if (table(h, 0) != space.orbit(h)) report.violations.push_back("trivial column at h=" + std::to_string(h));
    if (table(0, h) != 1) report.violations.push_back("trivial row at g=" + std::to_string(h));
    BigInt row_sum = 0;
    for (std::size_t g = 0; g < N; ++g) {
      row_sum += space.orbit(g) * table(h, g);
      if (abs(table(h, g)) > bound) report.violations.push_back("magnitude bound at " + pair_label(h, g));
    }
    const BigInt expected = (h == 0) ? bound : BigInt(0);
    if (row_sum != expected) report.violations.push_back("weighted row sum at h=" + std::to_string(h));
  }
  return report;
}

}  // namespace krawlp
