#include <fstream>
#include <sstream>

#include "krawlp/error.hpp"
#include "krawlp/krawtchouk.hpp"

namespace krawlp {

namespace {

constexpr char kMagic[4] = {'K', 'R', 'W', 'T'};

void put_u32(std::ostream& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(std::istream& in) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    const int c = in.get();
    if (c == EOF) fail(ErrorCode::Io, "truncated table cache");
    v |= static_cast<std::uint32_t>(c & 0xFF) << (8 * i);
  }
  return v;
}

}  // namespace

std::string table_to_csv(const KrawtchoukTable& table) {
  std::ostringstream out;
  out << "h,g,value\n";
  for (std::size_t h = 0; h < table.size(); ++h)
    for (std::size_t g = 0; g < table.size(); ++g) out << h << ',' << g << ',' << table(h, g).str() << '\n';
  return out.str();
}

// Layout: magic, version, n, l, count (u32 little endian), then count^2 entries,
// each a u32 byte length followed by the decimal digits.
void save_table_binary(const KrawtchoukTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot write table cache " + path.string());
  out.write(kMagic, sizeof kMagic);
  put_u32(out, kTableCacheVersion);
  put_u32(out, static_cast<std::uint32_t>(table.blocklength()));
  put_u32(out, static_cast<std::uint32_t>(table.level()));
  put_u32(out, static_cast<std::uint32_t>(table.size()));
  for (std::size_t h = 0; h < table.size(); ++h) {
    for (const auto& value : table.row(h)) {
      const std::string digits = value.str();
      put_u32(out, static_cast<std::uint32_t>(digits.size()));
      out.write(digits.data(), static_cast<std::streamsize>(digits.size()));
    }
  }
  if (!out) fail(ErrorCode::Io, "failed writing table cache " + path.string());
}

KrawtchoukTable load_table_binary(const std::filesystem::path& path, int n, int level) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open table cache " + path.string());
  char magic[4] = {};
  in.read(magic, sizeof magic);
  if (!in || !std::equal(magic, magic + 4, kMagic)) fail(ErrorCode::Io, "not a table cache: " + path.string());
  if (get_u32(in) != kTableCacheVersion) fail(ErrorCode::Io, "table cache version mismatch");
  if (get_u32(in) != static_cast<std::uint32_t>(n) || get_u32(in) != static_cast<std::uint32_t>(level))
    fail(ErrorCode::Io, "table cache parameters mismatch");
  auto space = std::make_shared<const ConfigSpace>(n, level);
  if (get_u32(in) != space->size()) fail(ErrorCode::Io, "table cache size mismatch");
  std::vector<BigInt> values;
  values.reserve(space->size() * space->size());
  std::string digits;
  for (std::size_t i = 0; i < space->size() * space->size(); ++i) {
    const std::uint32_t len = get_u32(in);
    if (len == 0 || len > 4096) fail(ErrorCode::Io, "corrupt table cache entry");
    digits.resize(len);
    in.read(digits.data(), len);
    if (!in) fail(ErrorCode::Io, "truncated table cache");
    try {
      values.emplace_back(digits);
    } catch (const std::exception&) {
      fail(ErrorCode::Io, "corrupt table cache entry");
    }
  }
  return KrawtchoukTable(std::move(space), std::move(values));
}

std::filesystem::path table_cache_path(const std::filesystem::path& dir, int n, int level) {
  return dir / ("krawtchouk_n" + std::to_string(n) + "_l" + std::to_string(level) + "_v" +
                std::to_string(kTableCacheVersion) + ".bin");
}

KrawtchoukTable load_or_build_table(int n, int level, const std::filesystem::path& cache_dir) {
  if (cache_dir.empty()) return build_table(n, level);
  const auto path = table_cache_path(cache_dir, n, level);
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) {
    try {
      return load_table_binary(path, n, level);
    } catch (const Error&) {
      // stale or corrupt: rebuild below
    }
  }
  KrawtchoukTable table = build_table(n, level);
  std::filesystem::create_directories(cache_dir, ec);
  try {
    save_table_binary(table, path);
  } catch (const Error&) {
    // read-only cache directories are not fatal
  }
  return table;
}

}  // namespace krawlp
