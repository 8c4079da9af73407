#include "spt2/table_cache.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <regex>
#include <string>
#include <vector>

namespace spt2 {

namespace {

constexpr std::array<char, 4> kMagic{'S', 'P', 'T', '2'};
constexpr std::size_t kMaxValueBytes = 1 << 20;

template <typename T>
void put_le(std::ostream& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.put(static_cast<char>(v & 0xff));
    v >>= 8;
  }
}

template <typename T>
T get_le(std::istream& in, const char* what) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    int c = in.get();
    if (c == std::char_traits<char>::eof()) {
      throw CacheCorrupt(std::string("spt2 cache: truncated header (") + what + ")");
    }
    v |= static_cast<T>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}

void put_varint(std::ostream& out, const Integer& z) {
  Integer u = sgn(z) >= 0 ? Integer(2 * z) : Integer(-2 * z - 1);
  const std::size_t bits = sgn(u) == 0 ? 0 : mpz_sizeinbase(u.get_mpz_t(), 2);
  std::vector<unsigned char> bytes((bits + 7) / 8 + 1, 0);
  std::size_t count = 0;
  mpz_export(bytes.data(), &count, -1, 1, 0, 0, u.get_mpz_t());
  auto bit = [&bytes](std::size_t i) { return (bytes[i / 8] >> (i % 8)) & 1u; };
  const std::size_t groups = std::max<std::size_t>(1, (bits + 6) / 7);
  for (std::size_t g = 0; g < groups; ++g) {
    unsigned char b = 0;
    for (std::size_t k = 0; k < 7 && 7 * g + k < bits; ++k) b |= bit(7 * g + k) << k;
    if (g + 1 < groups) b |= 0x80;
    out.put(static_cast<char>(b));
  }
}

Integer get_varint(std::istream& in, std::size_t index) {
  std::vector<unsigned char> bytes;
  std::size_t bitpos = 0;
  for (;;) {
    int c = in.get();
    if (c == std::char_traits<char>::eof()) {
      throw CacheCorrupt("spt2 cache: truncated at value " + std::to_string(index));
    }
    const auto b = static_cast<unsigned char>(c);
    for (int k = 0; k < 7; ++k, ++bitpos) {
      if (bitpos / 8 >= bytes.size()) bytes.push_back(0);
      if (b >> k & 1u) bytes[bitpos / 8] |= static_cast<unsigned char>(1u << (bitpos % 8));
    }
    if (bytes.size() > kMaxValueBytes) {
      throw CacheCorrupt("spt2 cache: oversized value at index " + std::to_string(index));
    }
    if (!(b & 0x80)) break;
  }
  Integer u;
  mpz_import(u.get_mpz_t(), bytes.size(), -1, 1, 0, 0, bytes.data());
  if (mpz_odd_p(u.get_mpz_t())) return Integer(-(u + 1) / 2);
  return Integer(u / 2);
}

std::optional<std::size_t> cached_n(const std::filesystem::path& p) {
  static const std::regex pattern("spt2-v([0-9]+)-N([0-9]+)\\.bin");
  std::smatch m;
  const std::string name = p.filename().string();
  if (!std::regex_match(name, m, pattern)) return std::nullopt;
  if (std::stoul(m[1].str()) != kTableFormulaVersion) return std::nullopt;
  return static_cast<std::size_t>(std::stoull(m[2].str()));
}

Spt2Table read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw CacheCorrupt("spt2 cache: cannot open " + p.string());
  try {
    return read_table(in);
  } catch (const CacheCorrupt& e) {
    throw CacheCorrupt(std::string(e.what()) + " [" + p.string() + "]");
  }
}

}  // namespace

void write_table(const Spt2Table& t, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kTableFormulaVersion);
  put_le<std::uint64_t>(out, t.max_index());
  for (const auto& v : t.values) put_varint(out, v);
}

Spt2Table read_table(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() != 4 || magic != kMagic) throw CacheCorrupt("spt2 cache: bad magic");
  const auto version = get_le<std::uint32_t>(in, "version");
  if (version != kTableFormulaVersion) {
    throw CacheCorrupt("spt2 cache: version " + std::to_string(version) + ", expected " +
                       std::to_string(kTableFormulaVersion));
  }
  const auto n = get_le<std::uint64_t>(in, "N");
  if (n > (std::uint64_t{1} << 32)) throw CacheCorrupt("spt2 cache: implausible N");
  Spt2Table t;
  t.oracle = Oracle::GenFunc;
  t.values.reserve(n + 1);
  for (std::uint64_t i = 0; i <= n; ++i) {
    t.values.push_back(get_varint(in, i));
    if (sgn(t.values.back()) < 0) {
      throw CacheCorrupt("spt2 cache: negative value at index " + std::to_string(i));
    }
  }
  if (sgn(t.values[0]) != 0) throw CacheCorrupt("spt2 cache: spt2(0) must be 0");
  if (in.peek() != std::char_traits<char>::eof()) {
    throw CacheCorrupt("spt2 cache: trailing bytes after N+1 values");
  }
  return t;
}

void write_csv(const Spt2Table& t, std::ostream& out) {
  for (std::size_t n = 0; n < t.values.size(); ++n) out << n << ',' << t.values[n] << '\n';
}

std::filesystem::path default_cache_dir() {
  if (const char* d = std::getenv("SPT2_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) {
    return std::filesystem::path(x) / "spt2";
  }
  if (const char* h = std::getenv("HOME"); h && *h) {
    return std::filesystem::path(h) / ".cache" / "spt2";
  }
  return std::filesystem::current_path() / ".spt2-cache";
}

std::filesystem::path cache_file(const std::filesystem::path& dir, std::size_t max_index) {
  return dir / ("spt2-v" + std::to_string(kTableFormulaVersion) + "-N" +
                std::to_string(max_index) + ".bin");
}

TableLoad load_or_build_table(std::size_t max_index, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  const fs::path exact = cache_file(dir, max_index);
  if (fs::exists(exact)) return {read_file(exact), true};

  std::optional<std::pair<std::size_t, fs::path>> best;
  std::error_code ec;
  if (fs::is_directory(dir, ec)) {
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
      auto n = cached_n(entry.path());
      if (n && *n >= max_index && (!best || *n < best->first)) best.emplace(*n, entry.path());
    }
  }
  if (best) {
    Spt2Table t = read_file(best->second);
    if (t.max_index() != best->first) {
      throw CacheCorrupt("spt2 cache: header N disagrees with file name [" +
                         best->second.string() + "]");
    }
    return {truncate_table(t, max_index), true};
  }

  Spt2Table t = build_table(max_index);
  fs::create_directories(dir, ec);
  if (!ec) {
    const fs::path tmp = exact.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (out) write_table(t, out);
    }
    fs::rename(tmp, exact, ec);
    if (ec) fs::remove(tmp, ec);
  }
  return {std::move(t), false};
}

}  // namespace spt2
