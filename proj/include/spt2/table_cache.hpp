#pragma once

// On-disk cache for spt2 tables.
//
// Binary layout (little-endian):
//   magic   "SPT2"   4 bytes
//   version u32      generating-function code version
//   N       u64
//   N+1 values, each a zigzag-encoded LEB128 arbitrary-precision integer.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>

#include "spt2/spt.hpp"

namespace spt2 {

// Bump whenever spt2_series changes in a way that could alter values.
inline constexpr std::uint32_t kTableFormulaVersion = 1;

class CacheCorrupt : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_table(const Spt2Table& t, std::ostream& out);
Spt2Table read_table(std::istream& in);
void write_csv(const Spt2Table& t, std::ostream& out);

// $SPT2_CACHE_DIR if set, otherwise $XDG_CACHE_HOME/spt2 or ~/.cache/spt2.
std::filesystem::path default_cache_dir();
std::filesystem::path cache_file(const std::filesystem::path& dir, std::size_t max_index);

struct TableLoad {
  Spt2Table table;
  bool from_cache = false;
};

// Loads a cached table covering max_index (exact or larger N), else builds and
// stores one. Throws CacheCorrupt when a matching file fails validation.
TableLoad load_or_build_table(std::size_t max_index, const std::filesystem::path& dir);

}  // namespace spt2
