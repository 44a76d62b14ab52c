#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "chh/sketch.hpp"

namespace chh {

// Binary snapshot, all integers little-endian:
//
//   "CHHSNAP\0"  u32 version(=1)
//   params: phi1, phi2 as (i64 num, i64 den); u8 has_eps; [eps1, eps2];
//           u64 s1; u64 s2; u8 case (0 none, 1 I, 2 II)
//   u64 n; u64 primary_count
//   per primary, ascending by key:
//     bytes key; u64 est_count; u64 inner_items_seen; u64 inner_count
//     per inner entry, ascending by key: bytes key; u64 count
//
// where "bytes" is u64 length followed by the raw bytes.
inline constexpr std::uint32_t kSnapshotVersion = 1;

std::string encode_snapshot(const SketchState& state);
// Throws SnapshotError on truncation, bad magic, unknown version or trailing bytes.
SketchState decode_snapshot(std::string_view bytes);

void save_snapshot(const std::filesystem::path& path, const SketchState& state);
SketchState load_snapshot(const std::filesystem::path& path);

}  // namespace chh
