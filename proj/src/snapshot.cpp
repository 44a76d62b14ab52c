#include "chh/snapshot.hpp"

#include <array>
#include <fstream>
#include <iterator>

#include "chh/error.hpp"

namespace chh {

namespace {

constexpr std::string_view kMagic("CHHSNAP\0", 8);

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }

  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }

  void bytes(std::string_view s) {
    u64(s.size());
    out_.append(s);
  }

  void fraction(const Fraction& f) {
    i64(f.num());
    i64(f.den());
  }

  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(in_[pos_++]);
  }

  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }

  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }

  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }

  std::string bytes() {
    const std::uint64_t len = u64();
    need(len);
    std::string s(in_.substr(pos_, len));
    pos_ += len;
    return s;
  }

  std::string_view raw(std::size_t len) {
    need(len);
    auto s = in_.substr(pos_, len);
    pos_ += len;
    return s;
  }

  Fraction fraction() {
    const std::int64_t num = i64();
    const std::int64_t den = i64();
    try {
      Fraction f(num, den);
      if (f.num() != num || f.den() != den) throw SnapshotError("fraction not in lowest terms");
      return f;
    } catch (const InvalidParameter& e) {
      throw SnapshotError(std::string("bad fraction: ") + e.what());
    }
  }

  bool done() const noexcept { return pos_ == in_.size(); }

 private:
  void need(std::uint64_t len) const {
    if (len > in_.size() - pos_) throw SnapshotError("snapshot truncated");
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_snapshot(const SketchState& state) {
  Writer w;
  for (char c : kMagic) w.u8(static_cast<std::uint8_t>(c));
  w.u32(kSnapshotVersion);

  const auto& p = state.params;
  w.fraction(p.phi1);
  w.fraction(p.phi2);
  w.u8(p.eps1 ? 1 : 0);
  if (p.eps1) {
    w.fraction(*p.eps1);
    w.fraction(*p.eps2);
  }
  w.u64(p.s1);
  w.u64(p.s2);
  w.u8(!p.sizing_case ? 0 : (*p.sizing_case == SizingCase::I ? 1 : 2));

  w.u64(state.n);
  w.u64(state.primaries.size());
  for (const auto& primary : state.primaries) {
    w.bytes(primary.key);
    w.u64(primary.est_count);
    w.u64(primary.inner_items_seen);
    w.u64(primary.inner.size());
    for (const auto& e : primary.inner) {
      w.bytes(e.key);
      w.u64(e.count);
    }
  }
  return w.take();
}

SketchState decode_snapshot(std::string_view bytes) {
  Reader r(bytes);
  if (r.raw(kMagic.size()) != kMagic) throw SnapshotError("not a sketch snapshot");
  if (const auto version = r.u32(); version != kSnapshotVersion) {
    throw SnapshotError("unsupported snapshot version " + std::to_string(version));
  }

  SketchState state;
  auto& p = state.params;
  p.phi1 = r.fraction();
  p.phi2 = r.fraction();
  switch (r.u8()) {
    case 0:
      break;
    case 1:
      p.eps1 = r.fraction();
      p.eps2 = r.fraction();
      break;
    default:
      throw SnapshotError("bad tolerance flag");
  }
  p.s1 = r.u64();
  p.s2 = r.u64();
  switch (r.u8()) {
    case 0:
      break;
    case 1:
      p.sizing_case = SizingCase::I;
      break;
    case 2:
      p.sizing_case = SizingCase::II;
      break;
    default:
      throw SnapshotError("bad sizing case");
  }

  state.n = r.u64();
  const std::uint64_t count = r.u64();
  if (count > p.s1) throw SnapshotError("more primaries than s1");
  state.primaries.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    SketchState::Primary primary;
    primary.key = r.bytes();
    primary.est_count = r.u64();
    primary.inner_items_seen = r.u64();
    const std::uint64_t inner_count = r.u64();
    if (inner_count > p.s2) throw SnapshotError("inner table larger than s2");
    primary.inner.reserve(inner_count);
    for (std::uint64_t j = 0; j < inner_count; ++j) {
      MgEntry e;
      e.key = r.bytes();
      e.count = r.u64();
      primary.inner.push_back(std::move(e));
    }
    state.primaries.push_back(std::move(primary));
  }
  if (!r.done()) throw SnapshotError("trailing bytes after snapshot");
  return state;
}

void save_snapshot(const std::filesystem::path& path, const SketchState& state) {
  const std::string bytes = encode_snapshot(state);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

SketchState load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("cannot open snapshot " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

}  // namespace chh
