#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace chh {

struct TupleRecord {
  std::string x;  // primary
  std::string y;  // secondary

  friend bool operator==(const TupleRecord&, const TupleRecord&) = default;
};

// Splits on the first tab after dropping one trailing "\n" or "\r\n". Either
// side may be empty. Throws MalformedLine carrying `line_number` when there is
// no tab.
TupleRecord parse_tuple_line(std::string_view line, std::uint64_t line_number = 0);

// Pull-based stream of tuples.
class TupleSource {
 public:
  virtual ~TupleSource() = default;

  // Fills `out` with the next tuple; false at end of stream.
  virtual bool next(TupleRecord& out) = 0;

  virtual bool replayable() const = 0;

  // Restarts from the first tuple. Throws UnsupportedSource when the source
  // cannot be replayed.
  virtual void rewind() = 0;
};

enum class LinePolicy {
  kStrict,  // first malformed line throws
  kSkip,    // malformed lines are counted and dropped
};

// Tab-separated tuples read incrementally from a caller-owned stream. Not
// replayable.
class StreamTupleSource : public TupleSource {
 public:
  explicit StreamTupleSource(std::istream& in, LinePolicy policy = LinePolicy::kStrict);

  bool next(TupleRecord& out) override;
  bool replayable() const override { return false; }
  void rewind() override;

  std::uint64_t skipped() const noexcept { return skipped_; }
  std::uint64_t lines_read() const noexcept { return line_number_; }

 protected:
  void reset(std::istream& in);

 private:
  std::istream* in_;
  LinePolicy policy_;
  std::string line_;
  std::uint64_t line_number_ = 0;
  std::uint64_t skipped_ = 0;
};

// Tab-separated tuple file; replays by reopening.
class FileTupleSource : public StreamTupleSource {
 public:
  explicit FileTupleSource(std::filesystem::path path, LinePolicy policy = LinePolicy::kStrict);

  bool replayable() const override { return true; }
  void rewind() override;

 private:
  std::filesystem::path path_;
  std::unique_ptr<std::ifstream> file_;
};

// In-memory tuples, mainly for tests.
class VectorTupleSource : public TupleSource {
 public:
  explicit VectorTupleSource(std::vector<TupleRecord> tuples) : tuples_(std::move(tuples)) {}

  bool next(TupleRecord& out) override;
  bool replayable() const override { return true; }
  void rewind() override { pos_ = 0; }

 private:
  std::vector<TupleRecord> tuples_;
  std::size_t pos_ = 0;
};

}  // namespace chh
