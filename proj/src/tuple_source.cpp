#include "chh/tuple_source.hpp"

#include <iostream>

#include "chh/error.hpp"

namespace chh {

TupleRecord parse_tuple_line(std::string_view line, std::uint64_t line_number) {
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto tab = line.find('\t');
  if (tab == std::string_view::npos) {
    throw MalformedLine(line_number, "line " + std::to_string(line_number) + ": no tab separator");
  }
  return TupleRecord{std::string(line.substr(0, tab)), std::string(line.substr(tab + 1))};
}

StreamTupleSource::StreamTupleSource(std::istream& in, LinePolicy policy) : in_(&in), policy_(policy) {}

void StreamTupleSource::reset(std::istream& in) {
  in_ = &in;
  line_number_ = 0;
  skipped_ = 0;
}

bool StreamTupleSource::next(TupleRecord& out) {
  while (std::getline(*in_, line_)) {
    ++line_number_;
    try {
      out = parse_tuple_line(line_, line_number_);
      return true;
    } catch (const MalformedLine&) {
      if (policy_ == LinePolicy::kStrict) throw;
      ++skipped_;
    }
  }
  if (in_->bad()) throw std::runtime_error("read error at line " + std::to_string(line_number_));
  return false;
}

void StreamTupleSource::rewind() { throw UnsupportedSource("input stream cannot be replayed"); }

namespace {

std::unique_ptr<std::ifstream> open_input(const std::filesystem::path& path) {
  auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*file) throw std::runtime_error("cannot open " + path.string());
  return file;
}

}  // namespace

FileTupleSource::FileTupleSource(std::filesystem::path path, LinePolicy policy)
    : StreamTupleSource(std::cin, policy), path_(std::move(path)), file_(open_input(path_)) {
  reset(*file_);
}

void FileTupleSource::rewind() {
  file_ = open_input(path_);
  reset(*file_);
}

bool VectorTupleSource::next(TupleRecord& out) {
  if (pos_ >= tuples_.size()) return false;
  out = tuples_[pos_++];
  return true;
}

}  // namespace chh
