#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace chh {

// A threshold, tolerance or table size outside its permitted range.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An input line that does not contain a tab separator.
class MalformedLine : public std::runtime_error {
 public:
  MalformedLine(std::uint64_t line_number, const std::string& what)
      : std::runtime_error(what), line_number_(line_number) {}

  std::uint64_t line_number() const noexcept { return line_number_; }

 private:
  std::uint64_t line_number_;
};

// Exact counting asked to hold more tuples than its configured cap.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two inputs that should describe the same stream do not.
class InconsistentInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A multi-pass consumer was handed a source that cannot be rewound.
class UnsupportedSource : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Corrupt, truncated or unknown-version sketch snapshot.
class SnapshotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chh
