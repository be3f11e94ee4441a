#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace commscore {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedAddress : public Error {
 public:
  using Error::Error;
};

/// The framing of an input could not be parsed at all (missing CSV header,
/// unterminated quote, mbox without a leading separator).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// One record of an otherwise readable input is invalid.
class MalformedRecord : public Error {
 public:
  MalformedRecord(std::string source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line),
        reason_(what) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string source_;
  std::size_t line_;
  std::string reason_;
};

class InsufficientWindows : public Error {
 public:
  using Error::Error;
};

/// contribution_index / awvci on actors or days without any traffic.
class NoActivity : public Error {
 public:
  using Error::Error;
};

class NoResponses : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateSeries : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

class CohortTooSmall : public Error {
 public:
  using Error::Error;
};

class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};

}  // namespace commscore
