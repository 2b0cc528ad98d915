#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace agc {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public Error {
public:
  ParseError(const std::string &message, SourcePos pos)
      : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) +
              ": " + message),
        pos_(pos), message_(message) {}

  SourcePos position() const noexcept { return pos_; }
  const std::string &bare_message() const noexcept { return message_; }

private:
  SourcePos pos_;
  std::string message_;
};

/// Raised when a formula mentions more atoms than the configured cap allows.
class ApCapExceeded : public Error {
public:
  ApCapExceeded(std::size_t count, std::size_t cap)
      : Error("formula has " + std::to_string(count) +
              " atomic propositions, cap is " + std::to_string(cap)),
        count_(count), cap_(cap) {}

  std::size_t count() const noexcept { return count_; }
  std::size_t cap() const noexcept { return cap_; }

private:
  std::size_t count_;
  std::size_t cap_;
};

class ContractError : public Error {
public:
  using Error::Error;
};

class AnalysisError : public Error {
public:
  using Error::Error;
};

} // namespace agc
