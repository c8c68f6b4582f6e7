#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nagao {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};

class EvenOrSmall : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class BadRange : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class BadPrime : public Error {
 public:
  using Error::Error;
};

class DegenerateDegree : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// A fiber the plane-model engine refuses to guess at.
class UnsupportedFiber : public Error {
 public:
  UnsupportedFiber(std::uint32_t p, std::uint32_t c, const std::string& fiber_class)
      : Error("unsupported fiber at p=" + std::to_string(p) + ", c=" + std::to_string(c) + " (" +
              fiber_class + ")"),
        p_(p),
        c_(c) {}

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t c() const noexcept { return c_; }

 private:
  std::uint32_t p_;
  std::uint32_t c_;
};

class SkippedPrime : public Error {
 public:
  SkippedPrime(std::uint32_t p, std::string reason)
      : Error("prime " + std::to_string(p) + " skipped: " + reason), p_(p), reason_(std::move(reason)) {}

  std::uint32_t p() const noexcept { return p_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::uint32_t p_;
  std::string reason_;
};

}  // namespace nagao
