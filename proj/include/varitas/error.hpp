#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace varitas {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (words, cycle notation, PWords, JSON documents).
class ParseError : public Error {
 public:
  ParseError(std::string const& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Inputs that violate an operation's contract (bad table, index out of
/// range, non-subgroup, invalid parameters).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An order cap or evaluation budget would be exceeded.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string const& what, double required, double limit)
      : Error(what + " (required " + format(required) + ", limit " +
              format(limit) + ")"),
        required_(required),
        limit_(limit) {}

  double required() const noexcept { return required_; }
  double limit() const noexcept { return limit_; }

 private:
  static std::string format(double v) {
    if (v < 1e15) return std::to_string(static_cast<long long>(v));
    return std::to_string(v);
  }

  double required_;
  double limit_;
};

}  // namespace varitas
