#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spherebound {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. Carries a 1-based position when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, int line = 0, int column = 0);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A mathematical premise of a bound or certificate did not hold.
class PremiseError : public Error {
 public:
  PremiseError(std::string condition, const std::string& detail);

  const std::string& condition() const { return condition_; }

 private:
  std::string condition_;
};

/// Parameters outside the range an operation supports.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// How much a computed number can be trusted. Ordered weakest first, so the
/// rigor of a derived result is the minimum over its inputs.
enum class Rigor { Heuristic = 0, Numeric = 1, Rigorous = 2 };

constexpr Rigor min_rigor(Rigor a, Rigor b) { return a < b ? a : b; }

std::string_view to_string(Rigor rigor);

}  // namespace spherebound
