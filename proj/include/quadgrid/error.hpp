#ifndef QUADGRID_ERROR_HPP
#define QUADGRID_ERROR_HPP

#include <stdexcept>
#include <string>

namespace quadgrid {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Geometrically degenerate input (collinear polygon, repeated vertex, ...).
class DegenerateError : public Error {
public:
  using Error::Error;
};

/// A measure that is only defined on convex cells received a nonconvex one.
class NonconvexError : public Error {
public:
  using Error::Error;
};

/// Malformed input file; message carries the file name and line number.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Folded or non-eps-convex grid where a feasible one is required, or a
/// barrier functional evaluated outside its domain.
class FeasibilityError : public Error {
public:
  using Error::Error;
};

/// Invalid configuration (weights, tolerances, unknown names).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A per-cell quality measure could not be evaluated on some cells; the
/// message lists the offending cell indices.
class MeasureError : public Error {
public:
  using Error::Error;
};

} // namespace quadgrid

#endif
