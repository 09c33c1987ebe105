#ifndef TZ_ERRORS_HPP
#define TZ_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tz {

/// Base class for every recoverable error raised by this library.
/// Precondition violations (caller bugs) throw std::invalid_argument instead.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Expression text rejected by the parser. `offset` is the byte position of
/// the offending token in the input string.
class ParseError : public Error {
public:
  ParseError(const std::string &message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Field evaluation left its domain: division by zero, sqrt of a negative
/// value, sqrt or abs differentiated at zero, or zero raised to a negative
/// power.
class EvalDomainError : public Error {
public:
  using Error::Error;
};

/// The gradient of the defining function vanishes at the point, so the
/// surface is not immersed there and no curvature is defined.
class NotImmersedError : public Error {
public:
  using Error::Error;
};

/// |F(p)| exceeds the on-surface tolerance: the point does not lie on the
/// zero set of the defining function.
class OffSurfaceError : public Error {
public:
  using Error::Error;
};

/// The tangent hyperplane passes through the origin (support distance ~ 0),
/// so the centroaffine invariant is undefined at this point.
class TangentThroughOriginError : public Error {
public:
  using Error::Error;
};

/// Every sampled point of a constancy run was skipped; no invariant values
/// were collected.
class AllPointsDegenerateError : public Error {
public:
  using Error::Error;
};

/// Mesh generation excluded every grid point.
class EmptyMeshError : public Error {
public:
  using Error::Error;
};

} // namespace tz

#endif // TZ_ERRORS_HPP
