#ifndef UMBRA_ERROR_HPP
#define UMBRA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace umbra {

/// Failure categories surfaced by the library. Each maps to one class of
/// precondition or construction failure; the message carries the specifics.
enum class Errc {
  ViewpointInsideBall,
  OriginInsideBall,
  NonUnitDirection,
  UnsupportedDimension,
  DimensionMismatch,
  EmbeddingFailed,
  InvalidTriangle,
  ImagesOverlap,
  DomainError,
  TooManyBalls,
  PointInsideBall,
  PointInsideBody,
  PredicateFailed,
  NoRayFound,
  InvalidArgument,
  ParseError,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

const char* errc_name(Errc code);

}  // namespace umbra

#endif  // UMBRA_ERROR_HPP
