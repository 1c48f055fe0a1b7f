#pragma once

#include <stdexcept>
#include <string>

namespace wslab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define WSLAB_DECLARE_ERROR(Name)            \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

// Malformed word text or a symbol outside the declared alphabet.
WSLAB_DECLARE_ERROR(SyntaxError);
// A group parameter outside {2, 3, ...} or an otherwise invalid argument.
WSLAB_DECLARE_ERROR(InvalidParam);
WSLAB_DECLARE_ERROR(ParamMismatch);
WSLAB_DECLARE_ERROR(ResourceLimit);
WSLAB_DECLARE_ERROR(NotInBall);
WSLAB_DECLARE_ERROR(NoPolygon);
WSLAB_DECLARE_ERROR(Inconclusive);
WSLAB_DECLARE_ERROR(BadIndex);
WSLAB_DECLARE_ERROR(NotCanonicalizable);
WSLAB_DECLARE_ERROR(NotWS);
WSLAB_DECLARE_ERROR(NotCyclicallyReduced);

#undef WSLAB_DECLARE_ERROR

}  // namespace wslab
