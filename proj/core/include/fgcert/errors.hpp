#ifndef FGCERT_ERRORS_HPP
#define FGCERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fgcert {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define FGCERT_DEFINE_ERROR(Name)                                             \
  class Name : public Error {                                                 \
  public:                                                                     \
    using Error::Error;                                                       \
  }

FGCERT_DEFINE_ERROR(IndexOutOfRange);
FGCERT_DEFINE_ERROR(RankMismatch);
FGCERT_DEFINE_ERROR(TrivialWord);
FGCERT_DEFINE_ERROR(ParseError);
FGCERT_DEFINE_ERROR(NotAPermutation);
FGCERT_DEFINE_ERROR(NotConnected);
FGCERT_DEFINE_ERROR(NotCyclicallyReduced);
FGCERT_DEFINE_ERROR(ClosureTooLarge);
FGCERT_DEFINE_ERROR(NotNormal);
FGCERT_DEFINE_ERROR(VertexOutOfRange);
FGCERT_DEFINE_ERROR(DimensionMismatch);
FGCERT_DEFINE_ERROR(AllZeroResidues);
FGCERT_DEFINE_ERROR(NotPrime);
FGCERT_DEFINE_ERROR(ShapeMismatch);
FGCERT_DEFINE_ERROR(Overflow);
FGCERT_DEFINE_ERROR(MalformedCertificate);

#undef FGCERT_DEFINE_ERROR

} // namespace fgcert

#endif
