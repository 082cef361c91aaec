#pragma once

#include <stdexcept>
#include <string>

namespace qeac {

/// Base class for every failure raised by the library. `name()` is the
/// stable identifier the CLI prints on stderr.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define QEAC_DEFINE_ERROR(Type)                                        \
  class Type : public Error {                                          \
   public:                                                             \
    explicit Type(const std::string& what) : Error(#Type, what) {}     \
  }

QEAC_DEFINE_ERROR(NonHermitian);
QEAC_DEFINE_ERROR(InvalidStep);
QEAC_DEFINE_ERROR(SiteOutOfRange);
QEAC_DEFINE_ERROR(TooManyQubits);
QEAC_DEFINE_ERROR(InternalMismatch);
QEAC_DEFINE_ERROR(UnsupportedL);
QEAC_DEFINE_ERROR(DimensionMismatch);
QEAC_DEFINE_ERROR(TooManyLogicalAmplitudes);
QEAC_DEFINE_ERROR(NotNormalized);
QEAC_DEFINE_ERROR(InvalidSites);
QEAC_DEFINE_ERROR(NotPSD);
QEAC_DEFINE_ERROR(SingularSeparation);
QEAC_DEFINE_ERROR(InvalidDensityMatrix);
QEAC_DEFINE_ERROR(InvalidArgument);
QEAC_DEFINE_ERROR(TraceDrift);
QEAC_DEFINE_ERROR(StepTooLarge);
QEAC_DEFINE_ERROR(ParseError);

#undef QEAC_DEFINE_ERROR

}  // namespace qeac
