#pragma once

#include <stdexcept>
#include <string>

namespace harmfield {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Stable machine-readable name, used in CLI reports.
  virtual const char* kind() const noexcept { return "Error"; }
};

#define HARMFIELD_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                         \
   public:                                                            \
    using Error::Error;                                               \
    const char* kind() const noexcept override { return #Name; }      \
  };

HARMFIELD_DEFINE_ERROR(DimensionMismatch)
HARMFIELD_DEFINE_ERROR(PreconditionError)
HARMFIELD_DEFINE_ERROR(NullPivot)
HARMFIELD_DEFINE_ERROR(Singular)
HARMFIELD_DEFINE_ERROR(NonInvertible)
HARMFIELD_DEFINE_ERROR(DegenerateTangent)
HARMFIELD_DEFINE_ERROR(NotPreharmonic)
HARMFIELD_DEFINE_ERROR(NotConstantLength)
HARMFIELD_DEFINE_ERROR(SingularPatch)
HARMFIELD_DEFINE_ERROR(ZeroField)
HARMFIELD_DEFINE_ERROR(NotKilling)
HARMFIELD_DEFINE_ERROR(SchemaError)

#undef HARMFIELD_DEFINE_ERROR

}  // namespace harmfield
