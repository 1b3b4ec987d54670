#pragma once

#include <stdexcept>
#include <string>

namespace lindblad {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define LINDBLAD_ERROR_CLASS(Name)                                           \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

LINDBLAD_ERROR_CLASS(DimMismatch);
LINDBLAD_ERROR_CLASS(NotHermitian);
LINDBLAD_ERROR_CLASS(NoConvergence);
LINDBLAD_ERROR_CLASS(TraceNotOne);
LINDBLAD_ERROR_CLASS(NotPositive);
LINDBLAD_ERROR_CLASS(TimeOutOfRange);
LINDBLAD_ERROR_CLASS(NotDephasing);
LINDBLAD_ERROR_CLASS(NotNormal);
LINDBLAD_ERROR_CLASS(KernelDegenerate);
LINDBLAD_ERROR_CLASS(StepRejected);
LINDBLAD_ERROR_CLASS(UnknownScenario);
LINDBLAD_ERROR_CLASS(DimTooLarge);
LINDBLAD_ERROR_CLASS(ParseError);
LINDBLAD_ERROR_CLASS(SchemaError);
LINDBLAD_ERROR_CLASS(ValidationError);

#undef LINDBLAD_ERROR_CLASS

} // namespace lindblad
