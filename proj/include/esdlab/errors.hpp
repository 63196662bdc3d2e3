#pragma once

#include <stdexcept>
#include <string>

namespace esdlab {

// Base of every error the library raises. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define ESDLAB_DEFINE_ERROR(Name)                   \
    class Name : public Error {                     \
    public:                                         \
        explicit Name(const std::string& what_arg)  \
            : Error(#Name ": " + what_arg) {}       \
    }

// core-state
ESDLAB_DEFINE_ERROR(TraceError);
ESDLAB_DEFINE_ERROR(NegativePopulation);
ESDLAB_DEFINE_ERROR(BlockPositivityError);
ESDLAB_DEFINE_ERROR(NonFiniteValue);
ESDLAB_DEFINE_ERROR(NotXForm);
ESDLAB_DEFINE_ERROR(InvalidDensityMatrix);
ESDLAB_DEFINE_ERROR(DomainError);
ESDLAB_DEFINE_ERROR(ParseError);

// numerics
ESDLAB_DEFINE_ERROR(ZeroPolynomial);
ESDLAB_DEFINE_ERROR(NoSignChange);
ESDLAB_DEFINE_ERROR(NonFiniteState);
ESDLAB_DEFINE_ERROR(ComplexSpectrum);

// esd
ESDLAB_DEFINE_ERROR(NotEntangled);
ESDLAB_DEFINE_ERROR(ZeroTemperature);
ESDLAB_DEFINE_ERROR(DegenerateDenominator);

// experiments
ESDLAB_DEFINE_ERROR(UnknownFamily);
ESDLAB_DEFINE_ERROR(ParamOutOfRange);

#undef ESDLAB_DEFINE_ERROR

}  // namespace esdlab
