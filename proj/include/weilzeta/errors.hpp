#pragma once
#include <stdexcept>
#include <string>

namespace wz {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define WZ_ERROR(Name)                                   \
    struct Name : Error {                                \
        explicit Name(const std::string& m = #Name)      \
            : Error(std::string(#Name ": ") + m) {}      \
    };

WZ_ERROR(NonCoprimeTwist)
WZ_ERROR(DivisionByZero)
WZ_ERROR(DegenerateLattice)
WZ_ERROR(OddRank)
WZ_ERROR(OddDiagonal)
WZ_ERROR(OrderTooLarge)
WZ_ERROR(NonUnimodular)
WZ_ERROR(NotUnimodular)
WZ_ERROR(ParseError)
WZ_ERROR(WeightParityViolation)
WZ_ERROR(PoleProximity)
WZ_ERROR(TruncationTooCoarse)
WZ_ERROR(NotAnEigenform)
WZ_ERROR(QuadratureUnstable)
WZ_ERROR(ZeroGaussSum)
WZ_ERROR(InvalidPartition)
WZ_ERROR(UnsupportedRank)
WZ_ERROR(GammaPole)
WZ_ERROR(TruncationUnstable)
WZ_ERROR(DivergenceSuspected)

#undef WZ_ERROR

}  // namespace wz
