#pragma once

#include <stdexcept>
#include <string>

namespace srlab {

// Base type for everything this library throws on its own behalf.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPrimeCharacteristic : Error { using Error::Error; };
struct EvenCharacteristic : Error { using Error::Error; };
struct ReducibleModulus : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct FieldMismatch : Error { using Error::Error; };
struct ZeroPolynomial : Error { using Error::Error; };
struct NonMonicPolynomial : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct OrderCapExceeded : Error { using Error::Error; };
struct NotCompanionOfGivenPolynomial : Error { using Error::Error; };
struct PreconditionViolation : Error { using Error::Error; };
struct NotOrthogonal : Error { using Error::Error; };
struct IdenticalGenerators : Error { using Error::Error; };
struct OrbitNotLinear : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct TooManyRows : Error { using Error::Error; };
struct EnumerationBudgetExceeded : Error { using Error::Error; };
struct InvalidDistance : Error { using Error::Error; };
struct InvalidDimension : Error { using Error::Error; };
struct BadFirstBlock : Error { using Error::Error; };
struct BasisSizeMismatch : Error { using Error::Error; };
struct DistanceOutOfRange : Error { using Error::Error; };
struct RadiusOutOfRange : Error { using Error::Error; };
struct RankOutOfRange : Error { using Error::Error; };
struct NotExtensionLinear : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct GoldenMismatch : Error { using Error::Error; };

} // namespace srlab
