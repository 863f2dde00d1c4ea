#pragma once

#include <stdexcept>
#include <string>

namespace eqloc {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A torsion order below 2 was supplied for a character group.
struct InvalidOrder : Error {
    using Error::Error;
};

// Two values that must live over the same character group do not.
struct GroupMismatch : Error {
    using Error::Error;
};

// An evaluation datum is incompatible with the torsion of its group.
struct InvalidEvaluation : Error {
    using Error::Error;
};

// Fractions over different multiplicative sets were combined.
struct SetMismatch : Error {
    using Error::Error;
};

// Fraction equality was requested over a group ring with zero divisors.
struct TorsionUnsupported : Error {
    using Error::Error;
};

// A lambda class with a factor 1 - chi, chi trivial on H, cannot be inverted.
struct NotInvertible : Error {
    using Error::Error;
};

// An embedding vector does not define an injection mu_n -> T.
struct InvalidEmbedding : Error {
    using Error::Error;
};

// A prime needed for a cyclotomic splitting is not invertible in Z[1/r].
struct PrimeNotInverted : Error {
    using Error::Error;
};

struct EmptySet : Error {
    using Error::Error;
};

// Fan validation failures; the message names the offending ray or cone.
struct NotPrimitive : Error {
    using Error::Error;
};
struct NotSmooth : Error {
    using Error::Error;
};
struct NotComplete : Error {
    using Error::Error;
};

// Malformed or inconsistent user input (JSON, CLI, polytope data).
struct MalformedInput : Error {
    using Error::Error;
};

// Cartier data violating its own defining equations; unreachable on smooth fans.
struct InconsistentData : Error {
    using Error::Error;
};

// The lattice-point enumeration box exceeds the hard candidate limit.
struct OracleTooLarge : Error {
    using Error::Error;
};

// A localized sum failed to land in the group ring.
struct NotPolynomial : Error {
    using Error::Error;
};

// Brion summation hit a vertex whose tangent cone is not unimodular.
struct NotSmoothVertexCone : Error {
    using Error::Error;
};

// Broken internal invariant (e.g. Bezout data escaping Z[1/r]).
struct InternalError : Error {
    using Error::Error;
};

}  // namespace eqloc
