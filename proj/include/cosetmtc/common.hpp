#pragma once
#include <complex>
#include <stdexcept>
#include <string>

namespace cmtc {

using cd = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Default tolerances: structural matrix relations vs. integer rounding of
// fusion coefficients.  Double precision keeps both with room to spare at
// the matrix sizes this library handles (a few hundred rows).
inline constexpr double kStructuralTol = 1e-9;
inline constexpr double kIntegerTol = 1e-6;

// Request outside the implemented regime (e.g. fixed-point resolution with a
// composite cyclic group).  The CLI maps this to its own exit code.
class out_of_scope_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A hard numerical consistency failure: non-unitary S, non-integral fusion,
// branching data producing complex b values, cross-validation mismatch.
class numeric_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: JSON not matching the documented schema, unknown labels.
class schema_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cmtc
