#ifndef G2E_SCALAR_HPP
#define G2E_SCALAR_HPP

/// @file scalar.hpp
/// Scalar models used throughout the library.
///
/// Two concrete scalar models are supported:
///   - Rat: exact arbitrary-precision rationals (all identity checks that do
///     not involve square-root constants run on this model with zero tolerance);
///   - double: IEEE binary64 (everything touching sqrt(2), sqrt(3), ... runs
///     on this model behind explicit tolerances).
/// Complex scalars (std::complex<double>) are used where a frame is genuinely
/// complex; the algebraic kernels below are templated and accept all three.

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cmath>
#include <cstdint>

namespace g2e {

/// Exact rational scalar (arbitrary precision, always in lowest terms).
using Rat = boost::multiprecision::cpp_rational;

/// Complex double scalar, used for complexified frames and Higgs data.
using Cplx = std::complex<double>;

template <class S> struct scalar_traits {
  static constexpr bool exact = false;
};
template <> struct scalar_traits<Rat> {
  static constexpr bool exact = true;
};

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }
inline double to_double(double x) { return x; }

/// Magnitude used for pivoting / zero tests, per scalar model.
inline double pivot_size(const Rat& r) { return r == 0 ? 0.0 : 1.0; }
inline double pivot_size(double x) { return std::abs(x); }
inline double pivot_size(const Cplx& z) { return std::abs(z); }

} // namespace g2e

#endif
