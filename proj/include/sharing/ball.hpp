#pragma once

#include "sharing/rational.hpp"

#include <mpfr.h>

#include <complex>
#include <stdexcept>
#include <string>

namespace sharing {

/// Owning wrapper around an MPFR number.
class Real {
public:
    explicit Real(mpfr_prec_t precision = 64);
    Real(const Real &other);
    Real(Real &&other) noexcept;
    Real &operator=(const Real &other);
    Real &operator=(Real &&other) noexcept;
    ~Real();

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

private:
    mpfr_t value_;
};

/// Precision used for ball radii. Radii are always rounded upward.
inline constexpr mpfr_prec_t kRadiusBits = 64;

/// Complex disc: an arbitrary-precision midpoint plus a radius that bounds the
/// distance to the exact value. Every operation returns a disc that contains
/// the exact result for all inputs inside the operand discs.
class ComplexBall {
public:
    explicit ComplexBall(mpfr_prec_t precision = 64);

    static ComplexBall exact(const GaussRational &q, mpfr_prec_t precision);
    static ComplexBall pi(mpfr_prec_t precision);
    static ComplexBall from_parts(const Real &re, const Real &im, const Real &radius);
    static ComplexBall from_complex(std::complex<double> z, mpfr_prec_t precision);

    const Real &re() const { return re_; }
    const Real &im() const { return im_; }
    const Real &radius() const { return rad_; }
    mpfr_prec_t precision() const { return re_.precision(); }

    /// Lower and upper bounds of |z| over the disc.
    Real abs_lower() const;
    Real abs_upper() const;

    bool contains_zero() const;
    bool excludes_zero() const { return !contains_zero(); }
    bool contains(const GaussRational &q) const;
    bool overlaps(const ComplexBall &other) const;

    /// Grows the radius by r (upward rounded).
    void inflate(mpfr_srcptr r);
    /// Rounds the midpoint to a new precision, accounting for the rounding.
    ComplexBall with_precision(mpfr_prec_t precision) const;
    /// Same midpoint with the radius dropped; used by non-rigorous refinement.
    ComplexBall midpoint() const;

    std::complex<double> mid_double() const;
    double radius_double() const { return rad_.to_double(); }
    std::string to_string(int digits = 20) const;

    friend ComplexBall operator+(const ComplexBall &a, const ComplexBall &b);
    friend ComplexBall operator-(const ComplexBall &a, const ComplexBall &b);
    friend ComplexBall operator*(const ComplexBall &a, const ComplexBall &b);
    friend ComplexBall operator/(const ComplexBall &a, const ComplexBall &b);
    ComplexBall operator-() const;

    friend ComplexBall inverse(const ComplexBall &a);
    friend ComplexBall pow(const ComplexBall &a, long n);
    friend ComplexBall exp(const ComplexBall &a);
    friend ComplexBall sin(const ComplexBall &a);
    friend ComplexBall cos(const ComplexBall &a);

private:
    Real re_;
    Real im_;
    Real rad_;
};

/// Thrown when a ball operation has no enclosure (division by a disc that
/// contains zero).
struct BallDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sharing
