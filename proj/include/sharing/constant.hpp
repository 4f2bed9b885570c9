#pragma once

#include "sharing/ball.hpp"
#include "sharing/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sharing {

enum class ZeroTest { Zero, NonZero, Unknown };
class SymConst;

using AtomId = std::uint32_t;

/// Product of atoms raised to nonzero integer powers, sorted by atom id.
using Monomial = std::vector<std::pair<AtomId, int>>;

/// Sparse polynomial in atoms with Gaussian-rational coefficients. Absent
/// monomials have coefficient zero; stored coefficients are never zero.
using Poly = std::map<Monomial, GaussRational>;

/// Precisions tried, in order, before a zero test gives up.
struct PrecisionSchedule {
    std::vector<mpfr_prec_t> bits{64, 256, 1024};

    /// 64 -> working -> 4 * working.
    static PrecisionSchedule for_working(mpfr_prec_t working);
    mpfr_prec_t working() const { return bits.size() > 1 ? bits[1] : bits.front(); }
};

/// Certified constant. The symbolic form is a quotient of polynomials in
/// transcendental atoms (pi, exp(c), sin(c), cos(c), or an approximate point
/// known only through a ball), with denominators kept as a product of
/// normalized factors that were certified nonzero when they were introduced.
class SymConst {
public:
    SymConst() = default;
    SymConst(const GaussRational &q);
    SymConst(long n) : SymConst(GaussRational(n)) {}

    static SymConst pi();
    static SymConst imaginary_unit();
    /// A point known only through an enclosing ball, e.g. a refined root.
    static SymConst approximate(const ComplexBall &ball, std::string label = {});
    static SymConst exp(const SymConst &arg);
    static SymConst sin(const SymConst &arg);
    static SymConst cos(const SymConst &arg);

    /// Structurally zero: only produced by exact cancellation.
    bool is_exact_zero() const { return num_.empty(); }
    std::optional<GaussRational> as_rational() const;
    /// q when the value is exactly q * pi with q rational and real.
    std::optional<mpq_class> as_rational_multiple_of_pi() const;
    /// True when no approximate atom occurs anywhere in the form.
    bool is_exact() const;

    SymConst operator-() const;
    SymConst &operator+=(const SymConst &o);
    SymConst &operator-=(const SymConst &o);
    SymConst &operator*=(const SymConst &o);
    /// The divisor must have been certified nonzero by the caller.
    SymConst &operator/=(const SymConst &o);
    SymConst pow(long n) const;
    SymConst scaled(const GaussRational &q) const;

    friend SymConst operator+(SymConst a, const SymConst &b) { return a += b; }
    friend SymConst operator-(SymConst a, const SymConst &b) { return a -= b; }
    friend SymConst operator*(SymConst a, const SymConst &b) { return a *= b; }
    friend SymConst operator/(SymConst a, const SymConst &b) { return a /= b; }
    friend bool operator==(const SymConst &a, const SymConst &b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    const Poly &numerator() const { return num_; }

    /// Human-readable form; approximate atoms print as decimal balls.
    std::string to_string() const { return render(false); }
    /// Canonical form used to intern atoms; distinct approximate atoms differ.
    std::string key() const { return render(true); }

private:
    friend ComplexBall enclose(const SymConst &c, mpfr_prec_t precision_bits);
    friend ZeroTest zero_test(const SymConst &c, const PrecisionSchedule &schedule);

    void normalize();
    std::string render(bool as_key) const;

    Poly num_;
    std::map<Poly, int> den_;
};

const char *to_string(ZeroTest z);

/// Three-valued zero test. Zero only via exact cancellation in the symbolic
/// form; NonZero via the exp/pi monomial rule or a ball excluding zero at some
/// scheduled precision; Unknown otherwise.
ZeroTest zero_test(const SymConst &c, const PrecisionSchedule &schedule = {});

/// Ball containing the exact value, computed at the given precision.
ComplexBall enclose(const SymConst &c, mpfr_prec_t precision_bits);

/// Approximation for display, e.g. "3.1415926535897932385".
std::string approximate_string(const SymConst &c, int digits = 20);

}  // namespace sharing
