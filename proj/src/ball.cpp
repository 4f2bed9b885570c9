#include "sharing/ball.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace sharing {

Real::Real(mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
}

Real::Real(const Real &other) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real &&other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real &Real::operator=(const Real &other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real &Real::operator=(Real &&other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

namespace {

// Radius helpers: every result is an upper bound of the exact quantity.

void rad_add(Real &acc, mpfr_srcptr x) { mpfr_add(acc.get(), acc.get(), x, MPFR_RNDU); }

Real rad_abs(mpfr_srcptr x) {
    Real r(kRadiusBits);
    mpfr_abs(r.get(), x, MPFR_RNDU);
    return r;
}

Real rad_mul(mpfr_srcptr a, mpfr_srcptr b) {
    Real r(kRadiusBits);
    mpfr_mul(r.get(), a, b, MPFR_RNDU);
    return r;
}

// |re| + |im|, an upper bound of the modulus of the midpoint.
Real mid_abs_upper(const Real &re, const Real &im) {
    Real r = rad_abs(re.get());
    Real t = rad_abs(im.get());
    rad_add(r, t.get());
    return r;
}

// Adds |value| * 2^(shift - prec) when the operation producing value was
// inexact. Round-to-nearest has relative error at most 2^-prec.
void add_rounding(Real &rad, mpfr_srcptr value, int ternary, mpfr_prec_t prec, long factor = 1) {
    if (ternary == 0) return;
    Real t = rad_abs(value);
    mpfr_mul_si(t.get(), t.get(), factor, MPFR_RNDU);
    mpfr_mul_2si(t.get(), t.get(), -static_cast<long>(prec), MPFR_RNDU);
    rad_add(rad, t.get());
}

// Adds factor * 2^-prec * magnitude unconditionally.
void add_relative(Real &rad, mpfr_srcptr magnitude, mpfr_prec_t prec, long factor) {
    add_rounding(rad, magnitude, 1, prec, factor);
}

}  // namespace

ComplexBall::ComplexBall(mpfr_prec_t precision)
    : re_(precision), im_(precision), rad_(kRadiusBits) {}

ComplexBall ComplexBall::exact(const GaussRational &q, mpfr_prec_t precision) {
    ComplexBall b(precision);
    int t1 = mpfr_set_q(b.re_.get(), q.re.get_mpq_t(), MPFR_RNDN);
    int t2 = mpfr_set_q(b.im_.get(), q.im.get_mpq_t(), MPFR_RNDN);
    add_rounding(b.rad_, b.re_.get(), t1, precision);
    add_rounding(b.rad_, b.im_.get(), t2, precision);
    return b;
}

ComplexBall ComplexBall::pi(mpfr_prec_t precision) {
    ComplexBall b(precision);
    int t = mpfr_const_pi(b.re_.get(), MPFR_RNDN);
    add_rounding(b.rad_, b.re_.get(), t, precision);
    return b;
}

ComplexBall ComplexBall::from_parts(const Real &re, const Real &im, const Real &radius) {
    mpfr_prec_t p = std::max(re.precision(), im.precision());
    ComplexBall b(p);
    mpfr_set(b.re_.get(), re.get(), MPFR_RNDN);
    mpfr_set(b.im_.get(), im.get(), MPFR_RNDN);
    mpfr_set(b.rad_.get(), radius.get(), MPFR_RNDU);
    mpfr_abs(b.rad_.get(), b.rad_.get(), MPFR_RNDU);
    return b;
}

ComplexBall ComplexBall::from_complex(std::complex<double> z, mpfr_prec_t precision) {
    ComplexBall b(precision);
    mpfr_set_d(b.re_.get(), z.real(), MPFR_RNDN);
    mpfr_set_d(b.im_.get(), z.imag(), MPFR_RNDN);
    return b;
}

Real ComplexBall::abs_upper() const {
    Real r(kRadiusBits);
    mpfr_hypot(r.get(), re_.get(), im_.get(), MPFR_RNDU);
    rad_add(r, rad_.get());
    return r;
}

Real ComplexBall::abs_lower() const {
    Real r(kRadiusBits);
    mpfr_hypot(r.get(), re_.get(), im_.get(), MPFR_RNDD);
    mpfr_sub(r.get(), r.get(), rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(r.get()) < 0) mpfr_set_zero(r.get(), 1);
    return r;
}

bool ComplexBall::contains_zero() const {
    Real m(kRadiusBits);
    mpfr_hypot(m.get(), re_.get(), im_.get(), MPFR_RNDD);
    return mpfr_cmp(m.get(), rad_.get()) <= 0;
}

namespace {

// Upper bound of |x - y| for x, y already held in MPFR numbers or rationals.
Real abs_diff_upper(mpfr_srcptr x, mpfr_srcptr y) {
    mpfr_prec_t p = std::max(mpfr_get_prec(x), mpfr_get_prec(y)) + 64;
    Real up(p), down(p);
    mpfr_sub(up.get(), x, y, MPFR_RNDU);
    mpfr_sub(down.get(), x, y, MPFR_RNDD);
    mpfr_neg(down.get(), down.get(), MPFR_RNDU);
    Real r(kRadiusBits);
    mpfr_max(r.get(), up.get(), down.get(), MPFR_RNDU);
    return r;
}

Real abs_diff_upper_q(mpfr_srcptr x, const mpq_class &q) {
    mpfr_prec_t p = mpfr_get_prec(x) + 64;
    Real up(p), down(p);
    mpfr_sub_q(up.get(), x, q.get_mpq_t(), MPFR_RNDU);
    mpfr_sub_q(down.get(), x, q.get_mpq_t(), MPFR_RNDD);
    mpfr_neg(down.get(), down.get(), MPFR_RNDU);
    Real r(kRadiusBits);
    mpfr_max(r.get(), up.get(), down.get(), MPFR_RNDU);
    return r;
}

}  // namespace

bool ComplexBall::contains(const GaussRational &q) const {
    Real dr = abs_diff_upper_q(re_.get(), q.re);
    Real di = abs_diff_upper_q(im_.get(), q.im);
    Real d(kRadiusBits);
    mpfr_hypot(d.get(), dr.get(), di.get(), MPFR_RNDU);
    return mpfr_cmp(d.get(), rad_.get()) <= 0;
}

bool ComplexBall::overlaps(const ComplexBall &other) const {
    Real dr = abs_diff_upper(re_.get(), other.re_.get());
    Real di = abs_diff_upper(im_.get(), other.im_.get());
    Real d(kRadiusBits);
    mpfr_hypot(d.get(), dr.get(), di.get(), MPFR_RNDD);
    Real r(kRadiusBits);
    mpfr_add(r.get(), rad_.get(), other.rad_.get(), MPFR_RNDU);
    return mpfr_cmp(d.get(), r.get()) <= 0;
}

void ComplexBall::inflate(mpfr_srcptr r) {
    Real a = rad_abs(r);
    rad_add(rad_, a.get());
}

ComplexBall ComplexBall::with_precision(mpfr_prec_t precision) const {
    ComplexBall b(precision);
    int t1 = mpfr_set(b.re_.get(), re_.get(), MPFR_RNDN);
    int t2 = mpfr_set(b.im_.get(), im_.get(), MPFR_RNDN);
    mpfr_set(b.rad_.get(), rad_.get(), MPFR_RNDU);
    add_rounding(b.rad_, b.re_.get(), t1, precision);
    add_rounding(b.rad_, b.im_.get(), t2, precision);
    return b;
}

ComplexBall ComplexBall::midpoint() const {
    ComplexBall b(*this);
    mpfr_set_zero(b.rad_.get(), 1);
    return b;
}

std::complex<double> ComplexBall::mid_double() const {
    return {re_.to_double(), im_.to_double()};
}

std::string ComplexBall::to_string(int digits) const {
    auto fmt = [digits](mpfr_srcptr x) {
        std::vector<char> buf(static_cast<size_t>(digits) + 64);
        mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, x);
        return std::string(buf.data());
    };
    std::string s = fmt(re_.get());
    if (!mpfr_zero_p(im_.get())) {
        std::string i = fmt(im_.get());
        if (i[0] == '-')
            s += " - " + i.substr(1) + "*i";
        else
            s += " + " + i + "*i";
    }
    return s;
}

ComplexBall ComplexBall::operator-() const {
    ComplexBall b(*this);
    mpfr_neg(b.re_.get(), b.re_.get(), MPFR_RNDN);
    mpfr_neg(b.im_.get(), b.im_.get(), MPFR_RNDN);
    return b;
}

ComplexBall operator+(const ComplexBall &a, const ComplexBall &b) {
    mpfr_prec_t p = std::max(a.precision(), b.precision());
    ComplexBall r(p);
    int t1 = mpfr_add(r.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
    int t2 = mpfr_add(r.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
    mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    add_rounding(r.rad_, r.re_.get(), t1, p);
    add_rounding(r.rad_, r.im_.get(), t2, p);
    return r;
}

ComplexBall operator-(const ComplexBall &a, const ComplexBall &b) {
    mpfr_prec_t p = std::max(a.precision(), b.precision());
    ComplexBall r(p);
    int t1 = mpfr_sub(r.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
    int t2 = mpfr_sub(r.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
    mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
    add_rounding(r.rad_, r.re_.get(), t1, p);
    add_rounding(r.rad_, r.im_.get(), t2, p);
    return r;
}

ComplexBall operator*(const ComplexBall &a, const ComplexBall &b) {
    mpfr_prec_t p = std::max(a.precision(), b.precision());
    ComplexBall r(p);
    Real t1(p), t2(p);
    // Real part: ar*br - ai*bi. Every rounding error adds up linearly.
    int e1 = mpfr_mul(t1.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
    int e2 = mpfr_mul(t2.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
    add_rounding(r.rad_, t1.get(), e1, p);
    add_rounding(r.rad_, t2.get(), e2, p);
    int e3 = mpfr_sub(r.re_.get(), t1.get(), t2.get(), MPFR_RNDN);
    add_rounding(r.rad_, r.re_.get(), e3, p);
    // Imaginary part: ar*bi + ai*br.
    e1 = mpfr_mul(t1.get(), a.re_.get(), b.im_.get(), MPFR_RNDN);
    e2 = mpfr_mul(t2.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
    add_rounding(r.rad_, t1.get(), e1, p);
    add_rounding(r.rad_, t2.get(), e2, p);
    e3 = mpfr_add(r.im_.get(), t1.get(), t2.get(), MPFR_RNDN);
    add_rounding(r.rad_, r.im_.get(), e3, p);
    // Propagation: |a||rb| + |b||ra| + ra*rb.
    if (!mpfr_zero_p(a.rad_.get()) || !mpfr_zero_p(b.rad_.get())) {
        Real ma = mid_abs_upper(a.re_, a.im_);
        Real mb = mid_abs_upper(b.re_, b.im_);
        Real x = rad_mul(ma.get(), b.rad_.get());
        rad_add(r.rad_, x.get());
        x = rad_mul(mb.get(), a.rad_.get());
        rad_add(r.rad_, x.get());
        x = rad_mul(a.rad_.get(), b.rad_.get());
        rad_add(r.rad_, x.get());
    }
    return r;
}

ComplexBall inverse(const ComplexBall &a) {
    mpfr_prec_t p = a.precision();
    Real lower(kRadiusBits);
    mpfr_hypot(lower.get(), a.re_.get(), a.im_.get(), MPFR_RNDD);
    if (mpfr_cmp(lower.get(), a.rad_.get()) <= 0)
        throw BallDomainError("inverse of a ball containing zero");
    ComplexBall r(p);
    Real n(p), t(p);
    mpfr_sqr(n.get(), a.re_.get(), MPFR_RNDN);
    mpfr_sqr(t.get(), a.im_.get(), MPFR_RNDN);
    mpfr_add(n.get(), n.get(), t.get(), MPFR_RNDN);
    mpfr_div(r.re_.get(), a.re_.get(), n.get(), MPFR_RNDN);
    mpfr_div(r.im_.get(), a.im_.get(), n.get(), MPFR_RNDN);
    mpfr_neg(r.im_.get(), r.im_.get(), MPFR_RNDN);
    // Each component carries at most ~4 relative roundings of size 2^-p of
    // a quantity bounded by 1/|m|.
    Real inv_lower(kRadiusBits);
    mpfr_ui_div(inv_lower.get(), 1, lower.get(), MPFR_RNDU);
    add_relative(r.rad_, inv_lower.get(), p, 16);
    // Propagation: r / (|m| (|m| - r)).
    if (!mpfr_zero_p(a.rad_.get())) {
        Real d(kRadiusBits);
        mpfr_sub(d.get(), lower.get(), a.rad_.get(), MPFR_RNDD);
        mpfr_mul(d.get(), d.get(), lower.get(), MPFR_RNDD);
        Real x(kRadiusBits);
        mpfr_div(x.get(), a.rad_.get(), d.get(), MPFR_RNDU);
        rad_add(r.rad_, x.get());
    }
    return r;
}

ComplexBall operator/(const ComplexBall &a, const ComplexBall &b) { return a * inverse(b); }

ComplexBall pow(const ComplexBall &a, long n) {
    if (n < 0) return inverse(pow(a, -n));
    ComplexBall result = ComplexBall::exact(GaussRational(1), a.precision());
    ComplexBall base(a);
    bool first = true;
    while (n > 0) {
        if (n & 1) {
            result = first ? base : result * base;
            first = false;
        }
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

ComplexBall exp(const ComplexBall &a) {
    mpfr_prec_t p = a.precision();
    ComplexBall r(p);
    Real e(p), c(p), s(p);
    mpfr_exp(e.get(), a.re_.get(), MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), a.im_.get(), MPFR_RNDN);
    mpfr_mul(r.re_.get(), e.get(), c.get(), MPFR_RNDN);
    mpfr_mul(r.im_.get(), e.get(), s.get(), MPFR_RNDN);
    // |exp(m)| <= e * (1 + 2^(2-p)); rounding error at most 8 * 2^-p * that.
    Real eu = rad_abs(e.get());
    Real slack(kRadiusBits);
    mpfr_set_ui_2exp(slack.get(), 1, 2 - static_cast<long>(p), MPFR_RNDU);
    mpfr_add_ui(slack.get(), slack.get(), 1, MPFR_RNDU);
    mpfr_mul(eu.get(), eu.get(), slack.get(), MPFR_RNDU);
    add_relative(r.rad_, eu.get(), p, 8);
    if (!mpfr_zero_p(a.rad_.get())) {
        Real x(kRadiusBits);
        mpfr_expm1(x.get(), a.rad_.get(), MPFR_RNDU);
        mpfr_mul(x.get(), x.get(), eu.get(), MPFR_RNDU);
        rad_add(r.rad_, x.get());
    }
    return r;
}

namespace {

// sin and cos share the error analysis: both components are products of a
// bounded trig value with cosh/sinh of the imaginary part, and both functions
// are cosh(|Im| + r)-Lipschitz on the disc.
ComplexBall trig(const ComplexBall &a, bool is_sin) {
    mpfr_prec_t p = a.precision();
    Real s(p), c(p), ch(p), sh(p);
    mpfr_sin_cos(s.get(), c.get(), a.re().get(), MPFR_RNDN);
    mpfr_sinh_cosh(sh.get(), ch.get(), a.im().get(), MPFR_RNDN);
    Real re(p), im(p);
    if (is_sin) {
        mpfr_mul(re.get(), s.get(), ch.get(), MPFR_RNDN);
        mpfr_mul(im.get(), c.get(), sh.get(), MPFR_RNDN);
    } else {
        mpfr_mul(re.get(), c.get(), ch.get(), MPFR_RNDN);
        mpfr_mul(im.get(), s.get(), sh.get(), MPFR_RNDN);
        mpfr_neg(im.get(), im.get(), MPFR_RNDN);
    }
    Real rad(kRadiusBits);
    Real chu = rad_abs(ch.get());
    Real slack(kRadiusBits);
    mpfr_set_ui_2exp(slack.get(), 1, 2 - static_cast<long>(p), MPFR_RNDU);
    mpfr_add_ui(slack.get(), slack.get(), 1, MPFR_RNDU);
    mpfr_mul(chu.get(), chu.get(), slack.get(), MPFR_RNDU);
    add_relative(rad, chu.get(), p, 8);
    if (!mpfr_zero_p(a.radius().get())) {
        Real y = rad_abs(a.im().get());
        rad_add(y, a.radius().get());
        Real lip(kRadiusBits);
        mpfr_cosh(lip.get(), y.get(), MPFR_RNDU);
        Real x = rad_mul(lip.get(), a.radius().get());
        rad_add(rad, x.get());
    }
    return ComplexBall::from_parts(re, im, rad);
}

}  // namespace

ComplexBall sin(const ComplexBall &a) { return trig(a, true); }
ComplexBall cos(const ComplexBall &a) { return trig(a, false); }

}  // namespace sharing
