#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace sharing {

/// Exact complex number with rational real and imaginary parts.
struct GaussRational {
    mpq_class re{0};
    mpq_class im{0};

    GaussRational() = default;
    GaussRational(mpq_class r) : re(std::move(r)) { re.canonicalize(); }
    GaussRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {
        re.canonicalize();
        im.canonicalize();
    }
    GaussRational(long n) : re(n) {}
    GaussRational(int n) : re(n) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_one() const { return re == 1 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    GaussRational conj() const { return {re, -im}; }
    mpq_class norm() const { return re * re + im * im; }

    GaussRational operator-() const { return {-re, -im}; }
    GaussRational &operator+=(const GaussRational &o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRational &operator-=(const GaussRational &o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussRational &operator*=(const GaussRational &o) {
        mpq_class r = re * o.re - im * o.im;
        mpq_class i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussRational &operator/=(const GaussRational &o);

    friend GaussRational operator+(GaussRational a, const GaussRational &b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational &b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational &b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational &b) { return a /= b; }

    friend bool operator==(const GaussRational &a, const GaussRational &b) {
        return a.re == b.re && a.im == b.im;
    }
    friend std::strong_ordering operator<=>(const GaussRational &a, const GaussRational &b) {
        int c = cmp(a.re, b.re);
        if (c == 0) c = cmp(a.im, b.im);
        return c <=> 0;
    }

    GaussRational pow(long n) const;
    std::string to_string() const;
};

/// Prints a rational as "p" or "p/q".
std::string rational_to_string(const mpq_class &q);

}  // namespace sharing
