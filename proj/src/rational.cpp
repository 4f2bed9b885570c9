#include "sharing/rational.hpp"

#include <stdexcept>

namespace sharing {

GaussRational &GaussRational::operator/=(const GaussRational &o) {
    mpq_class n = o.norm();
    if (sgn(n) == 0) throw std::domain_error("division by exact zero");
    mpq_class r = (re * o.re + im * o.im) / n;
    mpq_class i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussRational GaussRational::pow(long n) const {
    if (n < 0) return GaussRational(1) / pow(-n);
    GaussRational result(1), base(*this);
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return result;
}

std::string rational_to_string(const mpq_class &q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string GaussRational::to_string() const {
    if (sgn(im) == 0) return rational_to_string(re);
    std::string imag;
    if (im == 1)
        imag = "i";
    else if (im == -1)
        imag = "-i";
    else
        imag = rational_to_string(im) + "*i";
    if (sgn(re) == 0) return imag;
    if (sgn(im) < 0) return rational_to_string(re) + " - " + imag.substr(1);
    return rational_to_string(re) + " + " + imag;
}

}  // namespace sharing
