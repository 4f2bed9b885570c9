#pragma once

#include "sharing/evaluate.hpp"
#include "sharing/local.hpp"

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace sharing {

/// Closed rectangle with exact corners. Zeros on the edge are avoided by
/// shrinking (see locate_candidates).
struct Region {
    mpq_class re_min, re_max, im_min, im_max;

    Region() = default;
    Region(mpq_class a, mpq_class b, mpq_class c, mpq_class d);

    /// "re_min,re_max,im_min,im_max" with rational entries such as -7 or 1/3.
    static Region parse(const std::string &text);
    std::string to_string() const;
    /// Moved inward by delta on every side.
    Region shrunk(const mpq_class &delta) const;
    bool contains(std::complex<double> z) const;
};

struct BoundaryEvent : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResidualTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IdenticallyVanishing : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SubdivisionBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Zeros minus poles of e inside r, with multiplicity, by the argument
/// principle.
int net_zero_pole_count(const Expr &e, const Region &r);

/// |winding number| of e around the circle |z - center| = radius.
int multiplicity_by_winding(const Expr &e, const SymConst &center, const mpq_class &radius);

struct Candidate {
    SymConst point;
    bool snapped = false;
    /// Total multiplicity as a zero of the candidate factors.
    int multiplicity = 0;
    std::complex<double> approx;
};

struct CandidateSearch {
    std::vector<Candidate> candidates;
    /// Region actually searched; differs from the input after a boundary shift.
    Region region;
    int boundary_shifts = 0;
    int cells = 0;
    mpfr_prec_t max_precision = 0;
};

inline constexpr int kCellBudget = 10000;

/// Zeros inside r of the entire numerators of f - alpha, g - alpha and of
/// alpha's numerator and denominator: every point where sharing can fail.
/// Points are snapped to exact rationals or rational multiples of pi when a
/// Laurent check confirms the multiplicity, and sorted by (re, im).
CandidateSearch search_candidates(const Triple &t, const Region &r,
                                  const PrecisionSchedule &schedule = {});
std::vector<SymConst> locate_candidates(const Expr &f, const Expr &g, const Expr &alpha,
                                        const Region &r);

/// Snap x to p/q (q <= 10^6) or (p/q)*pi (q <= 24) when within 10^-20.
std::optional<SymConst> snap_real(const Real &x);

}  // namespace sharing
