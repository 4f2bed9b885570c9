#pragma once
// Randomized Laurent-engine properties, shared by the unit tests and the
// acceptance binary.

#include "support/generators.hpp"

#include <functional>
#include <string>

namespace sharing::testing {

struct PropertyStats {
    int instances = 0;
    int decisive = 0;
    int failures = 0;
    std::string first_failure;

    double decisive_rate() const { return instances ? double(decisive) / instances : 0; }
    void fail(const std::string &what) {
        if (!failures++) first_failure = what;
    }
};

inline bool overlaps(const SymConst &a, const SymConst &b) { return enclose(a, 256).overlaps(enclose(b, 256)); }

inline Expr corpus_style(Rng &rng, const SymConst &c) {
    Expr e = factor_at(rng, c);
    if (pick(rng, 0, 1)) e = e * factor_at(rng, c);
    return e;
}

/// ord(e1 e2) = ord(e1) + ord(e2).
inline PropertyStats order_additivity(Rng &rng, int n, const PrecisionSchedule &s = {}) {
    PropertyStats st;
    for (int k = 0; k < n; ++k) {
        SymConst c = special_point(rng);
        Expr a = corpus_style(rng, c), b = corpus_style(rng, c);
        ++st.instances;
        LocalOrder x = local_order(a, c, s), y = local_order(b, c, s), xy = local_order(a * b, c, s);
        if (!(x.decisive() && y.decisive() && xy.decisive())) continue;
        ++st.decisive;
        if (xy.signed_order() != x.signed_order() + y.signed_order())
            st.fail(to_string(a) + " * " + to_string(b) + " at " + c.to_string());
    }
    return st;
}

/// expand(e', c, N-1) is the termwise derivative of expand(e, c, N).
inline PropertyStats derivative_consistency(Rng &rng, int n, const PrecisionSchedule &s = {}) {
    PropertyStats st;
    const int N = 6;
    for (int k = 0; k < n; ++k) {
        SymConst c = special_point(rng);
        Expr e = pick(rng, 0, 1) ? corpus_style(rng, c) : random_meromorphic(rng, 2);
        ++st.instances;
        try {
            LaurentSeries a = expand(e, c, N, s);
            LaurentSeries d = expand(differentiate(e), c, N - 1, s);
            LaurentSeries t = series_derivative(a);
            int top = std::min(d.truncation_order, t.truncation_order);
            int low = std::min(d.min_index, t.min_index);
            if (top < low) continue;
            ++st.decisive;
            for (int j = low; j <= top; ++j)
                if (!overlaps(d.coefficient(j), t.coefficient(j))) {
                    st.fail(to_string(e) + " at " + c.to_string() + ", index " + std::to_string(j));
                    break;
                }
        } catch (const std::runtime_error &) {
        }
    }
    return st;
}

/// ord(1/e) = -ord(e), and 1/value at regular points.
inline PropertyStats inversion_consistency(Rng &rng, int n, const PrecisionSchedule &s = {}) {
    PropertyStats st;
    for (int k = 0; k < n; ++k) {
        SymConst c = special_point(rng);
        Expr e = corpus_style(rng, c);
        ++st.instances;
        LocalOrder x = local_order(e, c, s);
        if (!x.decisive()) continue;
        ++st.decisive;
        LocalOrder y = local_order(reciprocal_of(e), c, s);
        bool ok = y.decisive() && y.signed_order() == -x.signed_order();
        if (ok && x.kind == LocalOrder::Kind::Regular) ok = overlaps(x.value * y.value, SymConst(1));
        if (!ok) st.fail(to_string(e) + " at " + c.to_string() + ": " + x.to_string() + " vs " + y.to_string());
    }
    return st;
}

/// exp(s) exp(-s) = 1 + O((z-c)^N) for entire s.
inline PropertyStats exp_inverse(Rng &rng, int n) {
    PropertyStats st;
    const int N = 8;
    for (int k = 0; k < n; ++k) {
        SymConst c = special_point(rng);
        Expr e = random_entire(rng, 2);
        ++st.instances;
        try {
            LaurentSeries a = expand(e, c, N);
            LaurentSeries zero{c, 0, {}, N};
            LaurentSeries p = series_mul(series_exp(a, N), series_exp(series_sub(zero, a, N), N), N);
            ++st.decisive;
            for (int j = 0; j <= std::min(N, p.truncation_order); ++j)
                if (!overlaps(p.coefficient(j), SymConst(j == 0 ? 1 : 0))) {
                    st.fail(to_string(e) + " at " + c.to_string() + ", index " + std::to_string(j));
                    break;
                }
            if (p.truncation_order < N) st.fail(to_string(e) + ": truncation lost");
        } catch (const std::runtime_error &) {
        }
    }
    return st;
}

}  // namespace sharing::testing
