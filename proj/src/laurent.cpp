#include "sharing/laurent.hpp"

#include <algorithm>
#include <unordered_map>

namespace sharing {

SymConst LaurentSeries::coefficient(int n) const {
    if (n > truncation_order) throw std::logic_error("coefficient beyond truncation order");
    if (n < min_index || n > max_stored()) return SymConst();
    return coeffs[n - min_index];
}

namespace {

LaurentSeries constant_series(const SymConst &center, const SymConst &c, int order) {
    LaurentSeries s;
    s.center = center;
    s.coeffs = {c};
    s.truncation_order = order;
    return s;
}

// Drops stored zeros at both ends so that loops stay short.
void trim(LaurentSeries &s) {
    std::size_t lead = 0;
    while (lead < s.coeffs.size() && s.coeffs[lead].is_exact_zero()) ++lead;
    if (lead == s.coeffs.size()) {
        s.coeffs.clear();
        return;
    }
    s.coeffs.erase(s.coeffs.begin(), s.coeffs.begin() + static_cast<long>(lead));
    s.min_index += static_cast<int>(lead);
    while (!s.coeffs.empty() && s.coeffs.back().is_exact_zero()) s.coeffs.pop_back();
}

// Lower bound for the valuation; an empty series vanishes through its truncation.
int effective_min(const LaurentSeries &s) {
    return s.coeffs.empty() ? s.truncation_order + 1 : s.min_index;
}

// Stored coefficient or zero, without the truncation check.
const SymConst &raw(const LaurentSeries &s, int n) {
    static const SymConst zero;
    if (n < s.min_index || n > s.max_stored()) return zero;
    return s.coeffs[n - s.min_index];
}

}  // namespace

LaurentSeries series_add(const LaurentSeries &a, const LaurentSeries &b, int order) {
    LaurentSeries r;
    r.center = a.center;
    r.truncation_order = std::min({a.truncation_order, b.truncation_order, order});
    if (a.coeffs.empty() && b.coeffs.empty()) return r;
    int lo = a.coeffs.empty() ? b.min_index
             : b.coeffs.empty() ? a.min_index
                                : std::min(a.min_index, b.min_index);
    int hi = std::min(r.truncation_order, std::max(a.max_stored(), b.max_stored()));
    r.min_index = lo;
    for (int n = lo; n <= hi; ++n) r.coeffs.push_back(raw(a, n) + raw(b, n));
    trim(r);
    return r;
}

LaurentSeries series_sub(const LaurentSeries &a, const LaurentSeries &b, int order) {
    LaurentSeries nb = b;
    for (auto &c : nb.coeffs) c = -c;
    return series_add(a, nb, order);
}

LaurentSeries series_mul(const LaurentSeries &a, const LaurentSeries &b, int order) {
    LaurentSeries r;
    r.center = a.center;
    r.truncation_order = std::min(
        {a.truncation_order + effective_min(b), b.truncation_order + effective_min(a), order});
    if (a.coeffs.empty() || b.coeffs.empty()) return r;
    r.min_index = a.min_index + b.min_index;
    int hi = std::min(r.truncation_order, a.max_stored() + b.max_stored());
    for (int n = r.min_index; n <= hi; ++n) {
        SymConst sum;
        int i_lo = std::max(a.min_index, n - b.max_stored());
        int i_hi = std::min(a.max_stored(), n - b.min_index);
        for (int i = i_lo; i <= i_hi; ++i) {
            const SymConst &x = raw(a, i);
            const SymConst &y = raw(b, n - i);
            if (x.is_exact_zero() || y.is_exact_zero()) continue;
            sum += x * y;
        }
        r.coeffs.push_back(std::move(sum));
    }
    trim(r);
    return r;
}

LaurentSeries series_div(const LaurentSeries &a, const LaurentSeries &b, int order,
                         const PrecisionSchedule &schedule) {
    int vb = b.min_index;
    for (;; ++vb) {
        if (vb > b.max_stored() || vb > b.truncation_order)
            throw TruncationExhausted("divisor vanishes to depth " + std::to_string(b.truncation_order));
        ZeroTest t = zero_test(raw(b, vb), schedule);
        if (t == ZeroTest::NonZero) break;
        if (t == ZeroTest::Unknown)
            throw DivisorValuationUnresolved("leading coefficient of divisor undecided: " +
                                             raw(b, vb).to_string());
    }
    LaurentSeries r;
    r.center = a.center;
    int va = effective_min(a);
    r.min_index = va - vb;
    r.truncation_order =
        std::min({a.truncation_order - vb, b.truncation_order + va - 2 * vb, order});
    if (a.coeffs.empty()) return r;
    SymConst inv = SymConst(1) / raw(b, vb);
    for (int n = r.min_index; n <= r.truncation_order; ++n) {
        SymConst acc = raw(a, n + vb);
        for (int j = 1; j <= n - r.min_index; ++j) {
            const SymConst &bj = raw(b, vb + j);
            if (bj.is_exact_zero()) continue;
            const SymConst &q = r.coeffs[n - j - r.min_index];
            if (q.is_exact_zero()) continue;
            acc -= bj * q;
        }
        r.coeffs.push_back(acc * inv);
    }
    trim(r);
    return r;
}

LaurentSeries series_pow(const LaurentSeries &a, long n, int order,
                         const PrecisionSchedule &schedule) {
    LaurentSeries one = constant_series(a.center, SymConst(1), order);
    if (n < 0) return series_div(one, series_pow(a, -n, order, schedule), order, schedule);
    LaurentSeries result = one, base = a;
    while (n > 0) {
        if (n & 1) result = series_mul(result, base, order);
        n >>= 1;
        if (n > 0) base = series_mul(base, base, order);
    }
    return result;
}

namespace {

// s with its valuation checked to be >= 0, as (s_0, s_1, ...) up to K.
std::vector<SymConst> entire_part(const LaurentSeries &a, int order, int &known) {
    for (int n = a.min_index; n < 0 && n <= a.max_stored(); ++n)
        if (!raw(a, n).is_exact_zero())
            throw DivisorValuationUnresolved("transcendental argument with negative valuation");
    known = std::min(a.truncation_order, order);
    std::vector<SymConst> s;
    for (int n = 0; n <= known; ++n) s.push_back(raw(a, n));
    return s;
}

LaurentSeries from_coeffs(const SymConst &center, std::vector<SymConst> c, int known) {
    LaurentSeries r;
    r.center = center;
    r.coeffs = std::move(c);
    r.truncation_order = known;
    trim(r);
    return r;
}

}  // namespace

// exp(s)' = s' exp(s) gives n E_n = sum_k k s_k E_{n-k}.
LaurentSeries series_exp(const LaurentSeries &a, int order) {
    int known = 0;
    std::vector<SymConst> s = entire_part(a, order, known);
    if (known < 0) return from_coeffs(a.center, {}, known);
    std::vector<SymConst> e{SymConst::exp(s[0])};
    for (int n = 1; n <= known; ++n) {
        SymConst acc;
        for (int k = 1; k <= n; ++k) {
            if (s[k].is_exact_zero() || e[n - k].is_exact_zero()) continue;
            acc += s[k].scaled(GaussRational(k)) * e[n - k];
        }
        e.push_back(acc.scaled(GaussRational(mpq_class(1, n))));
    }
    return from_coeffs(a.center, std::move(e), known);
}

namespace {

std::pair<LaurentSeries, LaurentSeries> sin_cos(const LaurentSeries &a, int order) {
    int known = 0;
    std::vector<SymConst> s = entire_part(a, order, known);
    if (known < 0) return {from_coeffs(a.center, {}, known), from_coeffs(a.center, {}, known)};
    std::vector<SymConst> sn{SymConst::sin(s[0])}, cs{SymConst::cos(s[0])};
    for (int n = 1; n <= known; ++n) {
        SymConst ds, dc;
        for (int k = 1; k <= n; ++k) {
            if (s[k].is_exact_zero()) continue;
            SymConst ks = s[k].scaled(GaussRational(k));
            if (!cs[n - k].is_exact_zero()) ds += ks * cs[n - k];
            if (!sn[n - k].is_exact_zero()) dc -= ks * sn[n - k];
        }
        GaussRational inv(mpq_class(1, n));
        sn.push_back(ds.scaled(inv));
        cs.push_back(dc.scaled(inv));
    }
    return {from_coeffs(a.center, std::move(sn), known), from_coeffs(a.center, std::move(cs), known)};
}

}  // namespace

LaurentSeries series_sin(const LaurentSeries &a, int order) { return sin_cos(a, order).first; }
LaurentSeries series_cos(const LaurentSeries &a, int order) { return sin_cos(a, order).second; }

LaurentSeries series_derivative(const LaurentSeries &a) {
    LaurentSeries r;
    r.center = a.center;
    r.min_index = a.min_index - 1;
    r.truncation_order = a.truncation_order - 1;
    for (int n = a.min_index; n <= a.max_stored(); ++n)
        r.coeffs.push_back(raw(a, n).scaled(GaussRational(n)));
    trim(r);
    return r;
}

namespace {

class Expander {
public:
    Expander(const SymConst &center, int order, const PrecisionSchedule &schedule)
        : center_(center), order_(order), schedule_(schedule) {}

    LaurentSeries run(const Expr &e) {
        if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
        LaurentSeries s = compute(e);
        memo_.emplace(e.id(), s);
        return s;
    }

private:
    LaurentSeries compute(const Expr &e) {
        if (!e.depends_on_z()) {
            try {
                return constant_series(center_, *constant_value(e), order_);
            } catch (const ExprError &err) {
                throw DivisorValuationUnresolved(err.what());
            }
        }
        switch (e.kind()) {
        case ExprKind::Variable: {
            LaurentSeries s = constant_series(center_, center_, order_);
            s.coeffs.push_back(SymConst(1));
            trim(s);
            return s;
        }
        case ExprKind::Negate: {
            LaurentSeries s = run(e.lhs());
            for (auto &c : s.coeffs) c = -c;
            return s;
        }
        case ExprKind::Add:
            return series_add(run(e.lhs()), run(e.rhs()), order_);
        case ExprKind::Multiply:
            return series_mul(run(e.lhs()), run(e.rhs()), order_);
        case ExprKind::Divide:
            return series_div(run(e.lhs()), run(e.rhs()), order_, schedule_);
        case ExprKind::IntegerPower:
            return series_pow(run(e.lhs()), e.exponent(), order_, schedule_);
        case ExprKind::Exp:
            return series_exp(run(e.lhs()), order_);
        case ExprKind::Sin:
            return series_sin(run(e.lhs()), order_);
        case ExprKind::Cos:
            return series_cos(run(e.lhs()), order_);
        default:
            throw std::logic_error("unexpected constant node");
        }
    }

    SymConst center_;
    int order_;
    const PrecisionSchedule &schedule_;
    std::unordered_map<const void *, LaurentSeries> memo_;
};

}  // namespace

LaurentSeries expand(const Expr &e, const SymConst &center, int order,
                     const PrecisionSchedule &schedule) {
    // Division and negative powers lose terms; work deeper until `order` is known.
    int depth = order;
    for (;;) {
        LaurentSeries s = Expander(center, depth, schedule).run(e);
        if (s.truncation_order >= order) {
            s.truncation_order = order;
            while (!s.coeffs.empty() && s.max_stored() > order) s.coeffs.pop_back();
            return s;
        }
        if (depth >= order + kMaxDepth) return s;
        depth = std::min(order + kMaxDepth, depth + std::max(1, order - s.truncation_order));
    }
}

int LocalOrder::signed_order() const {
    switch (kind) {
    case Kind::Zero:
        return m;
    case Kind::Pole:
        return -m;
    case Kind::Regular:
        return 0;
    default:
        throw std::logic_error("signed_order of an indecisive local order");
    }
}

const char *LocalOrder::kind_name() const {
    switch (kind) {
    case Kind::Zero:
        return "zero";
    case Kind::Regular:
        return "regular";
    case Kind::Pole:
        return "pole";
    case Kind::VanishesToDepth:
        return "vanishes_to_depth";
    case Kind::Undecided:
        return "undecided";
    }
    return "?";
}

std::string LocalOrder::to_string() const {
    switch (kind) {
    case Kind::Zero:
    case Kind::Pole:
    case Kind::VanishesToDepth:
        return std::string(kind_name()) + "(" + std::to_string(m) + ")";
    case Kind::Regular:
        return "regular(" + (value.is_exact() ? value.to_string() : approximate_string(value)) + ")";
    case Kind::Undecided:
        return "undecided(" + reason + ")";
    }
    return "?";
}

namespace {

// At a center known only through a ball no coefficient can cancel exactly; an
// enclosure of 0 below this bound is taken as zero. Callers cross-check the
// resulting orders against the argument principle.
constexpr double kApproximateZero = 1e-20;

ZeroTest coefficient_test(const SymConst &c, const PrecisionSchedule &schedule, bool exact_center) {
    ZeroTest t = zero_test(c, schedule);
    if (t != ZeroTest::Unknown || exact_center) return t;
    ComplexBall b = enclose(c, schedule.bits.back());
    if (b.contains_zero() && mpfr_cmp_d(b.abs_upper().get(), kApproximateZero) < 0) return ZeroTest::Zero;
    return t;
}

}  // namespace

LocalOrder local_order(const Expr &e, const SymConst &center, const PrecisionSchedule &schedule) {
    const bool exact_center = center.is_exact();
    for (int depth = kInitialDepth; depth <= kMaxDepth; depth *= 2) {
        LaurentSeries s;
        try {
            s = expand(e, center, depth, schedule);
        } catch (const TruncationExhausted &) {
            continue;
        } catch (const DivisorValuationUnresolved &err) {
            return LocalOrder::undecided(err.what());
        }
        int hi = std::min(s.truncation_order, s.max_stored());
        for (int n = s.min_index; n <= hi; ++n) {
            const SymConst &c = raw(s, n);
            ZeroTest t = coefficient_test(c, schedule, exact_center);
            if (t == ZeroTest::Zero) continue;
            if (t == ZeroTest::Unknown)
                return LocalOrder::undecided("coefficient of (z - z0)^" + std::to_string(n) +
                                             " not resolved at " +
                                             std::to_string(schedule.bits.back()) + " bits");
            if (n > 0) return LocalOrder::zero(n);
            if (n < 0) return LocalOrder::pole(-n);
            return LocalOrder::regular(c);
        }
    }
    return LocalOrder::vanishes_to_depth(kMaxDepth);
}

}  // namespace sharing
