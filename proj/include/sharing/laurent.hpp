#pragma once

#include "sharing/constant.hpp"
#include "sharing/expr.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace sharing {

/// Truncated Laurent series sum c_n (z - center)^n. Coefficients below
/// min_index are zero; those above truncation_order are unknown. Stored
/// leading coefficients may still be zero: the valuation is found lazily by
/// zero-testing.
struct LaurentSeries {
    SymConst center;
    int min_index = 0;
    std::vector<SymConst> coeffs;
    int truncation_order = 0;

    /// Coefficient of (z - center)^n; n must not exceed truncation_order.
    SymConst coefficient(int n) const;
    int max_stored() const { return min_index + static_cast<int>(coeffs.size()) - 1; }
};

struct DivisorValuationUnresolved : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TruncationExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Series arithmetic. All results are cut at `order` (the requested depth).
LaurentSeries series_add(const LaurentSeries &a, const LaurentSeries &b, int order);
LaurentSeries series_sub(const LaurentSeries &a, const LaurentSeries &b, int order);
LaurentSeries series_mul(const LaurentSeries &a, const LaurentSeries &b, int order);
LaurentSeries series_div(const LaurentSeries &a, const LaurentSeries &b, int order,
                         const PrecisionSchedule &schedule = {});
LaurentSeries series_pow(const LaurentSeries &a, long n, int order,
                         const PrecisionSchedule &schedule = {});
/// Compositions; the argument must have valuation >= 0.
LaurentSeries series_exp(const LaurentSeries &a, int order);
LaurentSeries series_sin(const LaurentSeries &a, int order);
LaurentSeries series_cos(const LaurentSeries &a, int order);
LaurentSeries series_derivative(const LaurentSeries &a);

/// Coefficients of e at center for indices up to `order`.
LaurentSeries expand(const Expr &e, const SymConst &center, int order,
                     const PrecisionSchedule &schedule = {});

struct LocalOrder {
    enum class Kind { Zero, Regular, Pole, VanishesToDepth, Undecided };
    Kind kind = Kind::Undecided;
    /// Zero/Pole order, or the depth for VanishesToDepth.
    int m = 0;
    /// Regular value.
    SymConst value;
    std::string reason;

    static LocalOrder zero(int m) { return {Kind::Zero, m, {}, {}}; }
    static LocalOrder pole(int m) { return {Kind::Pole, m, {}, {}}; }
    static LocalOrder regular(SymConst v) { return {Kind::Regular, 0, std::move(v), {}}; }
    static LocalOrder vanishes_to_depth(int n) { return {Kind::VanishesToDepth, n, {}, {}}; }
    static LocalOrder undecided(std::string why) { return {Kind::Undecided, 0, {}, std::move(why)}; }

    bool decisive() const { return kind == Kind::Zero || kind == Kind::Regular || kind == Kind::Pole; }
    /// Zero(m) -> m, Pole(m) -> -m, Regular -> 0. Only for decisive orders.
    int signed_order() const;
    /// e.g. "zero(2)", "pole(1)", "regular(-1)".
    std::string to_string() const;
    const char *kind_name() const;
};

inline constexpr int kInitialDepth = 8;
inline constexpr int kMaxDepth = 128;

LocalOrder local_order(const Expr &e, const SymConst &center,
                       const PrecisionSchedule &schedule = {});

}  // namespace sharing
