#pragma once

#include "sharing/evaluate.hpp"
#include "sharing/laurent.hpp"

#include <optional>
#include <string>

namespace sharing {

enum class Sense { Vanishing, Value };

/// Weight 0 is IM, an empty weight is CM.
struct SharingMode {
    Sense sense = Sense::Vanishing;
    std::optional<int> weight;

    static SharingMode im(Sense s) { return {s, 0}; }
    static SharingMode cm(Sense s) { return {s, std::nullopt}; }
    static SharingMode weighted(Sense s, int m) { return {s, m}; }

    bool infinite() const { return !weight.has_value(); }
    /// "vanishing/inf", "value/2".
    std::string to_string() const;
    /// Inverse of to_string; throws std::invalid_argument.
    static SharingMode parse(const std::string &text);
    friend bool operator==(const SharingMode &, const SharingMode &) = default;
};

const char *to_string(Sense s);
std::string weight_string(const std::optional<int> &weight);

enum class LocalVerdict { Shared, NotShared, Undecided };
const char *to_string(LocalVerdict v);

/// The three functions under study, with the derived expressions needed per
/// point prepared once.
struct Triple {
    Triple(Expr f, Expr g, Expr alpha);

    Expr f, g, alpha;
    Expr f_minus_alpha, g_minus_alpha;
    Expr recip_f_minus, recip_g_minus;
    /// Entire numerators of f - alpha and g - alpha. Every contact point, in
    /// either sense, is one of their zeros.
    Expr contact_f, contact_g;
    Program contact_f_program, contact_g_program;
};

struct PointClassification {
    SymConst point;
    bool snapped = true;
    LocalOrder ord_alpha;
    LocalOrder ord_f_minus_alpha;
    LocalOrder ord_g_minus_alpha;
    /// Present iff ord_alpha is a pole.
    std::optional<LocalOrder> ord_recip_f;
    std::optional<LocalOrder> ord_recip_g;
    /// f(z0), g(z0), alpha(z0) on the Riemann sphere: "inf", "0", a value, or "?".
    std::string value_f, value_g, value_alpha;
    /// Set when a ball evaluation of the contact numerator excludes zero at
    /// the point, so the side has no contact in either sense whatever the
    /// Laurent engine could decide.
    bool f_contact_excluded = false;
    bool g_contact_excluded = false;
};

PointClassification classify_point(const Triple &t, const SymConst &z0,
                                   const PrecisionSchedule &schedule = {});
PointClassification classify_point(const Expr &f, const Expr &g, const Expr &alpha,
                                   const SymConst &z0, const PrecisionSchedule &schedule = {});

/// Contact order of one side under a sense: the zero order of f - alpha, or
/// of 1/f - 1/alpha at poles of alpha under Value; 0 when there is no zero.
/// Empty when it cannot be decided.
std::optional<int> contact_order(const PointClassification &c, Sense sense, bool f_side);

LocalVerdict local_verdict(const PointClassification &c, const SharingMode &mode);

}  // namespace sharing
