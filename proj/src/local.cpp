#include "sharing/local.hpp"

#include <stdexcept>

namespace sharing {

const char *to_string(Sense s) { return s == Sense::Vanishing ? "vanishing" : "value"; }

std::string weight_string(const std::optional<int> &weight) {
    return weight ? std::to_string(*weight) : "inf";
}

std::string SharingMode::to_string() const {
    return std::string(sharing::to_string(sense)) + "/" + weight_string(weight);
}

SharingMode SharingMode::parse(const std::string &text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) throw std::invalid_argument("mode must be sense/weight: " + text);
    std::string sense = text.substr(0, slash), weight = text.substr(slash + 1);
    SharingMode m;
    if (sense == "vanishing")
        m.sense = Sense::Vanishing;
    else if (sense == "value")
        m.sense = Sense::Value;
    else
        throw std::invalid_argument("unknown sense: " + sense);
    if (weight == "inf") return m;
    std::size_t used = 0;
    int w = std::stoi(weight, &used);
    if (used != weight.size() || w < 0) throw std::invalid_argument("bad weight: " + weight);
    m.weight = w;
    return m;
}

const char *to_string(LocalVerdict v) {
    switch (v) {
    case LocalVerdict::Shared:
        return "shared";
    case LocalVerdict::NotShared:
        return "not_shared";
    case LocalVerdict::Undecided:
        return "undecided";
    }
    return "?";
}

Triple::Triple(Expr f_, Expr g_, Expr alpha_)
    : f(std::move(f_)), g(std::move(g_)), alpha(std::move(alpha_)) {
    f_minus_alpha = f - alpha;
    g_minus_alpha = g - alpha;
    recip_f_minus = reciprocal_of(f) - reciprocal_of(alpha);
    recip_g_minus = reciprocal_of(g) - reciprocal_of(alpha);
    contact_f = split_fraction(f_minus_alpha).num;
    contact_g = split_fraction(g_minus_alpha).num;
    contact_f_program = Program(contact_f);
    contact_g_program = Program(contact_g);
}

namespace {

std::string sphere_value(const LocalOrder &o) {
    switch (o.kind) {
    case LocalOrder::Kind::Pole:
        return "inf";
    case LocalOrder::Kind::Zero:
        return "0";
    case LocalOrder::Kind::Regular:
        return o.value.is_exact() ? o.value.to_string() : approximate_string(o.value);
    default:
        return "?";
    }
}

bool excludes_zero_at(const Program &p, const SymConst &z0, const PrecisionSchedule &schedule) {
    for (mpfr_prec_t bits : schedule.bits) {
        try {
            if (p(enclose(z0, bits)).excludes_zero()) return true;
        } catch (const BallDomainError &) {
        }
    }
    return false;
}

}  // namespace

PointClassification classify_point(const Triple &t, const SymConst &z0,
                                   const PrecisionSchedule &schedule) {
    PointClassification c;
    c.point = z0;
    c.snapped = z0.is_exact();
    c.ord_alpha = local_order(t.alpha, z0, schedule);
    c.ord_f_minus_alpha = local_order(t.f_minus_alpha, z0, schedule);
    c.ord_g_minus_alpha = local_order(t.g_minus_alpha, z0, schedule);
    if (c.ord_alpha.kind == LocalOrder::Kind::Pole) {
        c.ord_recip_f = local_order(t.recip_f_minus, z0, schedule);
        c.ord_recip_g = local_order(t.recip_g_minus, z0, schedule);
    }
    c.value_alpha = sphere_value(c.ord_alpha);
    c.value_f = sphere_value(local_order(t.f, z0, schedule));
    c.value_g = sphere_value(local_order(t.g, z0, schedule));
    c.f_contact_excluded = excludes_zero_at(t.contact_f_program, z0, schedule);
    c.g_contact_excluded = excludes_zero_at(t.contact_g_program, z0, schedule);
    return c;
}

PointClassification classify_point(const Expr &f, const Expr &g, const Expr &alpha,
                                   const SymConst &z0, const PrecisionSchedule &schedule) {
    return classify_point(Triple(f, g, alpha), z0, schedule);
}

std::optional<int> contact_order(const PointClassification &c, Sense sense, bool f_side) {
    if (f_side ? c.f_contact_excluded : c.g_contact_excluded) return 0;
    const LocalOrder *o = f_side ? &c.ord_f_minus_alpha : &c.ord_g_minus_alpha;
    if (sense == Sense::Value) {
        if (!c.ord_alpha.decisive()) return std::nullopt;
        if (c.ord_alpha.kind == LocalOrder::Kind::Pole) {
            const auto &r = f_side ? c.ord_recip_f : c.ord_recip_g;
            if (!r) return std::nullopt;
            o = &*r;
        }
    }
    switch (o->kind) {
    case LocalOrder::Kind::Zero:
        return o->m;
    case LocalOrder::Kind::Regular:
    case LocalOrder::Kind::Pole:
        return 0;
    default:
        return std::nullopt;
    }
}

LocalVerdict local_verdict(const PointClassification &c, const SharingMode &mode) {
    auto of = contact_order(c, mode.sense, true);
    auto og = contact_order(c, mode.sense, false);
    if (!of || !og) return LocalVerdict::Undecided;
    int a = *of, b = *og;
    if (a == 0 && b == 0) return LocalVerdict::Shared;
    bool shared;
    if (!mode.weight)
        shared = a == b;
    else if (*mode.weight == 0)
        shared = (a > 0) == (b > 0);
    else if (a <= *mode.weight || b <= *mode.weight)
        shared = a == b;
    else
        shared = true;
    return shared ? LocalVerdict::Shared : LocalVerdict::NotShared;
}

}  // namespace sharing
