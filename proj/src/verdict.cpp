#include "sharing/verdict.hpp"

#include <algorithm>

namespace sharing {

const char *to_string(GlobalStatus s) {
    switch (s) {
    case GlobalStatus::Shares:
        return "shares";
    case GlobalStatus::Fails:
        return "fails";
    case GlobalStatus::Undecided:
        return "undecided";
    }
    return "?";
}

const char *to_string(MobiusCheck::Outcome o) {
    switch (o) {
    case MobiusCheck::Outcome::Consistent:
        return "consistent";
    case MobiusCheck::Outcome::Violation:
        return "violation";
    case MobiusCheck::Outcome::Undecided:
        return "undecided";
    }
    return "?";
}

const char *to_string(TransferCheck::Outcome o) {
    switch (o) {
    case TransferCheck::Outcome::TransferHolds:
        return "transfer_holds";
    case TransferCheck::Outcome::TransferFails:
        return "transfer_fails";
    case TransferCheck::Outcome::PreconditionFails:
        return "precondition_fails";
    case TransferCheck::Outcome::Undecided:
        return "undecided";
    }
    return "?";
}

namespace {

// Unsnapped points: the numerically decided orders of the candidate factors
// must add up to the multiplicity found by contour integration.
bool orders_match_winding(const Triple &t, const Candidate &c, const PrecisionSchedule &schedule) {
    Fraction a = split_fraction(t.alpha);
    int total = 0;
    for (const Expr *e : {&t.contact_f, &t.contact_g, static_cast<const Expr *>(&a.num), static_cast<const Expr *>(&a.den)}) {
        if (!e->depends_on_z()) continue;
        LocalOrder o = local_order(*e, c.point, schedule);
        if (o.kind == LocalOrder::Kind::Zero)
            total += o.m;
        else if (o.kind != LocalOrder::Kind::Regular)
            return false;
    }
    return total == c.multiplicity;
}

void distrust_orders(PointClassification &pc) {
    const std::string why = "orders at an unsnapped point disagree with the winding multiplicity";
    for (LocalOrder *o : {&pc.ord_alpha, &pc.ord_f_minus_alpha, &pc.ord_g_minus_alpha})
        if (o->decisive()) *o = LocalOrder::undecided(why);
    if (pc.ord_recip_f) pc.ord_recip_f = LocalOrder::undecided(why);
    if (pc.ord_recip_g) pc.ord_recip_g = LocalOrder::undecided(why);
    // the ball around the point may miss the root, so exclusion proves nothing
    pc.f_contact_excluded = pc.g_contact_excluded = false;
}

}  // namespace

TripleAnalysis analyze_triple(const Triple &t, const Region &r, const AnalysisOptions &options) {
    TripleAnalysis a;
    a.region = r;
    CandidateSearch search = search_candidates(t, r, options.schedule);
    a.candidates = std::move(search.candidates);
    for (const Candidate &c : a.candidates) {
        PointClassification pc = classify_point(t, c.point, options.schedule);
        if (!c.snapped && !orders_match_winding(t, c, options.schedule)) distrust_orders(pc);
        a.classifications.push_back(std::move(pc));
    }
    a.diagnostics.working_precision = options.schedule.working();
    a.diagnostics.refinement_precision = search.max_precision;
    a.diagnostics.cells = search.cells;
    a.diagnostics.boundary_shifts = search.boundary_shifts;
    a.diagnostics.searched = search.region;
    return a;
}

SharingReport report_for(const TripleAnalysis &a, const SharingMode &mode) {
    SharingReport rep;
    rep.mode = mode;
    rep.region = a.region;
    rep.diagnostics = a.diagnostics;
    for (std::size_t k = 0; k < a.candidates.size(); ++k) {
        PointReport p{a.classifications[k], a.candidates[k].multiplicity,
                      local_verdict(a.classifications[k], mode)};
        if (p.verdict == LocalVerdict::NotShared) rep.witnesses.push_back(p.classification.point);
        if (p.verdict == LocalVerdict::Undecided) rep.problems.push_back(p.classification.point);
        rep.points.push_back(std::move(p));
    }
    if (!rep.witnesses.empty())
        rep.status = GlobalStatus::Fails;
    else if (!rep.problems.empty())
        rep.status = GlobalStatus::Undecided;
    else
        rep.status = GlobalStatus::Shares;
    return rep;
}

SharingReport check_sharing(const Expr &f, const Expr &g, const Expr &alpha, const Region &r,
                            const SharingMode &mode, const AnalysisOptions &options) {
    return report_for(analyze_triple(Triple(f, g, alpha), r, options), mode);
}

bool same_point(const SymConst &a, const SymConst &b) {
    if (a.is_exact() && b.is_exact()) return a == b;
    ComplexBall x = enclose(a, 128), y = enclose(b, 128);
    ComplexBall d = x - y;
    return mpfr_cmp_d(d.abs_lower().get(), 1e-20) < 0;
}

bool same_point_set(const std::vector<SymConst> &a, const std::vector<SymConst> &b) {
    if (a.size() != b.size()) return false;
    for (const SymConst &p : a) {
        bool found = false;
        for (const SymConst &q : b)
            if (same_point(p, q)) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

namespace {

std::string point_list(const std::vector<SymConst> &v) {
    std::string s = "{";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k].to_string();
    return s + "}";
}

}  // namespace

MobiusCheck compare_under_mobius(const SharingReport &before, const SharingReport &after) {
    MobiusCheck c;
    c.weight = before.mode.weight;
    if (before.status == GlobalStatus::Undecided || after.status == GlobalStatus::Undecided) {
        c.outcome = MobiusCheck::Outcome::Undecided;
        c.details = "undecided points before " + point_list(before.problems) + ", after " +
                    point_list(after.problems);
        return c;
    }
    if (before.status != after.status) {
        c.outcome = MobiusCheck::Outcome::Violation;
        c.details = std::string("verdict ") + to_string(before.status) + " became " + to_string(after.status);
        return c;
    }
    if (!same_point_set(before.witnesses, after.witnesses)) {
        auto has = [](const std::vector<SymConst> &v, const SymConst &p) {
            return std::any_of(v.begin(), v.end(), [&](const SymConst &q) { return same_point(p, q); });
        };
        // Undecided points may be only roughly located; matching them loosely
        // can only turn a violation into an undecided comparison.
        auto near = [](const std::vector<SymConst> &v, const SymConst &p) {
            std::complex<double> z = enclose(p, 64).mid_double();
            return std::any_of(v.begin(), v.end(), [&](const SymConst &q) {
                return std::abs(enclose(q, 64).mid_double() - z) < 1e-8 * (1 + std::abs(z));
            });
        };
        // a witness on one side that is undecided on the other settles nothing
        bool open = true;
        for (const SymConst &p : before.witnesses)
            if (!has(after.witnesses, p) && !near(after.problems, p)) open = false;
        for (const SymConst &p : after.witnesses)
            if (!has(before.witnesses, p) && !near(before.problems, p)) open = false;
        if (open) {
            c.outcome = MobiusCheck::Outcome::Undecided;
            c.details = "witnesses " + point_list(before.witnesses) + " and " + point_list(after.witnesses) +
                        " differ only at undecided points";
            return c;
        }
        c.outcome = MobiusCheck::Outcome::Violation;
        c.details = "witnesses " + point_list(before.witnesses) + " became " + point_list(after.witnesses);
        return c;
    }
    c.outcome = MobiusCheck::Outcome::Consistent;
    c.details = std::string("both ") + to_string(before.status);
    return c;
}

std::vector<MobiusCheck> verify_mobius_invariance(const Expr &f, const Expr &g, const Expr &alpha,
                                                  const Mobius &m, const Region &r,
                                                  const std::vector<std::optional<int>> &weights,
                                                  const AnalysisOptions &options) {
    TripleAnalysis before = analyze_triple(Triple(f, g, alpha), r, options);
    TripleAnalysis after =
        analyze_triple(Triple(apply_mobius(m, f), apply_mobius(m, g), apply_mobius(m, alpha)), r, options);
    std::vector<MobiusCheck> out;
    for (const auto &w : weights) {
        SharingMode mode{Sense::Value, w};
        out.push_back(compare_under_mobius(report_for(before, mode), report_for(after, mode)));
    }
    return out;
}

MobiusCheck verify_mobius_invariance(const Expr &f, const Expr &g, const Expr &alpha, const Mobius &m,
                                     const Region &r, std::optional<int> weight,
                                     const AnalysisOptions &options) {
    return verify_mobius_invariance(f, g, alpha, m, r, std::vector<std::optional<int>>{weight}, options).front();
}

Triple quotient_triple(const Expr &f, const Expr &g, const Expr &alpha) {
    return Triple(f / alpha, g / alpha, Expr::integer(1));
}

TransferCheck transfer_from(const TripleAnalysis &triple, const TripleAnalysis &quotient,
                            const SharingMode &mode) {
    TransferCheck t;
    t.premise = report_for(triple, mode);
    if (t.premise.status == GlobalStatus::Undecided) return t;
    if (t.premise.status == GlobalStatus::Fails) {
        t.outcome = TransferCheck::Outcome::PreconditionFails;
        return t;
    }
    t.conclusion = report_for(quotient, mode);
    switch (t.conclusion->status) {
    case GlobalStatus::Shares:
        t.outcome = TransferCheck::Outcome::TransferHolds;
        break;
    case GlobalStatus::Fails:
        t.outcome = TransferCheck::Outcome::TransferFails;
        t.witnesses = t.conclusion->witnesses;
        break;
    case GlobalStatus::Undecided:
        break;
    }
    return t;
}

TransferCheck verify_quotient_transfer(const Expr &f, const Expr &g, const Expr &alpha, const Region &r,
                                       const SharingMode &mode, const AnalysisOptions &options) {
    if (alpha.is_rational(0)) throw ExprError("alpha vanishes identically");
    TripleAnalysis triple = analyze_triple(Triple(f, g, alpha), r, options);
    SharingReport premise = report_for(triple, mode);
    if (premise.status != GlobalStatus::Shares) {
        TransferCheck t;
        t.premise = std::move(premise);
        if (t.premise.status == GlobalStatus::Fails) t.outcome = TransferCheck::Outcome::PreconditionFails;
        return t;
    }
    return transfer_from(triple, analyze_triple(quotient_triple(f, g, alpha), r, options), mode);
}

}  // namespace sharing
