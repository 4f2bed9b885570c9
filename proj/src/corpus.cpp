#include "sharing/corpus.hpp"

#include <map>

namespace sharing {

const char *to_string(Variant v) {
    switch (v) {
    case Variant::Base:
        return "base";
    case Variant::Inverted:
        return "inverted";
    case Variant::Quotient:
        return "quotient";
    case Variant::AlphaMultiple:
        return "alpha-multiple";
    }
    return "?";
}

const char *to_string(CheckResult r) {
    switch (r) {
    case CheckResult::Pass:
        return "PASS";
    case CheckResult::Fail:
        return "FAIL";
    case CheckResult::Undecided:
        return "UNDECIDED";
    }
    return "?";
}

namespace {

std::string witness_text(const std::vector<std::string> &w) {
    std::string s = "{";
    for (std::size_t k = 0; k < w.size(); ++k) s += (k ? ", " : "") + w[k];
    return s + "}";
}

std::string point_text(const std::vector<SymConst> &w) {
    std::string s = "{";
    for (std::size_t k = 0; k < w.size(); ++k) s += (k ? ", " : "") + w[k].to_string();
    return s + "}";
}

CorpusCheck sharing_check(Variant v, const char *mode, GlobalStatus s, std::vector<std::string> w = {}) {
    CorpusCheck c;
    c.kind = CorpusCheck::Kind::Sharing;
    c.variant = v;
    c.mode = SharingMode::parse(mode);
    c.expected_status = s;
    c.expected_witnesses = std::move(w);
    return c;
}

CorpusCheck transfer_check(const char *mode, TransferCheck::Outcome o, std::vector<std::string> w = {}) {
    CorpusCheck c;
    c.kind = CorpusCheck::Kind::Transfer;
    c.mode = SharingMode::parse(mode);
    c.expected_transfer = o;
    c.expected_witnesses = std::move(w);
    return c;
}

CorpusCheck order_check(const char *expr, const char *point, const char *expected) {
    CorpusCheck c;
    c.kind = CorpusCheck::Kind::Order;
    c.expression = expr;
    c.point = point;
    c.expected_order = expected;
    return c;
}

const std::vector<std::string> kPiMultiples = {"-2*pi", "-pi", "0", "pi", "2*pi"};

}  // namespace

std::string CorpusCheck::describe() const {
    switch (kind) {
    case Kind::Sharing: {
        std::string s = std::string(to_string(variant)) + " " + mode.to_string() + ": " + to_string(expected_status);
        if (expected_status == GlobalStatus::Fails) s += "@" + witness_text(expected_witnesses);
        return s;
    }
    case Kind::Transfer: {
        std::string s = "transfer " + mode.to_string() + ": " + to_string(expected_transfer);
        if (expected_transfer == TransferCheck::Outcome::TransferFails) s += "@" + witness_text(expected_witnesses);
        return s;
    }
    case Kind::Order:
        return "order of " + expression + " at " + point + ": " + expected_order;
    }
    return "?";
}

std::vector<CorpusEntry> corpus() {
    const Region r = Region::parse("-7,7,-1,1");
    using GS = GlobalStatus;
    using TO = TransferCheck::Outcome;
    using V = Variant;
    std::vector<CorpusEntry> out;

    out.push_back({"Example 1", "1/z + exp(z)", "1/z - exp(z)/z", "1/z", "", r,
                   {sharing_check(V::Base, "vanishing/inf", GS::Shares),
                    sharing_check(V::Base, "value/0", GS::Fails, {"0"})}});
    out.push_back({"Example 2", "z + z^2*exp(z)", "z + z^3*exp(z)", "z", "", r,
                   {sharing_check(V::Base, "vanishing/0", GS::Shares),
                    sharing_check(V::Inverted, "vanishing/0", GS::Fails, {"0"}),
                    order_check("z^2*exp(z)", "0", "zero(2)")}});
    out.push_back({"Example 3", "1/z + exp(z)", "1/z - exp(z)/z", "1/z", "", r,
                   {sharing_check(V::Base, "vanishing/inf", GS::Shares),
                    sharing_check(V::Inverted, "vanishing/0", GS::Fails, {"0"}),
                    sharing_check(V::Inverted, "value/0", GS::Fails, {"0"}),
                    order_check("1/(1/z + exp(z)) - z", "0", "zero(2)"),
                    order_check("1/(1/z - exp(z)/z) - z", "0", "regular(-1)")}});
    out.push_back({"Example 4", "1/z + exp(z)", "1/z + exp(z)/z", "1/z", "", r,
                   {sharing_check(V::Base, "vanishing/inf", GS::Shares),
                    sharing_check(V::Inverted, "vanishing/0", GS::Shares),
                    sharing_check(V::Inverted, "vanishing/inf", GS::Fails, {"0"})}});
    out.push_back({"Example 5", "1/z + exp(z)", "1/z + exp(z)/z", "1/z", "", r,
                   {sharing_check(V::Base, "vanishing/inf", GS::Shares),
                    sharing_check(V::Quotient, "vanishing/0", GS::Fails, {"0"}),
                    transfer_check("vanishing/inf", TO::TransferFails, {"0"}),
                    transfer_check("value/inf", TO::PreconditionFails)}});
    out.push_back({"Example 6", "1/sin(z) + exp(z^2)", "(1 + exp(z^2))/sin(z)", "1/sin(z)", "", r,
                   {sharing_check(V::Base, "vanishing/inf", GS::Shares),
                    sharing_check(V::Quotient, "vanishing/0", GS::Fails, kPiMultiples),
                    transfer_check("vanishing/inf", TO::TransferFails, kPiMultiples)}});
    out.push_back({"Example 7", "1/z + exp(z)", "1/z + z*exp(z)", "1/z", "", r,
                   {sharing_check(V::Base, "value/0", GS::Shares),
                    sharing_check(V::Base, "value/1", GS::Shares),
                    sharing_check(V::Base, "value/inf", GS::Fails, {"0"}),
                    sharing_check(V::Base, "vanishing/0", GS::Fails, {"0"}),
                    order_check("-z^2*exp(z)/(1 + z*exp(z))", "0", "zero(2)"),
                    order_check("-z^3*exp(z)/(1 + z^2*exp(z))", "0", "zero(3)"),
                    order_check("1/(1/z + exp(z)) - 1/(1/z)", "0", "zero(2)"),
                    order_check("1/(1/z + z*exp(z)) - 1/(1/z)", "0", "zero(3)")}});
    out.push_back({"Example 8", "1/z + exp(z)", "1/z + exp(z)/z", "1/z", "", r,
                   {sharing_check(V::Base, "vanishing/inf", GS::Shares),
                    sharing_check(V::Base, "value/inf", GS::Fails, {"0"}),
                    sharing_check(V::Base, "value/0", GS::Shares)}});
    out.push_back({"Example 9", "sin(z) + sin(z)*exp(z^2)", "sin(z) + sin(z)^2*exp(z^2)", "sin(z)", "", r,
                   {sharing_check(V::Base, "vanishing/0", GS::Shares),
                    sharing_check(V::Base, "value/0", GS::Shares),
                    sharing_check(V::Quotient, "vanishing/0", GS::Fails, kPiMultiples),
                    transfer_check("value/0", TO::TransferFails, kPiMultiples)}});
    for (int m = 0; m <= 3; ++m) {
        std::string p1 = std::to_string(m + 1), p2 = std::to_string(m + 2), w = std::to_string(m);
        std::string s1 = m == 0 ? "sin(z)" : "sin(z)^" + p1;
        CorpusEntry e{"Example 10 (m=" + w + ")", s1 + " + " + s1 + "*exp(z^2)",
                      s1 + " + sin(z)^" + p2 + "*exp(z^2)", s1, "", r, {}};
        e.checks.push_back(sharing_check(V::Base, ("vanishing/" + w).c_str(), GS::Shares));
        e.checks.push_back(sharing_check(V::Base, ("value/" + w).c_str(), GS::Shares));
        e.checks.push_back(sharing_check(V::Quotient, "vanishing/0", GS::Fails, kPiMultiples));
        e.checks.push_back(transfer_check(("value/" + w).c_str(), TO::TransferFails, kPiMultiples));
        out.push_back(std::move(e));
    }
    out.push_back({"Example 11", "1 + exp(z^2)", "1 + exp(z^2)/sin(z)", "1", "sin(z)", r,
                   {sharing_check(V::Base, "value/inf", GS::Shares),
                    sharing_check(V::Base, "vanishing/inf", GS::Shares),
                    sharing_check(V::AlphaMultiple, "vanishing/0", GS::Fails, kPiMultiples),
                    sharing_check(V::AlphaMultiple, "value/0", GS::Fails, kPiMultiples)}});
    return out;
}

Triple variant_triple(const CorpusEntry &e, Variant v) {
    Expr f = parse(e.f), g = parse(e.g), a = parse(e.alpha);
    switch (v) {
    case Variant::Base:
        break;
    case Variant::Inverted:
        return Triple(reciprocal_of(f), reciprocal_of(g), reciprocal_of(a));
    case Variant::Quotient:
        return quotient_triple(f, g, a);
    case Variant::AlphaMultiple: {
        Expr m = parse(e.multiplier);
        return Triple(m * f, m * g, m);
    }
    }
    return Triple(f, g, a);
}

namespace {

std::vector<SymConst> expected_points(const CorpusCheck &c) {
    std::vector<SymConst> v;
    for (const auto &w : c.expected_witnesses) v.push_back(*constant_value(parse(w)));
    return v;
}

CorpusRow sharing_row(const CorpusCheck &c, const SharingReport &rep) {
    CorpusRow row;
    row.check = c.describe();
    row.observed = to_string(rep.status);
    if (rep.status == GlobalStatus::Fails) row.observed += "@" + point_text(rep.witnesses);
    if (rep.status == GlobalStatus::Undecided) {
        row.observed += "@" + point_text(rep.problems);
        row.result = CheckResult::Undecided;
        return row;
    }
    bool ok = rep.status == c.expected_status &&
              (rep.status != GlobalStatus::Fails || same_point_set(rep.witnesses, expected_points(c)));
    row.result = ok ? CheckResult::Pass : CheckResult::Fail;
    return row;
}

}  // namespace

std::vector<CorpusRow> run_entry(const CorpusEntry &e, const AnalysisOptions &options) {
    std::map<Variant, TripleAnalysis> analyses;
    auto analysis = [&](Variant v) -> const TripleAnalysis & {
        auto it = analyses.find(v);
        if (it == analyses.end()) it = analyses.emplace(v, analyze_triple(variant_triple(e, v), e.region, options)).first;
        return it->second;
    };
    std::vector<CorpusRow> rows;
    for (const CorpusCheck &c : e.checks) {
        CorpusRow row;
        try {
            switch (c.kind) {
            case CorpusCheck::Kind::Sharing:
                row = sharing_row(c, report_for(analysis(c.variant), c.mode));
                break;
            case CorpusCheck::Kind::Transfer: {
                TransferCheck t = transfer_from(analysis(Variant::Base), analysis(Variant::Quotient), c.mode);
                row.check = c.describe();
                row.observed = to_string(t.outcome);
                if (t.outcome == TransferCheck::Outcome::TransferFails) row.observed += "@" + point_text(t.witnesses);
                if (t.outcome == TransferCheck::Outcome::Undecided) {
                    row.result = CheckResult::Undecided;
                } else {
                    bool ok = t.outcome == c.expected_transfer &&
                              (t.outcome != TransferCheck::Outcome::TransferFails ||
                               same_point_set(t.witnesses, expected_points(c)));
                    row.result = ok ? CheckResult::Pass : CheckResult::Fail;
                }
                break;
            }
            case CorpusCheck::Kind::Order: {
                LocalOrder o = local_order(parse(c.expression), *constant_value(parse(c.point)), options.schedule);
                row.check = c.describe();
                row.observed = o.to_string();
                if (!o.decisive())
                    row.result = CheckResult::Undecided;
                else
                    row.result = row.observed == c.expected_order ? CheckResult::Pass : CheckResult::Fail;
                break;
            }
            }
        } catch (const std::exception &err) {
            row.check = c.describe();
            row.observed = std::string("error: ") + err.what();
            row.result = CheckResult::Undecided;
        }
        row.entry = e.id;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<CorpusRow> run_corpus(const AnalysisOptions &options) {
    std::vector<CorpusRow> rows;
    for (const CorpusEntry &e : corpus()) {
        auto r = run_entry(e, options);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    return rows;
}

}  // namespace sharing
