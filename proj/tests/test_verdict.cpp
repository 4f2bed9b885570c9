#include "doctest.h"

#include "sharing/corpus.hpp"
#include "sharing/report.hpp"

using namespace sharing;

namespace {

const Region kSquare2 = Region::parse("-2,2,-2,2");
const Region kStrip = Region::parse("-7,7,-1,1");

std::vector<SymConst> pi_multiples() {
    std::vector<SymConst> v;
    for (int k = -2; k <= 2; ++k) v.push_back(SymConst::pi() * SymConst(k));
    return v;
}

SharingReport check(const char *f, const char *g, const char *a, const Region &r, const char *mode) {
    return check_sharing(parse(f), parse(g), parse(a), r, SharingMode::parse(mode));
}

const std::vector<std::optional<int>> kWeights = {0, 1, 2, 3, 4, 5, 6, std::nullopt};

}  // namespace

TEST_CASE("region-level verdicts") {
    SharingReport cm = check("1/z + exp(z)", "1/z + exp(z)/z", "1/z", kSquare2, "vanishing/inf");
    CHECK(cm.status == GlobalStatus::Shares);
    SharingReport value = check("1/z + exp(z)", "1/z + exp(z)/z", "1/z", kSquare2, "value/inf");
    CHECK(value.status == GlobalStatus::Fails);
    CHECK(same_point_set(value.witnesses, {SymConst(0)}));

    for (const char *mode : {"vanishing/2", "value/2"})
        CHECK(check("sin(z)^3 + sin(z)^3*exp(z^2)", "sin(z)^3 + sin(z)^4*exp(z^2)", "sin(z)^3", kStrip, mode).status ==
              GlobalStatus::Shares);
}

TEST_CASE("f = g shares in every mode") {
    for (const char *f : {"1/z + exp(z)", "sin(z)^2 + z", "z^3/(z - 1/2)"})
        for (Sense s : {Sense::Vanishing, Sense::Value})
            for (auto w : kWeights)
                CHECK(check_sharing(parse(f), parse(f), parse("1/z"), kSquare2, {s, w}).status == GlobalStatus::Shares);
}

TEST_CASE("report invariants") {
    TripleAnalysis a = analyze_triple(Triple(parse("1/z + exp(z)"), parse("1/z + z*exp(z)"), parse("1/z")), kStrip);
    for (Sense s : {Sense::Vanishing, Sense::Value})
        for (auto w : kWeights) {
            SharingReport r = report_for(a, {s, w});
            bool all_shared = true;
            std::size_t not_shared = 0;
            for (const PointReport &p : r.points) {
                all_shared &= p.verdict == LocalVerdict::Shared;
                not_shared += p.verdict == LocalVerdict::NotShared;
            }
            CHECK((r.status == GlobalStatus::Shares) == all_shared);
            CHECK(r.witnesses.size() == not_shared);
            CHECK(r.diagnostics.working_precision == 256);
        }
}

TEST_CASE("mobius harness") {
    Expr f = parse("z + z^2*exp(z)"), g = parse("z + z^3*exp(z)"), a = parse("z");
    MobiusCheck inv = verify_mobius_invariance(f, g, a, Mobius::inversion(), kStrip, 0);
    CHECK(inv.outcome == MobiusCheck::Outcome::Consistent);
    for (const CorpusEntry &e : corpus()) {
        auto checks = verify_mobius_invariance(parse(e.f), parse(e.g), parse(e.alpha), Mobius::identity(), e.region,
                                               std::vector<std::optional<int>>{0, 1, std::nullopt});
        for (const MobiusCheck &m : checks) CHECK_MESSAGE(m.outcome == MobiusCheck::Outcome::Consistent, e.id);
    }
    // vanishing sense is not invariant: the same inversion breaks it
    SharingReport before = check_sharing(f, g, a, kStrip, SharingMode::im(Sense::Vanishing));
    SharingReport after = check_sharing(reciprocal_of(f), reciprocal_of(g), reciprocal_of(a), kStrip,
                                        SharingMode::im(Sense::Vanishing));
    CHECK(compare_under_mobius(before, after).outcome == MobiusCheck::Outcome::Violation);
}

TEST_CASE("quotient transfer") {
    Expr f = parse("1/z + exp(z)"), g = parse("1/z + exp(z)/z"), a = parse("1/z");
    TransferCheck t = verify_quotient_transfer(f, g, a, kStrip, SharingMode::cm(Sense::Vanishing));
    CHECK(t.outcome == TransferCheck::Outcome::TransferFails);
    CHECK(same_point_set(t.witnesses, {SymConst(0)}));
    CHECK(verify_quotient_transfer(f, g, a, kStrip, SharingMode::cm(Sense::Value)).outcome ==
          TransferCheck::Outcome::PreconditionFails);

    TransferCheck nine = verify_quotient_transfer(parse("sin(z) + sin(z)*exp(z^2)"), parse("sin(z) + sin(z)^2*exp(z^2)"),
                                                  parse("sin(z)"), kStrip, SharingMode::im(Sense::Value));
    CHECK(nine.outcome == TransferCheck::Outcome::TransferFails);
    CHECK(same_point_set(nine.witnesses, pi_multiples()));

    CHECK(verify_quotient_transfer(parse("z*(1 + exp(z))"), parse("z*(1 + exp(2*z))"), parse("z"), kSquare2,
                                   SharingMode::cm(Sense::Value))
              .outcome == TransferCheck::Outcome::TransferHolds);
    CHECK_THROWS_AS(verify_quotient_transfer(f, g, parse("0"), kStrip, SharingMode::cm(Sense::Value)), ExprError);
}

TEST_CASE("converse transfer refuted by alpha multiples") {
    CHECK(check("1 + exp(z^2)", "1 + exp(z^2)/sin(z)", "1", kStrip, "value/inf").status == GlobalStatus::Shares);
    for (const char *mode : {"vanishing/0", "value/0"}) {
        SharingReport r = check("sin(z)*(1 + exp(z^2))", "sin(z)*(1 + exp(z^2)/sin(z))", "sin(z)", kStrip, mode);
        CHECK(r.status == GlobalStatus::Fails);
        CHECK(same_point_set(r.witnesses, pi_multiples()));
    }
}

TEST_CASE("finite weights stabilise to the infinite-weight verdict") {
    for (const CorpusEntry &e : corpus())
        for (Variant v : {Variant::Base, Variant::Inverted, Variant::Quotient}) {
            TripleAnalysis a = analyze_triple(variant_triple(e, v), e.region);
            for (Sense s : {Sense::Vanishing, Sense::Value}) {
                GlobalStatus limit = report_for(a, SharingMode::cm(s)).status;
                // smallest m0 such that every tested m in [m0, 6] matches
                int m0 = 7;
                while (m0 > 0 && report_for(a, SharingMode::weighted(s, m0 - 1)).status == limit) --m0;
                CHECK_MESSAGE(m0 <= 6, e.id, " ", to_string(v), " ", to_string(s));
            }
        }
}

TEST_CASE("witness comparison") {
    CHECK(same_point(SymConst::pi(), SymConst::pi()));
    CHECK_FALSE(same_point(SymConst::pi(), SymConst(3)));
    ComplexBall b = enclose(SymConst::pi(), 256);
    CHECK(same_point(SymConst::approximate(b, "~pi"), SymConst::pi()));
    CHECK_FALSE(same_point_set({SymConst(0)}, {SymConst(0), SymConst(1)}));
}

TEST_CASE("json report") {
    SharingReport r = check("1/z + exp(z)", "1/z + exp(z)/z", "1/z", kSquare2, "value/inf");
    auto j = to_json(r);
    CHECK(j["mode"]["sense"] == "value");
    CHECK(j["mode"]["weight"] == "inf");
    CHECK(j["region"] == nlohmann::ordered_json::array({"-2", "2", "-2", "2"}));
    REQUIRE(j["points"].size() == 1);
    CHECK(j["points"][0]["point"]["snapped"] == true);
    CHECK(j["points"][0]["point"]["value"] == "0");
    CHECK(j["points"][0]["orders"]["recip_f_minus"] == "zero(2)");
    CHECK(j["points"][0]["verdict"] == "not_shared");
    CHECK(j["global"]["status"] == "fails");
    CHECK(j["global"]["witnesses"][0]["value"] == "0");
    CHECK(j.contains("diagnostics"));
    SharingReport again = check("1/z + exp(z)", "1/z + exp(z)/z", "1/z", kSquare2, "value/inf");
    CHECK(to_json(again).dump() == j.dump());
    CHECK(format_report(r).find("status: fails at 0") != std::string::npos);
}
