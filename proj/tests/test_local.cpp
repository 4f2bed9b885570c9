#include "doctest.h"

#include "sharing/corpus.hpp"

using namespace sharing;

namespace {

const std::vector<std::optional<int>> kWeights = {0, 1, 2, 3, 4, 5, 6, std::nullopt};

PointClassification at_zero(const char *f, const char *g, const char *alpha) {
    return classify_point(parse(f), parse(g), parse(alpha), SymConst(0));
}

// Classification away from alpha-poles with the given contact orders.
PointClassification synthetic(int f_order, int g_order) {
    PointClassification c;
    c.point = SymConst(0);
    c.ord_alpha = LocalOrder::regular(SymConst(1));
    c.ord_f_minus_alpha = f_order ? LocalOrder::zero(f_order) : LocalOrder::regular(SymConst(2));
    c.ord_g_minus_alpha = g_order ? LocalOrder::zero(g_order) : LocalOrder::regular(SymConst(2));
    return c;
}

std::vector<PointClassification> corpus_classifications() {
    static std::vector<PointClassification> all = [] {
        std::vector<PointClassification> out;
        for (const CorpusEntry &e : corpus())
            for (Variant v : {Variant::Base, Variant::Inverted, Variant::Quotient}) {
                TripleAnalysis a = analyze_triple(variant_triple(e, v), e.region);
                out.insert(out.end(), a.classifications.begin(), a.classifications.end());
            }
        return out;
    }();
    return all;
}

PointClassification swapped(PointClassification c) {
    std::swap(c.ord_f_minus_alpha, c.ord_g_minus_alpha);
    std::swap(c.ord_recip_f, c.ord_recip_g);
    std::swap(c.value_f, c.value_g);
    std::swap(c.f_contact_excluded, c.g_contact_excluded);
    return c;
}

}  // namespace

TEST_CASE("mode strings") {
    CHECK(SharingMode::parse("vanishing/inf") == SharingMode::cm(Sense::Vanishing));
    CHECK(SharingMode::parse("value/2") == SharingMode::weighted(Sense::Value, 2));
    CHECK(SharingMode::im(Sense::Value).to_string() == "value/0");
    CHECK_THROWS(SharingMode::parse("value/-1"));
    CHECK_THROWS(SharingMode::parse("sideways/0"));
}

TEST_CASE("classification of the first example at 0") {
    PointClassification c = at_zero("1/z + exp(z)", "1/z - exp(z)/z", "1/z");
    CHECK(c.ord_alpha.to_string() == "pole(1)");
    CHECK(c.ord_f_minus_alpha.to_string() == "regular(1)");
    CHECK(c.ord_g_minus_alpha.to_string() == "pole(1)");
    CHECK(c.value_f == "inf");
    CHECK(c.value_g == "-1");
    CHECK(c.value_alpha == "inf");
    CHECK(local_verdict(c, SharingMode::cm(Sense::Vanishing)) == LocalVerdict::Shared);
    CHECK(local_verdict(c, SharingMode::im(Sense::Value)) == LocalVerdict::NotShared);
}

TEST_CASE("reciprocal orders at 0 for the weight-one example") {
    PointClassification c = at_zero("1/z + exp(z)", "1/z + z*exp(z)", "1/z");
    REQUIRE(c.ord_recip_f);
    REQUIRE(c.ord_recip_g);
    CHECK(c.ord_recip_f->to_string() == "zero(2)");
    CHECK(c.ord_recip_g->to_string() == "zero(3)");
    CHECK(local_verdict(c, SharingMode::weighted(Sense::Value, 1)) == LocalVerdict::Shared);
    CHECK(local_verdict(c, SharingMode::weighted(Sense::Value, 2)) == LocalVerdict::NotShared);
    CHECK(local_verdict(c, SharingMode::cm(Sense::Value)) == LocalVerdict::NotShared);
    CHECK(local_verdict(c, SharingMode::im(Sense::Vanishing)) == LocalVerdict::NotShared);
}

TEST_CASE("value sense CM versus IM at 0") {
    PointClassification c = at_zero("1/z + exp(z)", "1/z + exp(z)/z", "1/z");
    CHECK(local_verdict(c, SharingMode::cm(Sense::Value)) == LocalVerdict::NotShared);
    CHECK(local_verdict(c, SharingMode::im(Sense::Value)) == LocalVerdict::Shared);
    CHECK(local_verdict(c, SharingMode::cm(Sense::Vanishing)) == LocalVerdict::Shared);
}

TEST_CASE("f = g gives identical columns") {
    for (const char *f : {"1/z + exp(z)", "sin(z)^2", "z^3/(z - 1)"}) {
        PointClassification c = at_zero(f, f, "1/z");
        CHECK(c.ord_f_minus_alpha.to_string() == c.ord_g_minus_alpha.to_string());
        CHECK(c.value_f == c.value_g);
        if (c.ord_recip_f) CHECK(c.ord_recip_f->to_string() == c.ord_recip_g->to_string());
        for (auto w : kWeights)
            for (Sense s : {Sense::Vanishing, Sense::Value}) CHECK(local_verdict(c, {s, w}) != LocalVerdict::NotShared);
    }
}

TEST_CASE("weight rules") {
    auto v = [](int a, int b, std::optional<int> w) { return local_verdict(synthetic(a, b), {Sense::Vanishing, w}); };
    CHECK(v(0, 0, 0) == LocalVerdict::Shared);
    CHECK(v(1, 0, 0) == LocalVerdict::NotShared);
    CHECK(v(1, 5, 0) == LocalVerdict::Shared);
    CHECK(v(1, 2, 1) == LocalVerdict::NotShared);
    CHECK(v(2, 3, 1) == LocalVerdict::Shared);
    CHECK(v(2, 3, 2) == LocalVerdict::NotShared);
    CHECK(v(3, 3, std::nullopt) == LocalVerdict::Shared);
    CHECK(v(3, 4, std::nullopt) == LocalVerdict::NotShared);
    CHECK(v(3, 4, 2) == LocalVerdict::Shared);

    PointClassification u = synthetic(2, 0);
    u.ord_g_minus_alpha = LocalOrder::undecided("test");
    CHECK(local_verdict(u, SharingMode::im(Sense::Vanishing)) == LocalVerdict::Undecided);
    u.g_contact_excluded = true;
    CHECK(local_verdict(u, SharingMode::im(Sense::Vanishing)) == LocalVerdict::NotShared);
}

TEST_CASE("invariants over every corpus classification") {
    auto all = corpus_classifications();
    REQUIRE(all.size() > 20);
    for (const PointClassification &c : all) {
        CAPTURE(c.point.to_string());
        for (Sense s : {Sense::Vanishing, Sense::Value}) {
            // weight monotonicity, CM implies IM
            for (std::size_t i = 0; i < kWeights.size(); ++i)
                if (local_verdict(c, {s, kWeights[i]}) == LocalVerdict::Shared)
                    for (std::size_t j = 0; j < i; ++j) CHECK(local_verdict(c, {s, kWeights[j]}) == LocalVerdict::Shared);
            if (local_verdict(c, SharingMode::cm(s)) == LocalVerdict::Shared)
                CHECK(local_verdict(c, SharingMode::im(s)) == LocalVerdict::Shared);
            // symmetry
            for (auto w : kWeights) CHECK(local_verdict(c, {s, w}) == local_verdict(swapped(c), {s, w}));
        }
        // senses agree away from alpha-poles
        if (c.ord_alpha.kind != LocalOrder::Kind::Pole)
            for (auto w : kWeights)
                CHECK(local_verdict(c, {Sense::Vanishing, w}) == local_verdict(c, {Sense::Value, w}));
    }
}
