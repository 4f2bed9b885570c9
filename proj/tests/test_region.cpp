#include "doctest.h"

#include "sharing/corpus.hpp"
#include "support/roots.hpp"

using namespace sharing;
using namespace sharing::testing;

namespace {

const Region kUnit = Region::parse("-1,1,-1,1");

std::vector<SymConst> pi_multiples(int lo, int hi) {
    std::vector<SymConst> v;
    for (int k = lo; k <= hi; ++k) v.push_back(SymConst::pi() * SymConst(k));
    return v;
}

}  // namespace

TEST_CASE("region parsing") {
    Region r = Region::parse("-7,7,-1/3,1");
    CHECK(r.re_min == -7);
    CHECK(r.im_min == mpq_class(-1, 3));
    CHECK(r.to_string() == "-7,7,-1/3,1");
    CHECK_THROWS(Region::parse("1,0,0,1"));
    CHECK_THROWS(Region::parse("0,1,0"));
    CHECK_THROWS(Region::parse("0,1,0,x"));
}

TEST_CASE("net zero-pole counts") {
    CHECK(net_zero_pole_count(parse("z^2"), kUnit) == 2);
    CHECK(net_zero_pole_count(parse("1/z"), kUnit) == -1);
    CHECK(net_zero_pole_count(parse("z^2*exp(z)"), kUnit) == 2);
    CHECK(net_zero_pole_count(parse("(z - 1/2)^3/(z + 1/3)^2"), kUnit) == 1);
    CHECK(net_zero_pole_count(parse("z*(z - 3)/(z^2 - 4)"), kUnit) == 1);
    CHECK(net_zero_pole_count(parse("sin(z)"), Region::parse("-7,7,-1,1")) == 5);
    CHECK(net_zero_pole_count(parse("exp(z)"), kUnit) == 0);
}

TEST_CASE("multiplicity by winding") {
    mpq_class half(1, 2);
    CHECK(multiplicity_by_winding(parse("z^2"), SymConst(0), half) == 2);
    CHECK(multiplicity_by_winding(parse("z^3*exp(z)"), SymConst(0), half) == 3);
    CHECK(multiplicity_by_winding(parse("sin(z)"), SymConst::pi(), half) == 1);
    CHECK(multiplicity_by_winding(parse("1/sin(z)^2"), SymConst::pi(), half) == 2);
    CHECK(multiplicity_by_winding(parse("exp(z)"), SymConst(0), half) == 0);
    CHECK_THROWS_AS(multiplicity_by_winding(parse("z - 1/2"), SymConst(0), half), BoundaryEvent);
}

TEST_CASE("candidate points of the documented triples") {
    auto nine = locate_candidates(parse("sin(z) + sin(z)*exp(z^2)"), parse("sin(z) + sin(z)^2*exp(z^2)"),
                                  parse("sin(z)"), Region::parse("-7,7,-1,1"));
    CHECK(same_point_set(nine, pi_multiples(-2, 2)));
    for (std::size_t k = 0; k + 1 < nine.size(); ++k)
        CHECK(enclose(nine[k], 64).mid_double().real() < enclose(nine[k + 1], 64).mid_double().real());

    auto one = locate_candidates(parse("1/z + exp(z)"), parse("1/z - exp(z)/z"), parse("1/z"), kUnit);
    CHECK(same_point_set(one, {SymConst(0)}));

    auto none = locate_candidates(parse("1 + exp(z)"), parse("1 + 2*exp(z)"), parse("1"), kUnit);
    CHECK(none.empty());
}

TEST_CASE("non-snappable points stay approximate") {
    // zeros at +-sqrt(2)
    CandidateSearch s = search_candidates(Triple(parse("z^2 - 1"), parse("z^2 - 1"), parse("1")), Region::parse("-2,2,-1,1"));
    REQUIRE(s.candidates.size() == 2);
    for (const Candidate &c : s.candidates) {
        CHECK_FALSE(c.snapped);
        CHECK_FALSE(c.point.is_exact());
        CHECK(std::abs(std::abs(c.approx.real()) - std::sqrt(2.0)) < 1e-12);
    }
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(locate_candidates(parse("z"), parse("z"), parse("z"), kUnit), IdenticallyVanishing);
    CHECK_THROWS_AS(locate_candidates(parse("z + sin(z)^2 + cos(z)^2 - 1"), parse("2*z"), parse("z"), kUnit),
                    IdenticallyVanishing);
    CHECK_THROWS_AS(locate_candidates(parse("z"), parse("z^2"), parse("0"), kUnit), ExprError);
}

TEST_CASE("snapping") {
    Real x(256);
    mpfr_const_pi(x.get(), MPFR_RNDN);
    mpfr_mul_si(x.get(), x.get(), -3, MPFR_RNDN);
    mpfr_div_si(x.get(), x.get(), 4, MPFR_RNDN);
    auto s = snap_real(x);
    REQUIRE(s);
    CHECK(s->as_rational_multiple_of_pi() == mpq_class(-3, 4));
    mpfr_set_d(x.get(), 0.125, MPFR_RNDN);
    CHECK(snap_real(x)->as_rational()->re == mpq_class(1, 8));
    mpfr_set_ui(x.get(), 2, MPFR_RNDN);
    mpfr_sqrt(x.get(), x.get(), MPFR_RNDN);
    CHECK_FALSE(snap_real(x));
}

TEST_CASE("completeness on polynomials with known rational roots") {
    Rng rng(31);
    const Region r = Region::parse("-3,3,-3,3");
    for (int trial = 0; trial < 200; ++trial) {
        RootSet p = random_roots(rng, 3, 3, 3, 2), q = random_roots(rng, 3, 3, 3, 2);
        Expr one = Expr::integer(1);
        Expr f = one + product_of(p), g = one + product_of(q);
        RootSet all = p;
        for (const auto &kv : q) all[kv.first] = std::max(all[kv.first], kv.second);
        auto found = locate_candidates(f, g, one, r);
        CHECK_MESSAGE(same_point_set(found, points_of(all)), to_string(f), " ; ", to_string(g));
        if (trial % 20 == 0) CHECK(same_point_set(found, locate_candidates(g, f, one, r)));
    }
}

TEST_CASE("error estimate flags cancellation") {
    // (z + 1)^3 - (3 z^2 + 3 z + 1) is z^3, computed with heavy cancellation near 0
    Program p(parse("(z + 1)^3 - (3*z^2 + 3*z + 1)"));
    auto far = p.estimate({2, 1});
    CHECK(far.error < 1e-12 * std::abs(far.value));
    auto near = p.estimate({1e-5, 0});
    CHECK(near.error > 1e-3 * std::abs(near.value));
    CHECK(std::abs(near.value - p({1e-5, 0})) == 0);
}

TEST_CASE("multiple zero behind cancelling numerators in a wide region") {
    // f - alpha = -z^3/(3 (z - 3/2)^2), but its numerator is formed without cancelling alpha
    Expr alpha = parse("-5/3*(z - 2)^2/(z + 1)^2");
    Expr f = alpha + parse("-1/3*z^3/(z - 3/2)^2"), g = alpha + parse("-3*z/(z - 3/2)^2");
    CandidateSearch cs = search_candidates(Triple(f, g, alpha), Region::parse("-107,107,-107,107"));
    std::map<std::string, int> seen;
    for (const Candidate &c : cs.candidates) {
        CHECK(c.snapped);
        seen[c.point.to_string()] = c.multiplicity;
    }
    // at -1 both uncancelled numerators carry (z + 1)^4, plus alpha's denominator
    CHECK(seen == std::map<std::string, int>{{"-1", 10}, {"0", 4}, {"2", 2}});
}

TEST_CASE("swap invariance on corpus triples") {
    for (const CorpusEntry &e : corpus()) {
        auto a = locate_candidates(parse(e.f), parse(e.g), parse(e.alpha), e.region);
        auto b = locate_candidates(parse(e.g), parse(e.f), parse(e.alpha), e.region);
        CHECK_MESSAGE(same_point_set(a, b), e.id);
    }
}
