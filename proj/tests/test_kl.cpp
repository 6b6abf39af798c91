#include "doctest.h"
#include "iwasawa/kl.hpp"
#include "support/newton_fit.hpp"

using namespace iwasawa;

namespace {

// the even branches at p together with the quadratic-twist branches used
// throughout: omega^j (j even) and chi * omega^(1-j), chi the odd quadratic
// character of conductor 11 (p = 3) or 3 (p = 7)
std::vector<DirichletChar> primary_branches(long p) {
    DirichletChar om = DirichletChar::omega_like(p);
    DirichletChar quad = p == 3 ? DirichletChar::from_conrey(11, 10)
                                : DirichletChar::from_conrey(3, 2);
    std::vector<DirichletChar> v;
    for (long j = 0; j < p - 1; j += 2) {
        v.push_back(om.pow(j).primitive());
        v.push_back((quad * om.pow(1 - j)).primitive());
    }
    return v;
}

}  // namespace

TEST_CASE("trivial branch: pole numerator pins") {
    for (long p : {3L, 7L}) {
        KLBranch b = kl_series(DirichletChar(1), p, 24, 12);
        CHECK(b.pole);
        CHECK(b.series.D() == 24);
        // N(0) = -((p-1)/p) log(1+p), the residue of the pole in the s-chart
        Zp expected = log_1unit(Zp(p, 16, 1 + p)).mul_ratio(-(p - 1), p);
        CHECK(Zp::agree_exponent(b.series.coeff(0), expected) >= 12);
        SeriesInvariants inv = invariants(b.series);
        CHECK(inv.certified);
        CHECK(inv.mu == 0);
        CHECK(inv.lambda == 0);
    }
    // N(u-1) = (u-1) L_p(0, 1) and L_p(0, 1) = 1/3 exactly at p = 3
    KLBranch b3 = kl_series(DirichletChar(1), 3, 24, 12);
    Zp n3 = evaluate(b3.series, Zp(3, 12, 3));
    CHECK(Zp::agree_exponent(n3, Zp::one(3, 12)) >= 12);
}

TEST_CASE("interpolation contract and invariants across the primary branches") {
    for (long p : {3L, 7L}) {
        for (const DirichletChar& eta : primary_branches(p)) {
            KLBranch b = kl_series(eta, p, 24, 12, true);  // throws if the contract fails
            CHECK(b.p == p);
            CHECK(b.pole == eta.is_trivial());
            CHECK(b.series.D() == 24);
            CHECK(b.series.is_integral());
            SeriesInvariants inv = invariants(b.series);
            CHECK(inv.certified);
            CHECK(inv.mu == 0);
        }
    }
}

TEST_CASE("interpolated values match the Euler-corrected exact L-values") {
    DirichletChar om2 = DirichletChar::omega_like(7).pow(2);
    KLBranch b = kl_series(om2, 7, 24, 12, false);
    Zp u = Zp(7, 12, 8);
    for (long k = 1; k <= 5; ++k) {
        Zp x = pow_zp(u, k) - Zp::one(7, 12);
        CHECK(Zp::agree_exponent(evaluate(b.series, x), lp_value_tame(om2, k, 7, 12)) >= 12);
    }
    // L_p(-1, omega^2) = zeta(-1)(1 - 7) = 1/2
    Zp x2 = pow_zp(u, 2) - Zp::one(7, 12);
    CHECK(Zp::agree_exponent(evaluate(b.series, x2), Zp::from_ratio(7, 12, 1, 2)) >= 12);
}

TEST_CASE("exceptional zeros at s = 0 force lambda >= 1") {
    struct Case { long p; DirichletChar eta; };
    std::vector<Case> cases{
        {7, (DirichletChar::from_conrey(3, 2) * DirichletChar::omega_like(7)).primitive()},
        {3, (DirichletChar::from_conrey(11, 10) * DirichletChar::omega_like(3)).primitive()},
    };
    for (const Case& c : cases) {
        KLBranch b = kl_series(c.eta, c.p, 24, 12);
        // chi(p) = 1, so the Euler factor kills L_p(0, eta): G(u - 1) = 0
        Zp at_zero = evaluate(b.series, Zp(c.p, 12, c.p));
        CHECK(at_zero.valuation() >= 12);
        SeriesInvariants inv = invariants(b.series);
        CHECK(inv.certified);
        CHECK(inv.mu == 0);
        CHECK(inv.lambda >= 1);
    }
}

TEST_CASE("newton interpolation refit agrees coefficientwise") {
    struct Case { long p; DirichletChar eta; };
    std::vector<Case> cases{
        {3, DirichletChar(1)},
        {3, (DirichletChar::from_conrey(11, 10) * DirichletChar::omega_like(3)).primitive()},
        {7, DirichletChar::omega_like(7).pow(2)},
        {7, (DirichletChar::from_conrey(3, 2) * DirichletChar::omega_like(7)).primitive()},
    };
    for (const Case& c : cases) {
        KLBranch b = kl_series(c.eta, c.p, 24, 12, false);
        IwasawaSeries<Zp> fit = testsupport::newton_branch_fit(c.eta, c.p, 24, 12);
        REQUIRE(fit.D() == 24);
        for (long i = 0; i < 24; ++i) {
            long budget = std::min({12L, fit.coeff(i).prec(), 24 - i});
            if (budget < 1) continue;
            CHECK(Zp::agree_exponent(b.series.coeff(i), fit.coeff(i)) >= budget);
        }
    }
}

TEST_CASE("ring-valued construction matches the Z_p pipeline on a tame branch") {
    DirichletChar eta =
        (DirichletChar::from_conrey(11, 10) * DirichletChar::omega_like(3)).primitive();
    long W = kl_working_prec(3, 16, 10, 2);
    RingPtr R = CycRing::make(3, 1, 1, W);
    IwasawaSeries<CycElem> rg = kl_series_in_ring(eta, R, 16, 10, true);
    KLBranch zg = kl_series(eta, 3, 16, 10, false);
    REQUIRE(rg.D() == 16);
    for (long i = 0; i < 16; ++i)
        CHECK(CycElem::agree_exponent(rg.coeff(i), CycElem::from_zp(R, zg.series.coeff(i))) >= 10);
}

TEST_CASE("ring-materialized L-values match the Z_p embedding") {
    DirichletChar eta =
        (DirichletChar::from_conrey(11, 10) * DirichletChar::omega_like(3)).primitive();
    RingPtr R = CycRing::make(3, 1, 1, 40);
    for (long n = 1; n <= 3; ++n) {
        CycElem a = lp_value_in_ring(eta, n, R, 10);
        CycElem b = CycElem::from_zp(R, lp_value_tame(eta, n, 3, 10));
        CHECK(CycElem::agree_exponent(a, b) >= 10);
    }
}

TEST_CASE("wild twist check at conductor 9") {
    DirichletChar psi = DirichletChar::from_conrey(9, 4);
    REQUIRE(psi.order() == 3);
    REQUIRE(psi.conductor() == 9);
    REQUIRE(psi.is_wild_at(3));
    DirichletChar eta =
        (DirichletChar::from_conrey(11, 10) * DirichletChar::omega_like(3)).primitive();
    TwistCheck tw = kl_twist_check(eta, psi, 3, 24, 12);
    CHECK(tw.required == 8);
    CHECK(tw.agree >= tw.required);
    CHECK(tw.pass);
}

TEST_CASE("rejections") {
    // odd character: the branch vanishes identically
    CHECK_THROWS_AS(kl_series(DirichletChar::from_conrey(3, 2), 7), std::invalid_argument);
    // order 3 does not divide 5 - 1
    CHECK_THROWS_AS(kl_series(DirichletChar::from_conrey(7, 2), 5), std::invalid_argument);
    // wild character: order 3 does not divide 3 - 1
    CHECK_THROWS_AS(kl_series(DirichletChar::from_conrey(9, 4), 3), std::invalid_argument);
    CHECK_THROWS_AS(kl_series(DirichletChar(1), 3, 3, 12), std::invalid_argument);

    RingPtr shallow = CycRing::make(3, 1, 1, 32);
    CHECK_THROWS_AS(kl_series_in_ring(DirichletChar(1), shallow), std::invalid_argument);
    DirichletChar eta =
        (DirichletChar::from_conrey(11, 10) * DirichletChar::omega_like(3)).primitive();
    CHECK_THROWS_AS(kl_series_in_ring(eta, shallow), std::invalid_argument);

    DirichletChar psi = DirichletChar::from_conrey(9, 4);
    CHECK_THROWS_AS(kl_twist_check(eta, DirichletChar::from_conrey(3, 2), 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(kl_twist_check(DirichletChar(1), psi, 3), std::invalid_argument);
}
