#include "doctest.h"
#include "surfstab/stab.hpp"

using namespace surfstab;

namespace {

SurfacePtr disk3() { return std::make_shared<MarkedSurface>(makeDisk(3)); }

GradedCurve mk(const MarkedSurface& s, const std::string& w, long lift) {
    return GradedCurve::make(s, parseWord(s, w), lift);
}

// Heart of the disk worked example at parameter m: simples are the second
// chain arc at lift 1 and the long arc at lift 1; basis charges chosen so
// the reported stable charges are 1/3 + i/m, 2/3 - i/m and 1.
StabilityCondition sigmaM(SurfacePtr d3, long m) {
    CentralCharge Z;
    Z.onBasis = {QC{Rat(2, 3), Rat(-1, m)}, QC{Rat(-1, 3), Rat(-1, m)}};
    std::vector<GradedCurve> simples = {mk(*d3, "A2", 1), mk(*d3, "A1 A2", 1)};
    return StabilityCondition::build(d3, Z, simples, 6, 8);
}

StabilityCondition sigmaInf(SurfacePtr d3) {
    CentralCharge Z;
    Z.onBasis = {QC{Rat(2, 3), Rat(0)}, QC{Rat(-1, 3), Rat(0)}};
    std::vector<GradedCurve> simples = {mk(*d3, "A1", 1), mk(*d3, "A2", 2)};
    return StabilityCondition::build(d3, Z, simples, 6, 8);
}

bool hasChargeUpToSign(const StabilityCondition& sc, const QC& z) {
    for (auto& p : sc.stables()) {
        QC q = sc.chargeOf(p.curve);
        if (q == z || q == -z) return true;
    }
    return false;
}

} // namespace

TEST_CASE("disk worked example: generic members have three stable objects") {
    auto d3 = disk3();
    for (long m : {1L, 2L, 4L, 8L}) {
        StabilityCondition sc = sigmaM(d3, m);
        CHECK(sc.stables().size() == 3);
        CHECK(hasChargeUpToSign(sc, QC{Rat(1, 3), Rat(1, m)}));
        CHECK(hasChargeUpToSign(sc, QC{Rat(2, 3), Rat(-1, m)}));
        CHECK(hasChargeUpToSign(sc, QC{Rat(1), Rat(0)}));
        auto rep = sc.checkStability();
        CHECK(rep.ok);
        for (auto& p : sc.stables()) {
            auto r = sc.cosiDecompose(p.curve);
            CHECK(r.stable);
            CHECK(r.chain.length() == 1);
        }
    }
}

TEST_CASE("disk worked example: the degenerate limit") {
    auto d3 = disk3();
    StabilityCondition sc = sigmaInf(d3);
    CHECK(sc.stables().size() == 2);
    GradedCurve C1 = mk(*d3, "A1 A2", 1);
    auto r = sc.cosiDecompose(C1);
    CHECK_FALSE(r.stable);
    CHECK(r.chain.length() == 2);
    auto hn = sc.hnFiltration(C1);
    REQUIRE(hn.size() == 1); // single phase: strictly semistable
    CHECK(hn[0].pieces.size() == 2);
    CHECK(hn[0].charge == QC{Rat(-1), Rat(0)});
    GradedCurve a1 = mk(*d3, "A1", 0), a2 = mk(*d3, "A2", 1);
    std::vector<K0Class> xi = {classOf(*d3, a1), classOf(*d3, a2)};
    CHECK_FALSE(sc.isGeneric(xi));
    StabilityCondition s1 = sigmaM(d3, 1);
    CHECK(s1.isGeneric(xi));
}

TEST_CASE("shift equivariance of the decomposition") {
    auto d3 = disk3();
    StabilityCondition sc = sigmaInf(d3);
    GradedCurve C1 = mk(*d3, "A1 A2", 1);
    auto r0 = sc.cosiDecompose(C1);
    auto r3 = sc.cosiDecompose(C1.shifted(3));
    REQUIRE(r0.chain.length() == r3.chain.length());
    for (int i = 0; i < r0.chain.length(); ++i) {
        CHECK(r3.chain.pieces[i].curve.lift() ==
              r0.chain.pieces[i].curve.lift() + 3);
        CHECK(r3.chain.pieces[i].phase == r0.chain.pieces[i].phase.shifted(3));
    }
}

namespace {

SurfacePtr annulus0() { return std::make_shared<MarkedSurface>(makeAnnulus(1, 1, 0)); }

// Kronecker heart on the annulus: simples s1 at lift 0 and s2 at lift -1.
StabilityCondition annulusHeart(SurfacePtr a, QC z1, QC z2basis) {
    CentralCharge Z;
    Z.onBasis = {z1, z2basis};
    std::vector<GradedCurve> simples = {mk(*a, "s1", 0), mk(*a, "s2", -1)};
    return StabilityCondition::build(a, Z, simples, 8, 8);
}

} // namespace

TEST_CASE("annulus geometric chamber: skyscrapers stable, double cover semistable") {
    auto a = annulus0();
    // phi(s2[-1]) = 1/2 < phi(s1[0]) = 1: the circle family is stable
    StabilityCondition sc = annulusHeart(a, QC{Rat(-1), Rat(0)}, QC{Rat(0), Rat(-1)});

    GradedCurve core = GradedCurve::make(*a, parseWord(*a, "circle s1 ~s2"), 0);
    CHECK(sc.isStableSupport(core.word()));

    GradedCurve I = mk(*a, "s1 ~s2", 0);
    CHECK(sc.isStableSupport(I.word()));

    GradedCurve L = mk(*a, "s1 ~s2 s1 ~s2", 0);
    CHECK_FALSE(sc.isStableSupport(L.word()));
    auto r = sc.cosiDecompose(L);
    CHECK(r.chain.length() == 2);
    CHECK(r.chain.pieces[0].curve.word() == I.word());
    CHECK(r.chain.pieces[1].curve.word() == I.word());
    auto hn = sc.hnFiltration(L);
    CHECK(hn.size() == 1);

    GradedCurve J2 = GradedCurve::make(*a, parseWord(*a, "circle s1 ~s2"), 0,
                                       {JordanBlock{Rat(2), 2}});
    auto rr = sc.higherRankCircleDecompose(J2);
    CHECK(rr.chain.length() == 2);
    for (auto& p : rr.chain.pieces) {
        CHECK(p.curve.isCircle());
        CHECK(p.curve.localSystem().size() == 1);
        CHECK(p.curve.localSystem()[0].eigenvalue == Rat(2));
    }
    CHECK(sc.checkStability().ok);
}

TEST_CASE("annulus algebraic chamber: two stable arcs and wrapped chains") {
    auto a = annulus0();
    // phi(s1[0]) = 1/2 < phi(s2[-1]) = 1: only the two arcs are stable
    StabilityCondition sc = annulusHeart(a, QC{Rat(0), Rat(1)}, QC{Rat(1), Rat(0)});
    CHECK(sc.stables().size() == 2);

    GradedCurve core = GradedCurve::make(*a, parseWord(*a, "circle s1 ~s2"), 0);
    CHECK_FALSE(sc.isStableSupport(core.word()));
    auto rc = sc.cosiDecompose(core);
    CHECK(rc.chain.circle);
    CHECK(rc.chain.length() == 2);

    GradedCurve W = mk(*a, "s1 ~s2 s1", 0);
    auto r = sc.cosiDecompose(W);
    REQUIRE(r.chain.length() == 3);
    CHECK(r.chain.pieces[0].curve.word() == parseWord(*a, "s1"));
    CHECK(r.chain.pieces[1].curve.word() == parseWord(*a, "s2"));
    CHECK(r.chain.pieces[2].curve.word() == parseWord(*a, "s1"));
    CHECK_FALSE(simpleCosiCheck(*a, r.chain));

    GradedCurve J2 = GradedCurve::make(*a, parseWord(*a, "circle s1 ~s2"), 0,
                                       {JordanBlock{Rat(2), 2}});
    auto rr = sc.higherRankCircleDecompose(J2);
    CHECK(rr.chain.length() == 4);
    CHECK(sc.checkStability().ok);
}

TEST_CASE("noncrossing check is empty on decomposition outputs") {
    auto a = annulus0();
    StabilityCondition sc = annulusHeart(a, QC{Rat(0), Rat(1)}, QC{Rat(1), Rat(0)});
    GradedCurve W = mk(*a, "s1 ~s2 s1", 0);
    GradedCurve core = GradedCurve::make(*a, parseWord(*a, "circle s1 ~s2"), 0);
    auto c1 = sc.cosiDecompose(W).chain;
    auto c2 = sc.cosiDecompose(core).chain;
    CHECK(noncrossingCheck(*a, c1, c1).empty());
    CHECK(noncrossingCheck(*a, c1, c2).empty());
    CHECK(noncrossingCheck(*a, c2, c2).empty());
}

TEST_CASE("envelope type of simple chains") {
    auto d3 = disk3();
    StabilityCondition sc = sigmaInf(d3);
    GradedCurve C1 = mk(*d3, "A1 A2", 1);
    auto r = sc.cosiDecompose(C1);
    CHECK(simpleCosiCheck(*d3, r.chain));
    EnvelopeType t = hnEnvelopeType(*d3, r.chain);
    CHECK_FALSE(t.circle);
    CHECK(t.N == 2);
    CHECK(t.left + t.right == 1);
}

TEST_CASE("support constant and phase gap") {
    auto d3 = disk3();
    StabilityCondition sc = sigmaM(d3, 1);
    CHECK(sc.supportConstantSq() > 0);
    CHECK(sc.supportConstantLowerBound() > 0);
    auto gap = sc.phaseGap();
    CHECK(gap.has_value());
}

TEST_CASE("heart validation rejects bad input") {
    auto d3 = disk3();
    CentralCharge Z;
    Z.onBasis = {QC{Rat(2, 3), Rat(0)}, QC{Rat(-1, 3), Rat(0)}};
    CHECK_THROWS_AS(StabilityCondition::build(d3, Z, {mk(*d3, "A1", 1)}, 5, 6),
                    StabError);
    CentralCharge Zbad;
    Zbad.onBasis = {QC{Rat(-2, 3), Rat(0)}, QC{Rat(-1, 3), Rat(0)}};
    CHECK_THROWS_AS(StabilityCondition::build(
                        d3, Zbad, {mk(*d3, "A1", 1), mk(*d3, "A2", 2)}, 5, 6),
                    StabError);
    CentralCharge Z2;
    Z2.onBasis = {QC{Rat(-1, 2), Rat(1)}, QC{Rat(-1, 2), Rat(1)}};
    CHECK_THROWS_AS(StabilityCondition::build(
                        d3, Z2, {mk(*d3, "A1", 0), mk(*d3, "A2", 0)}, 5, 6),
                    StabError);
}
