#include "doctest.h"
#include "surfstab/intersect.hpp"

#include <map>

using namespace surfstab;

namespace {
GradedCurve mk(const MarkedSurface& s, const std::string& w, long lift = 0) {
    return GradedCurve::make(s, parseWord(s, w), lift);
}
std::map<long, int> dims(const MarkedSurface& s, const GradedCurve& a,
                         const GradedCurve& b) {
    return homBasis(s, a, b).dim;
}
} // namespace

TEST_CASE("A2 disk morphism table") {
    MarkedSurface d3 = makeDisk(3);
    GradedCurve A = mk(d3, "A1"), B = mk(d3, "A2"), C = mk(d3, "A1 A2");

    CHECK(dims(d3, A, A) == std::map<long, int>{{0, 1}});
    CHECK(dims(d3, B, B) == std::map<long, int>{{0, 1}});
    CHECK(dims(d3, C, C) == std::map<long, int>{{0, 1}});

    CHECK(dims(d3, B, A) == std::map<long, int>{{0, 1}});
    CHECK(dims(d3, A, B).empty());
    CHECK(dims(d3, A, C) == std::map<long, int>{{0, 1}});
    CHECK(dims(d3, C, A).empty());
    CHECK(dims(d3, C, B) == std::map<long, int>{{1, 1}});
    CHECK(dims(d3, B, C).empty());

    // shift covariance: Hom^d(X, Y[k]) = Hom^{d+k}(X, Y)
    CHECK(dims(d3, C, B.shifted(1)) == std::map<long, int>{{0, 1}});
    CHECK(dims(d3, B.shifted(1), A) == std::map<long, int>{{1, 1}});
}

TEST_CASE("Kronecker annulus: two parallel degree-zero arrows") {
    MarkedSurface a = makeAnnulus(1, 1, 0);
    GradedCurve s1 = mk(a, "s1"), s2 = mk(a, "s2");
    CHECK(dims(a, s1, s2) == std::map<long, int>{{0, 2}});
    CHECK(dims(a, s2, s1).empty());
    CHECK(crossings(a, s1, s2).empty());
}

TEST_CASE("wrapping annulus intervals") {
    MarkedSurface a = makeAnnulus(1, 1, 0);
    GradedCurve I = mk(a, "s1 ~s2");        // wraps once, ends on outer circle
    GradedCurve L = mk(a, "s1 ~s2 s1 ~s2"); // wraps twice: one self-crossing

    CHECK(isEmbedded(a, I));
    auto sc = selfCrossings(a, L);
    REQUIRE(sc.size() == 1);
    long d = sc[0].degXtoY;
    CHECK(((d == 0) || (d == 1)));
    CHECK(dims(a, L, L) == std::map<long, int>{{0, 2}, {1, 2}});
}

TEST_CASE("annulus skyscraper circles") {
    MarkedSurface a = makeAnnulus(1, 1, 0);
    GradedCurve Lz = GradedCurve::make(a, parseWord(a, "circle s1 ~s2"), 0,
                                       {JordanBlock{Rat(2), 1}});
    GradedCurve Lw = GradedCurve::make(a, parseWord(a, "circle s1 ~s2"), 0,
                                       {JordanBlock{Rat(3), 1}});
    CHECK(dims(a, Lz, Lz) == std::map<long, int>{{0, 1}, {1, 1}});
    CHECK(dims(a, Lz, Lw).empty());
    GradedCurve J2 = GradedCurve::make(a, parseWord(a, "circle s1 ~s2"), 0,
                                       {JordanBlock{Rat(2), 2}});
    CHECK(dims(a, J2, J2) == std::map<long, int>{{0, 2}, {1, 2}});
    CHECK(dims(a, Lz, J2) == std::map<long, int>{{0, 1}, {1, 1}});
}

TEST_CASE("circle versus spanning arc on the annulus") {
    MarkedSurface a = makeAnnulus(1, 1, 0);
    GradedCurve core = GradedCurve::make(a, parseWord(a, "circle s1 ~s2"), 0);
    GradedCurve s1 = mk(a, "s1");
    auto c = crossings(a, core, s1);
    CHECK(c.size() == 1);
    // degree duality at the crossing
    auto c2 = crossings(a, s1, core);
    REQUIRE(c2.size() == 1);
    CHECK(c[0].degXtoY + c2[0].degXtoY == 1);
}

TEST_CASE("torus curve crossing counts follow the determinant") {
    MarkedSurface t = makePunctTorus(2, 0, 0);
    auto circleOf = [&](int p, int q) {
        std::string w = "circle";
        for (int i = 0; i < p; ++i) w += " a";
        for (int i = 0; i < q; ++i) w += " b";
        return GradedCurve::make(t, parseWord(t, w), 0);
    };
    GradedCurve ca = circleOf(1, 0), cb = circleOf(0, 1), cab = circleOf(1, 1);
    CHECK(crossings(t, ca, cb).size() == 1);
    CHECK(crossings(t, ca, cab).size() == 1);
    CHECK(crossings(t, cb, cab).size() == 1);
    GradedCurve c12 = circleOf(1, 2);
    CHECK(crossings(t, ca, c12).size() == 2);

    // defining arcs are disjoint; a (1,0)-interval at M1 and a (0,1)-interval
    // based at M2 must meet exactly once
    GradedCurve ia = mk(t, "a"), ib = mk(t, "b");
    CHECK(crossings(t, ia, ib).empty());
    GradedCurve jb = mk(t, "~E1 b E1");
    CHECK(crossings(t, ia, jb).size() == 1);
}

TEST_CASE("degree duality holds across a sample of pairs") {
    auto dualCheck = [](const MarkedSurface& s, const GradedCurve& X,
                        const GradedCurve& Y) {
        auto xy = crossings(s, X, Y);
        auto yx = crossings(s, Y, X);
        REQUIRE(xy.size() == yx.size());
        std::multiset<long> a, b;
        for (auto& c : xy) a.insert(c.degXtoY);
        for (auto& c : yx) b.insert(1 - c.degXtoY);
        CHECK(a == b);
    };
    MarkedSurface t = makePunctTorus(2, 0, 0);
    std::vector<GradedCurve> zoo = {
        mk(t, "a"), mk(t, "b"), mk(t, "E1"), mk(t, "a b"),
        GradedCurve::make(t, parseWord(t, "circle a"), 0),
        GradedCurve::make(t, parseWord(t, "circle a b"), 0),
        GradedCurve::make(t, parseWord(t, "circle a b b"), 0)};
    for (size_t i = 0; i < zoo.size(); ++i)
        for (size_t j = 0; j < zoo.size(); ++j)
            if (i != j) dualCheck(t, zoo[i], zoo[j]);

    MarkedSurface an = makeAnnulus(2, 1, 0);
    std::vector<GradedCurve> zoo2;
    for (const char* w : {"s1", "s2", "s3", "s1 ~s2", "s2 ~s3", "s1 ~s3",
                          "s1 ~s2 s3", "s2 ~s1", "circle s1 ~s2 s3 ~s1 s2 ~s3"}) {
        try {
            zoo2.push_back(mk(an, w));
        } catch (const CurveError&) {
        }
    }
    CHECK(zoo2.size() >= 6);
    for (size_t i = 0; i < zoo2.size(); ++i)
        for (size_t j = 0; j < zoo2.size(); ++j)
            if (i != j) dualCheck(an, zoo2[i], zoo2[j]);
}

TEST_CASE("Serre-like pairing for transverse contributions") {
    MarkedSurface t = makePunctTorus(2, 0, 0);
    GradedCurve ca = GradedCurve::make(t, parseWord(t, "circle a"), 0);
    GradedCurve cb = GradedCurve::make(t, parseWord(t, "circle b"), 0);
    auto ab = dims(t, ca, cb);
    auto ba = dims(t, cb, ca);
    for (auto& [d, n] : ab) CHECK(ba[1 - d] == n);
}

TEST_CASE("shift action moves all hom degrees") {
    // Hom^d(X, Y[k]) = Hom^{d+k}(X, Y)
    MarkedSurface d4 = makeDisk(4);
    GradedCurve X = mk(d4, "A1 A2"), Y = mk(d4, "A2 A3");
    auto base = dims(d4, X, Y);
    CHECK_FALSE(base.empty());
    for (long k : {-2L, 1L, 3L}) {
        auto sh = dims(d4, X, Y.shifted(k));
        std::map<long, int> want;
        for (auto& [d, n] : base) want[d - k] = n;
        CHECK(sh == want);
    }
}
