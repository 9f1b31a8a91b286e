#include "doctest.h"
#include "surfstab/surface.hpp"

using namespace surfstab;

TEST_CASE("disk surfaces validate with the right topology") {
    for (int n = 2; n <= 8; ++n) {
        MarkedSurface d = makeDisk(n);
        CHECK(d.eulerChar() == 1);
        CHECK(d.genus() == 0);
        CHECK(d.boundaryCircles() == 1);
        CHECK(d.markedCount() == n);
        CHECK(d.arcCount() == n - 1);
        CHECK(d.tight());
    }
}

TEST_CASE("annulus and punctured torus topology") {
    for (int p = 1; p <= 3; ++p)
        for (int q = 1; q <= 3; ++q) {
            MarkedSurface a = makeAnnulus(p, q, 0);
            CHECK(a.eulerChar() == 0);
            CHECK(a.genus() == 0);
            CHECK(a.boundaryCircles() == 2);
            CHECK(a.markedCount() == p + q);
            CHECK(a.arcCount() == p + q);
        }
    for (int n = 1; n <= 4; ++n) {
        MarkedSurface t = makePunctTorus(n, 0, 0);
        CHECK(t.eulerChar() == -1);
        CHECK(t.genus() == 1);
        CHECK(t.boundaryCircles() == 1);
        CHECK(t.markedCount() == n);
        CHECK(t.arcCount() == n + 1);
    }
}

TEST_CASE("fans cover every arc end exactly once") {
    for (MarkedSurface s :
         {makeDisk(4), makeAnnulus(2, 1, 0), makePunctTorus(2, 0, 0)}) {
        int ends = 0;
        for (int v = 0; v < s.vertexCount(); ++v) ends += s.fan(v).arcEndCount();
        CHECK(ends == 2 * s.arcCount());
        for (int a = 0; a < s.arcCount(); ++a) {
            CHECK(s.fanPos(ArcEnd{a, 0}) >= 1);
            CHECK(s.fanPos(ArcEnd{a, 1}) >= 1);
        }
    }
}

TEST_CASE("hole side reports NotFullyStopped") {
    SurfaceDescription d = diskDescription(2);
    d.holeNames.push_back("h1");
    CHECK_THROWS_AS(MarkedSurface::validate(d), SurfaceError);
    try {
        MarkedSurface::validate(d);
    } catch (const SurfaceError& e) {
        CHECK(e.code == SurfaceErrc::NotFullyStopped);
        CHECK(e.element == "h1");
    }
}

TEST_CASE("dangling arc is rejected") {
    SurfaceDescription d = diskDescription(3);
    // break one slot: traverse A1 forward twice
    for (auto& f : d.faces)
        for (auto& sd : f.sides)
            if (sd.kind == Side::Arc && sd.id == 0 && sd.rev) sd.rev = false;
    CHECK_THROWS_AS(MarkedSurface::validate(d), SurfaceError);
}

TEST_CASE("face with two unmarked sides is rejected as not full") {
    SurfaceDescription d;
    d.name = "bad";
    d.arcNames = {"A"};
    d.unmarkedNames = {"u1", "u2"};
    FaceDescription f1{"F1",
                       {Side{Side::Arc, 0, true}, Side{Side::Unmarked, 0, false},
                        Side{Side::Unmarked, 1, false}},
                       {}};
    FaceDescription f2{"F2", {Side{Side::Arc, 0, false}}, {}};
    d.faces = {f1, f2};
    CHECK_THROWS_AS(MarkedSurface::validate(d), SurfaceError);
}

TEST_CASE("internal face corner sums are checked") {
    // Delta_3 with the long arc added: triangle face must sum to 1
    SurfaceDescription d;
    d.name = "delta3full";
    d.arcNames = {"A", "B", "C"};
    d.unmarkedNames = {"u1", "u2", "u3"};
    auto arc = [](int id, bool rev) { return Side{Side::Arc, id, rev}; };
    auto unm = [](int id) { return Side{Side::Unmarked, id, false}; };
    d.faces.push_back({"F1", {arc(0, true), unm(0)}, {0, 0}});
    d.faces.push_back({"F2", {arc(1, true), unm(1)}, {0, 0}});
    d.faces.push_back({"F3", {arc(2, false), unm(2)}, {0, 0}});
    d.faces.push_back({"T", {arc(0, false), arc(1, false), arc(2, true)}, {0, 0, 1}});
    MarkedSurface s = MarkedSurface::validate(d);
    CHECK(s.eulerChar() == 1);
    CHECK_FALSE(s.tight());

    d.faces[3].corner = {0, 0, 0};
    CHECK_THROWS_AS(MarkedSurface::validate(d), SurfaceError);
}

TEST_CASE("canonical signatures detect isomorphism") {
    MarkedSurface d1 = makeDisk(4);
    SurfaceDescription relabeled = diskDescription(4);
    relabeled.arcNames = {"X", "Y", "Z"};
    std::swap(relabeled.faces[0], relabeled.faces[2]);
    MarkedSurface d2 = MarkedSurface::validate(relabeled);
    CHECK(d1.isomorphic(d2));
    CHECK_FALSE(d1.isomorphic(makeDisk(5)));
    CHECK_FALSE(makeAnnulus(1, 1, 0).isomorphic(makeAnnulus(1, 1, 2)));
    CHECK(makeAnnulus(1, 1, 0).isomorphic(makeAnnulus(1, 1, 0)));
}
