#include "surfstab/intersect.hpp"
#include <algorithm>
#include <cassert>
#include <set>

namespace surfstab {

namespace {

struct View {
    const MarkedSurface* s;
    const CurveWord* w;
    const std::vector<long>* g;
    int n;
    bool circle;

    View(const MarkedSurface& ms, const GradedCurve& c)
        : s(&ms), w(&c.word()), g(&c.levels()), n(c.word().size()),
          circle(c.isCircle()) {}

    int mod(int i) const { return ((i % n) + n) % n; }
    WalkStep step(int i) const { return w->steps[mod(i)]; }
    long lvl(int i) const { return (*g)[mod(i)]; }
    bool validIndex(int i) const { return circle || (i >= 0 && i < n); }
};

// Continuation of a strand beyond one end of a run. 'p' is the fan position
// of the shared strip at the divergence vertex; the strand either anchors
// (curve end) or exits toward fan position 'target'.
struct Cont {
    bool anchor = true;
    int vertex = -1;
    int p = -1;
    int target = -1;
    long levelRun = 0;    // level on the run-adjacent step
    long levelBeyond = 0; // level on the exit step (if !anchor)
    int stepRun = -1;     // original index of the run-adjacent step
};

// Continuation beyond the given side of step i. side=+1: beyond the head,
// side=-1: beyond the tail (walking backward).
Cont continuation(const View& v, int i, int side) {
    Cont c;
    WalkStep st = v.step(i);
    ArcEnd e = side > 0 ? st.headEnd() : st.tailEnd();
    c.vertex = v.s->vertexOfEnd(e);
    c.p = v.s->fanPos(e);
    c.levelRun = v.lvl(i);
    c.stepRun = v.mod(i);
    int j = i + side;
    if (!v.validIndex(j)) return c; // anchor
    WalkStep nx = v.step(j);
    ArcEnd x = side > 0 ? nx.tailEnd() : nx.headEnd();
    c.anchor = false;
    c.target = v.s->fanPos(x);
    c.levelBeyond = v.lvl(j);
    return c;
}

// key order at a divergence: +x strands have larger keys. anchor = 0,
// turn to t: sign(t-p)/|t-p|. Returns +1 if a > b, -1 if a < b, 0 tie.
int keyCmp(const Cont& a, const Cont& b) {
    auto key = [](const Cont& c) -> std::pair<long, long> {
        if (c.anchor) return {0, 1};
        long d = c.target - c.p;
        return d > 0 ? std::pair<long, long>{1, d} : std::pair<long, long>{-1, -d};
    };
    auto [na, da] = key(a);
    auto [nb, db] = key(b);
    long lhs = na * db, rhs = nb * da;
    if (lhs > rhs) return 1;
    if (lhs < rhs) return -1;
    return 0;
}

struct RunDesc {
    int ix, iy, len, sigma;
};

// Degree of the X -> Y generator at a run crossing, localized at the given
// end configuration (cx = X continuation, cy = Y continuation).
long runCrossingDegree(const MarkedSurface& s, const Cont& cx, const Cont& cy) {
    int v = cx.vertex;
    int p = cx.p;
    if (cx.anchor || cy.anchor) {
        // turner sweeps across the co-strip strand of the anchored curve
        const Cont& turner = cx.anchor ? cy : cx;
        bool up = turner.target > p;
        long degTurnerToOther =
            turner.levelRun - (cx.anchor ? cx.levelRun : cy.levelRun) + (up ? 1 : 0);
        return cx.anchor ? 1 - degTurnerToOther : degTurnerToOther;
    }
    bool sameSide = (cx.target > p) == (cy.target > p);
    if (!sameSide) {
        // co-strip swap; X's corner crosses Y's strand
        bool up = cx.target > p;
        return cx.levelRun - cy.levelRun + (up ? 1 : 0);
    }
    // same side: the further-target strand sweeps over the nearer one's leg
    bool up = cx.target > p;
    bool xFurther = std::abs(cx.target - p) > std::abs(cy.target - p);
    const Cont& far = xFurther ? cx : cy;
    const Cont& near = xFurther ? cy : cx;
    long degFarToNear;
    if (up)
        degFarToNear = far.levelRun - near.levelBeyond + 1 - s.wedgeSum(v, p, near.target);
    else
        degFarToNear = far.levelRun - near.levelBeyond + s.wedgeSum(v, near.target, p);
    return xFurther ? degFarToNear : 1 - degFarToNear;
}

// Legs of a visit for the vertex-crossing pass.
struct Visit {
    int vertex;
    int pIn = -1, pOut = -1; // fan positions; -1 = absent (curve end)
    long gIn = 0, gOut = 0;
    int stepIn = -1; // arriving step (metadata)
};

std::vector<Visit> visitsOf(const View& v) {
    std::vector<Visit> out;
    int turns = v.circle ? v.n : v.n - 1;
    for (int i = 0; i < turns; ++i) {
        Visit t;
        ArcEnd e1 = v.step(i).headEnd();
        ArcEnd e2 = v.step(i + 1).tailEnd();
        t.vertex = v.s->vertexOfEnd(e1);
        t.pIn = v.s->fanPos(e1);
        t.pOut = v.s->fanPos(e2);
        t.gIn = v.lvl(i);
        t.gOut = v.lvl(i + 1);
        t.stepIn = i;
        out.push_back(t);
    }
    if (!v.circle) {
        Visit front;
        ArcEnd e = v.step(0).tailEnd();
        front.vertex = v.s->vertexOfEnd(e);
        front.pOut = v.s->fanPos(e);
        front.gOut = v.lvl(0);
        front.stepIn = -1;
        out.push_back(front);
        Visit back;
        ArcEnd e2 = v.step(v.n - 1).headEnd();
        back.vertex = v.s->vertexOfEnd(e2);
        back.pIn = v.s->fanPos(e2);
        back.gIn = v.lvl(v.n - 1);
        back.stepIn = v.n - 1;
        out.push_back(back);
    }
    return out;
}

// Crossing between two visits with disjoint strips; nullopt if none.
std::optional<Crossing> visitCrossing(const MarkedSurface& s, const Visit& a,
                                      const Visit& b) {
    if (a.vertex != b.vertex) return std::nullopt;
    auto strips = [](const Visit& t) {
        std::vector<int> v;
        if (t.pIn >= 0) v.push_back(t.pIn);
        if (t.pOut >= 0) v.push_back(t.pOut);
        return v;
    };
    auto sa = strips(a), sb = strips(b);
    for (int x : sa)
        for (int y : sb)
            if (x == y) return std::nullopt; // handled by run analysis

    auto inside = [](int q, const std::vector<int>& span) {
        if (span.size() < 2) return false;
        int lo = std::min(span[0], span[1]), hi = std::max(span[0], span[1]);
        return q > lo && q < hi;
    };

    // legs of b inside span of a
    int insideCount = 0;
    int legStrip = -1;
    long legLevel = 0;
    if (b.pIn >= 0 && inside(b.pIn, sa)) {
        ++insideCount;
        legStrip = b.pIn;
        legLevel = b.gIn;
    }
    if (b.pOut >= 0 && inside(b.pOut, sa)) {
        ++insideCount;
        legStrip = b.pOut;
        legLevel = b.gOut;
    }
    bool anchoredB = (b.pIn < 0 || b.pOut < 0); // end visit: leg reaches boundary
    if (sa.size() == 2 && insideCount == 1 && (!anchoredB || true)) {
        // a's connector crosses b's leg
        bool up = a.pOut > a.pIn;
        long d;
        if (up)
            d = a.gIn - legLevel + 1 - s.wedgeSum(a.vertex, a.pIn, legStrip);
        else
            d = a.gIn - legLevel + s.wedgeSum(a.vertex, legStrip, a.pIn);
        Crossing c;
        c.degXtoY = d;
        c.vertex = a.vertex;
        c.stepX = a.stepIn;
        c.stepY = b.stepIn;
        return c;
    }
    if (sa.size() == 2 && insideCount == 2) return std::nullopt; // nested
    // maybe a's leg lies inside b's span
    if (sb.size() == 2) {
        int cnt = 0;
        int aStrip = -1;
        long aLevel = 0;
        if (a.pIn >= 0 && inside(a.pIn, sb)) {
            ++cnt;
            aStrip = a.pIn;
            aLevel = a.gIn;
        }
        if (a.pOut >= 0 && inside(a.pOut, sb)) {
            ++cnt;
            aStrip = a.pOut;
            aLevel = a.gOut;
        }
        if (cnt == 1) {
            bool up = b.pOut > b.pIn;
            long dYtoX;
            if (up)
                dYtoX = b.gIn - aLevel + 1 - s.wedgeSum(b.vertex, b.pIn, aStrip);
            else
                dYtoX = b.gIn - aLevel + s.wedgeSum(b.vertex, aStrip, b.pIn);
            Crossing c;
            c.degXtoY = 1 - dYtoX;
            c.vertex = b.vertex;
            c.stepX = a.stepIn;
            c.stepY = b.stepIn;
            return c;
        }
    }
    return std::nullopt;
}

bool cellMatch(const View& X, const View& Y, int i, int j, int sigma, bool self) {
    if (!X.validIndex(i) || !Y.validIndex(j)) return false;
    if (self && sigma > 0 && X.mod(i) == Y.mod(j)) return false;
    WalkStep a = X.step(i), b = Y.step(j);
    return sigma > 0 ? a == b : a == b.reversed();
}

std::vector<Crossing> allCrossings(const MarkedSurface& s, const GradedCurve& Xc,
                                   const GradedCurve& Yc, bool self) {
    View X(s, Xc), Y(s, self ? Xc : Yc);
    std::vector<Crossing> out;

    // ---- vertex-crossings between strip-disjoint visit pairs ----
    auto va = visitsOf(X);
    auto vb = self ? va : visitsOf(Y);
    for (size_t i = 0; i < va.size(); ++i) {
        size_t j0 = self ? i + 1 : 0;
        for (size_t j = j0; j < vb.size(); ++j) {
            if (auto c = visitCrossing(s, va[i], vb[j])) out.push_back(*c);
        }
    }

    // ---- run crossings ----
    std::set<std::tuple<int, int, int>> seen; // normalized run starts
    int cap = X.n * Y.n * 2 + 4;
    for (int sigma : {+1, -1}) {
        for (int i0 = 0; i0 < X.n; ++i0) {
            for (int j0 = 0; j0 < Y.n; ++j0) {
                if (!cellMatch(X, Y, i0, j0, sigma, self)) continue;
                // must be a run start: predecessor cell absent
                if (cellMatch(X, Y, i0 - 1, j0 - sigma, sigma, self)) continue;
                int len = 1;
                while (len < cap && cellMatch(X, Y, i0 + len, j0 + sigma * len, sigma, self))
                    ++len;
                if (len >= cap) continue; // fully periodic overlap: parallel
                // normalize self-runs: the swapped copy is the same strand pair
                if (self) {
                    int si, sj;
                    if (sigma > 0) {
                        si = Y.mod(j0);
                        sj = X.mod(i0);
                    } else {
                        si = Y.mod(j0 - (len - 1));
                        sj = X.mod(i0 + (len - 1));
                    }
                    auto key = std::min(std::tuple<int, int, int>{i0, j0, sigma},
                                        std::tuple<int, int, int>{si, sj, sigma});
                    if (!seen.insert(key).second) continue;
                }

                // continuations at the two run ends
                Cont cxA = continuation(X, i0, -1);
                Cont cxW = continuation(X, i0 + len - 1, +1);
                Cont cyA, cyW;
                if (sigma > 0) {
                    cyA = continuation(Y, j0, -1);
                    cyW = continuation(Y, j0 + len - 1, +1);
                } else {
                    cyA = continuation(Y, j0, +1);
                    cyW = continuation(Y, j0 - (len - 1), -1);
                }
                assert(cxA.vertex == cyA.vertex && cxA.p == cyA.p);
                assert(cxW.vertex == cyW.vertex && cxW.p == cyW.p);
                int sA = keyCmp(cxA, cyA);
                int sW = keyCmp(cxW, cyW);
                if (sA == 0 || sW == 0) continue;      // anchored pair: free
                if (sA != sW) continue;                 // consistent: no crossing
                Crossing c;
                c.degXtoY = runCrossingDegree(s, cxW, cyW);
                c.vertex = cxW.vertex;
                c.stepX = cxW.stepRun;
                c.stepY = cyW.stepRun;
                out.push_back(c);
            }
        }
    }
    return out;
}

} // namespace

std::vector<Crossing> crossings(const MarkedSurface& s, const GradedCurve& X,
                                const GradedCurve& Y) {
    if (X.word() == Y.word()) return {}; // coincident supports are parallel
    return allCrossings(s, X, Y, false);
}

std::vector<Crossing> selfCrossings(const MarkedSurface& s, const GradedCurve& X) {
    return allCrossings(s, X, X, true);
}

bool isEmbedded(const MarkedSurface& s, const GradedCurve& X) {
    return selfCrossings(s, X).empty();
}

namespace {

// End of an interval curve together with a walk leading away from it.
struct EndView {
    std::vector<WalkStep> walk;
    std::vector<long> lvl;
    bool back;
};

EndView endView(const GradedCurve& c, bool back) {
    EndView v;
    v.back = back;
    int n = c.word().size();
    if (back) {
        for (int t = n - 1; t >= 0; --t) {
            v.walk.push_back(c.word().steps[t].reversed());
            v.lvl.push_back(c.levels()[t]);
        }
    } else {
        v.walk = c.word().steps;
        v.lvl = c.levels();
    }
    return v;
}

// Depth comparison of two interval ends arriving on the same strip: returns
// +1 if end X sits on the +x side of end Y at the end strip, -1 otherwise,
// 0 if the curves coincide entirely (caller excludes).
int endDepthCmp(const MarkedSurface& s, const EndView& ex, const EndView& ey) {
    size_t T = 0;
    while (T < ex.walk.size() && T < ey.walk.size() && ex.walk[T] == ey.walk[T]) ++T;
    Cont cx, cy;
    if (T == ex.walk.size() && T == ey.walk.size()) return 0;
    // divergence at the head of step T-1 (both shared), continuations = step T
    auto mk = [&](const EndView& v, size_t t) {
        Cont c;
        WalkStep prev = v.walk[t - 1];
        ArcEnd e = prev.headEnd();
        c.vertex = s.vertexOfEnd(e);
        c.p = s.fanPos(e);
        if (t < v.walk.size()) {
            c.anchor = false;
            c.target = s.fanPos(v.walk[t].tailEnd());
        }
        return c;
    };
    assert(T >= 1); // same strip means arriving steps coincide
    cx = mk(ex, T);
    cy = mk(ey, T);
    int sDiv = keyCmp(cx, cy);
    assert(sDiv != 0);
    return -sDiv; // transport back along the shared run flips the side
}

} // namespace

std::vector<BoundaryGen> boundaryGens(const MarkedSurface& s, const GradedCurve& X,
                                      const GradedCurve& Y) {
    std::vector<BoundaryGen> out;
    if (X.isCircle() || Y.isCircle()) return out;
    if (X.word() == Y.word()) return out; // coincident handled separately

    struct End {
        bool back;
        int vertex, pos;
        long level;
    };
    auto endsOf = [&](const GradedCurve& c) {
        std::vector<End> e;
        ArcEnd f = c.word().steps.front().tailEnd();
        e.push_back({false, s.vertexOfEnd(f), s.fanPos(f), c.levels().front()});
        ArcEnd b = c.word().steps.back().headEnd();
        e.push_back({true, s.vertexOfEnd(b), s.fanPos(b), c.levels().back()});
        return e;
    };
    for (const End& ex : endsOf(X)) {
        for (const End& ey : endsOf(Y)) {
            if (ex.vertex != ey.vertex) continue;
            int cmp;
            if (ex.pos != ey.pos)
                cmp = ex.pos > ey.pos ? 1 : -1;
            else
                cmp = endDepthCmp(s, endView(X, ex.back), endView(Y, ey.back));
            BoundaryGen g;
            g.vertex = ex.vertex;
            if (cmp > 0) { // X later: source X
                g.fromXtoY = true;
                g.deg = ex.level - ey.level + s.wedgeSum(ex.vertex, ey.pos, ex.pos);
                g.srcEndBack = ex.back;
                g.dstEndBack = ey.back;
                g.sweepLo = ey.pos;
                g.sweepHi = ex.pos;
            } else {
                g.fromXtoY = false;
                g.deg = ey.level - ex.level + s.wedgeSum(ex.vertex, ex.pos, ey.pos);
                g.srcEndBack = ey.back;
                g.dstEndBack = ex.back;
                g.sweepLo = ex.pos;
                g.sweepHi = ey.pos;
            }
            out.push_back(g);
        }
    }
    return out;
}

namespace {

int lsHomDim(const std::vector<JordanBlock>& a, const std::vector<JordanBlock>& b) {
    int d = 0;
    for (const auto& x : a)
        for (const auto& y : b)
            if (x.eigenvalue == y.eigenvalue) d += std::min(x.size, y.size);
    return d;
}

// End(X) graded dimensions at lift offset zero (maps X -> X).
std::map<long, int> endBasis(const MarkedSurface& s, const GradedCurve& X) {
    std::map<long, int> dim;
    int r = X.rank();
    if (X.isCircle()) {
        int h = lsHomDim(X.localSystem(), X.localSystem());
        dim[0] += h;
        dim[1] += h;
    } else {
        dim[0] += 1;
        // the two ends of one interval may share a marked interval
        ArcEnd f = X.word().steps.front().tailEnd();
        ArcEnd b = X.word().steps.back().headEnd();
        int vf = s.vertexOfEnd(f), vb = s.vertexOfEnd(b);
        if (vf == vb) {
            int pf = s.fanPos(f), pb = s.fanPos(b);
            int cmp;
            if (pf != pb)
                cmp = pf > pb ? 1 : -1;
            else
                cmp = endDepthCmp(s, endView(X, false), endView(X, true));
            long deg;
            if (cmp > 0)
                deg = X.levels().front() - X.levels().back() + s.wedgeSum(vf, pb, pf);
            else
                deg = X.levels().back() - X.levels().front() + s.wedgeSum(vf, pf, pb);
            dim[deg] += 1;
        }
    }
    for (const auto& c : selfCrossings(s, X)) {
        dim[c.degXtoY] += r * r;
        dim[1 - c.degXtoY] += r * r;
    }
    return dim;
}

} // namespace

HomBasis homBasis(const MarkedSurface& s, const GradedCurve& X, const GradedCurve& Y) {
    HomBasis h;
    if (X.word() == Y.word()) {
        long delta = Y.lift() - X.lift();
        if (X.isCircle()) {
            int smooth = lsHomDim(X.localSystem(), Y.localSystem());
            if (smooth) {
                h.dim[0 - delta] += smooth;
                h.dim[1 - delta] += smooth;
            }
            int rr = X.rank() * Y.rank();
            for (const auto& c : selfCrossings(s, X)) {
                h.dim[c.degXtoY - delta] += rr;
                h.dim[1 - c.degXtoY - delta] += rr;
            }
        } else {
            for (auto& [d, n] : endBasis(s, X)) h.dim[d - delta] += n;
        }
        return h;
    }
    int rr = X.rank() * Y.rank();
    for (const auto& c : crossings(s, X, Y)) h.dim[c.degXtoY] += rr;
    for (const auto& g : boundaryGens(s, X, Y))
        if (g.fromXtoY) h.dim[g.deg] += 1;
    // generators of Hom(Y, X) do not contribute here; crossings contribute to
    // both directions with degrees d and 1-d
    for (auto it = h.dim.begin(); it != h.dim.end();)
        it = it->second == 0 ? h.dim.erase(it) : std::next(it);
    return h;
}

int crossingNumber(const MarkedSurface& s, const GradedCurve& X, const GradedCurve& Y) {
    if (X.word() == Y.word()) return static_cast<int>(selfCrossings(s, X).size());
    return static_cast<int>(crossings(s, X, Y).size());
}

} // namespace surfstab
