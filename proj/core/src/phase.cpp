#include "surfstab/phase.hpp"
#include <algorithm>
#include <stdexcept>

namespace surfstab {

bool inCanonicalHalf(const QC& z) {
    if (z.im > 0) return true;
    return z.im == 0 && z.re < 0;
}

ExactPhase ExactPhase::inWindow(const QC& z, long k) {
    if (z.isZero()) throw std::invalid_argument("phase of zero charge");
    QC d = (k % 2 == 0) ? z : -z;
    if (!inCanonicalHalf(d))
        throw std::invalid_argument("no phase with this direction in window (" +
                                    std::to_string(k) + "," + std::to_string(k + 1) + "]");
    ExactPhase p;
    p.window_ = k;
    p.dir_ = d;
    return p;
}

ExactPhase ExactPhase::nearWindow(const QC& z, long base) {
    if (z.isZero()) throw std::invalid_argument("phase of zero charge");
    QC d = (base % 2 == 0) ? z : -z;
    return inCanonicalHalf(d) ? inWindow(z, base) : inWindow(z, base + 1);
}

QC ExactPhase::chargeDir() const {
    return (window_ % 2 == 0) ? dir_ : -dir_;
}

ExactPhase ExactPhase::shifted(long k) const {
    ExactPhase p(*this);
    p.window_ += k;
    return p;
}

int ExactPhase::fracCmp(const QC& a, const QC& b) {
    bool aTop = (a.im == 0); // fractional part exactly 1
    bool bTop = (b.im == 0);
    if (aTop && bTop) return 0;
    if (aTop) return 1;
    if (bTop) return -1;
    Rat c = cross(a, b);
    if (c > 0) return -1; // b is ccw of a: frac(a) < frac(b)
    if (c < 0) return 1;
    return 0;
}

int ExactPhase::cmp(const ExactPhase& o) const {
    if (window_ != o.window_) return window_ < o.window_ ? -1 : 1;
    return fracCmp(dir_, o.dir_);
}

int ExactPhase::cmpShifted(long s, const ExactPhase& o) const {
    return shifted(s).cmp(o);
}

std::string ExactPhase::toString() const {
    return std::to_string(window_) + "+(" + qcToString(dir_) + ")";
}

bool PhaseMod1::operator==(const PhaseMod1& o) const {
    return parallel(dir, o.dir);
}

bool PhaseMod1::operator<(const PhaseMod1& o) const {
    bool aTop = (dir.im == 0), bTop = (o.dir.im == 0);
    if (aTop || bTop) return !aTop && bTop;
    return cross(dir, o.dir) > 0;
}

PhaseMod1 phaseMod1(const ExactPhase& p) { return {p.dir()}; }

PhaseMod1 phaseMod1OfCharge(const QC& z) {
    if (z.isZero()) throw std::invalid_argument("phase of zero charge");
    return {inCanonicalHalf(z) ? z : -z};
}

std::optional<PhaseGapArc> largestPhaseGap(std::vector<PhaseMod1> occ) {
    if (occ.empty()) return std::nullopt;
    std::sort(occ.begin(), occ.end(),
              [](const PhaseMod1& a, const PhaseMod1& b) { return a < b; });
    occ.erase(std::unique(occ.begin(), occ.end()), occ.end());

    if (occ.size() == 1) {
        // Everything except one direction is free; pick any transverse
        // interior direction.
        PhaseGapArc g;
        g.lo = g.hi = occ[0];
        g.wraps = true;
        g.interior = QC(-occ[0].dir.im, occ[0].dir.re); // rotate by pi/2
        if (!inCanonicalHalf(g.interior)) g.interior = -g.interior;
        return g;
    }

    // Arc widths compared exactly: between consecutive canonical-half
    // directions a < b the arc is (arg a, arg b), all arcs < pi. Compare two
    // arcs (a1,b1), (a2,b2) by angle: use cross/dot pairs. Arc angle theta
    // in (0,pi): compare via cos via normalized dot: cos t1 < cos t2 iff
    // t1 > t2, with cos t = dot/sqrt(n1 n2). To stay rational compare
    // sign-aware squares.
    auto arcGreater = [](const QC& a1, const QC& b1, const QC& a2, const QC& b2) {
        Rat d1 = dot(a1, b1), d2 = dot(a2, b2);
        bool n1 = d1 < 0, n2 = d2 < 0; // obtuse arcs
        if (n1 != n2) return n1;
        // same sign: compare d1^2/(|a1||b1|)^2 vs d2^2/..., inverted for sign
        Rat lhs = d1 * d1 * a2.normSq() * b2.normSq();
        Rat rhs = d2 * d2 * a1.normSq() * b1.normSq();
        if (n1) return lhs < rhs; // both obtuse: bigger arc = more negative cos
        return lhs < rhs;         // both acute: bigger arc = smaller cos^2... careful
    };
    // The lambda above cannot distinguish acute arcs by cos^2 alone when
    // signs coincide but magnitudes compare the other way; do it properly:
    // for t in (0,pi), t1 > t2 iff cos t1 < cos t2. cos ti = di/sqrt(Ni).
    // Both sides real; compare di/sqrt(Ni) exactly:
    auto cosLess = [](const Rat& d1, const Rat& N1, const Rat& d2, const Rat& N2) {
        // d1/sqrt(N1) < d2/sqrt(N2) ?
        bool s1 = d1 < 0, s2 = d2 < 0;
        if (s1 && !s2) return true;
        if (!s1 && s2) return false;
        Rat l = d1 * d1 * N2, r = d2 * d2 * N1;
        if (!s1) return l < r; // both nonnegative
        return l > r;          // both negative
    };
    (void)arcGreater;

    size_t bestIdx = 0;
    bool haveBest = false;
    Rat bestDot, bestN;
    for (size_t i = 0; i < occ.size(); ++i) {
        const QC& a = occ[i].dir;
        const QC& b = occ[(i + 1) % occ.size()].dir;
        // Arc from a ccw to b; wraparound arc goes through the half-plane seam.
        QC bb = b;
        if (i + 1 == occ.size()) bb = -b; // unwrap: continue past the seam
        Rat d = dot(a, bb), N = a.normSq() * bb.normSq();
        if (!haveBest || cosLess(d, N, bestDot, bestN)) {
            haveBest = true;
            bestDot = d;
            bestN = N;
            bestIdx = i;
        }
    }

    PhaseGapArc g;
    g.wraps = false;
    g.lo = occ[bestIdx];
    g.hi = occ[(bestIdx + 1) % occ.size()];
    QC a = g.lo.dir;
    QC b = (bestIdx + 1 == occ.size()) ? -g.hi.dir : g.hi.dir;
    // Interior: cone combination with unit-free scaling. a and b are not
    // antiparallel (distinct mod pi), so s*a + t*b with s,t>0 scaled by the
    // opposite norms lands strictly inside.
    QC interior = scale(b.normSq(), a) + scale(a.normSq(), b);
    if (interior.isZero() || parallel(interior, a) || parallel(interior, b)) {
        // extremely skewed norms cannot make this happen, but be safe
        interior = a + b;
    }
    if (!inCanonicalHalf(interior)) interior = -interior;
    g.interior = interior;
    return g;
}

} // namespace surfstab
