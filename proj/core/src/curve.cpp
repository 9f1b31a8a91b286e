#include "surfstab/curve.hpp"
#include <algorithm>
#include <sstream>

namespace surfstab {

int turnDisplacement(const MarkedSurface& s, const WalkStep& a, const WalkStep& b) {
    ArcEnd e1 = a.headEnd(), e2 = b.tailEnd();
    int v1 = s.vertexOfEnd(e1), v2 = s.vertexOfEnd(e2);
    if (v1 != v2)
        throw CurveError("InvalidWalk", "steps " + s.arcName(a.arc) + "/" +
                                            s.arcName(b.arc) + " do not meet");
    int d = s.fanPos(e2) - s.fanPos(e1);
    if (d == 0)
        throw CurveError("InvalidWalk",
                         "spur at arc " + s.arcName(a.arc) + " (unreduced word)");
    return d;
}

long turnJump(const MarkedSurface& s, const WalkStep& a, const WalkStep& b) {
    ArcEnd e1 = a.headEnd(), e2 = b.tailEnd();
    int v = s.vertexOfEnd(e1);
    int p1 = s.fanPos(e1), p2 = s.fanPos(e2);
    if (p2 > p1) return 1 - s.wedgeSum(v, p1, p2);
    return s.wedgeSum(v, p2, p1) - 1;
}

bool reduceWord(const MarkedSurface& s, CurveWord& w) {
    (void)s;
    auto isSpur = [](const WalkStep& a, const WalkStep& b) {
        return b == a.reversed();
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < w.steps.size(); ++i) {
            if (isSpur(w.steps[i], w.steps[i + 1])) {
                w.steps.erase(w.steps.begin() + i, w.steps.begin() + i + 2);
                changed = true;
                break;
            }
        }
        if (!changed && w.circle && w.steps.size() >= 2 &&
            isSpur(w.steps.back(), w.steps.front())) {
            w.steps.pop_back();
            w.steps.erase(w.steps.begin());
            changed = true;
        }
    }
    return !w.steps.empty();
}

namespace {

// Validates that consecutive steps meet at a vertex without spurs and
// returns per-step grading levels starting from 'lift'.
std::vector<long> walkLevels(const MarkedSurface& s, const CurveWord& w, long lift) {
    std::vector<long> g(w.steps.size());
    if (w.steps.empty()) return g;
    g[0] = lift;
    for (size_t i = 0; i + 1 < w.steps.size(); ++i) {
        turnDisplacement(s, w.steps[i], w.steps[i + 1]); // validates
        g[i + 1] = g[i] + turnJump(s, w.steps[i], w.steps[i + 1]);
    }
    if (w.circle && w.steps.size() >= 1) {
        if (w.steps.size() == 1)
            turnDisplacement(s, w.steps[0], w.steps[0]);
        else
            turnDisplacement(s, w.steps.back(), w.steps.front());
    }
    return g;
}

CurveWord rotated(const CurveWord& w, int r) {
    CurveWord out;
    out.circle = w.circle;
    int n = w.size();
    out.steps.reserve(n);
    for (int i = 0; i < n; ++i) out.steps.push_back(w.steps[(r + i) % n]);
    return out;
}

CurveWord reversedWord(const CurveWord& w) {
    CurveWord out;
    out.circle = w.circle;
    for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it)
        out.steps.push_back(it->reversed());
    return out;
}

} // namespace

long circleIndex(const MarkedSurface& s, const CurveWord& w) {
    long total = 0;
    int n = w.size();
    for (int i = 0; i < n; ++i)
        total += turnJump(s, w.steps[i], w.steps[(i + 1) % n]);
    return total;
}

GradedCurve GradedCurve::make(const MarkedSurface& s, CurveWord w, long lift,
                              std::vector<JordanBlock> localSystem) {
    if (!reduceWord(s, w))
        throw CurveError("InvalidWalk", "word reduces to the trivial walk");
    if (!w.circle && !localSystem.empty() &&
        !(localSystem.size() == 1 && localSystem[0] == JordanBlock{}))
        throw CurveError("InvalidWalk", "interval objects carry the trivial local system");
    if (w.circle) {
        // primitivity
        int n = w.size();
        for (int p = 1; p < n; ++p) {
            if (n % p != 0) continue;
            bool period = true;
            for (int i = 0; period && i < n; ++i)
                if (!(w.steps[i] == w.steps[(i + p) % n])) period = false;
            if (period)
                throw CurveError("MultiplyCovered",
                                 "circle word is a proper power (multiply covered)");
        }
        if (circleIndex(s, w) != 0)
            throw CurveError("NotGradable", "circle has nonzero winding index " +
                                                std::to_string(circleIndex(s, w)));
        if (localSystem.empty()) localSystem = {JordanBlock{}};
        for (const auto& b : localSystem)
            if (b.eigenvalue == 0 || b.size < 1)
                throw CurveError("InvalidWalk", "local system needs nonzero eigenvalues");
    }

    // canonical representative: minimum over reversal (and rotations for
    // circles) of the step sequence. Reversal inverts circle monodromy.
    std::vector<long> lvl = walkLevels(s, w, lift);
    CurveWord best = w;
    std::vector<long> bestLvl = lvl;
    bool bestReversed = false;
    auto consider = [&](const CurveWord& cand, const std::vector<long>& clvl, bool isRev) {
        if (cand.steps < best.steps) {
            best = cand;
            bestLvl = clvl;
            bestReversed = isRev;
        }
    };
    CurveWord rw = reversedWord(w);
    std::vector<long> rlvl(lvl.rbegin(), lvl.rend());
    consider(rw, rlvl, true);
    if (w.circle) {
        int n = w.size();
        for (int r = 1; r < n; ++r) {
            CurveWord c = rotated(w, r);
            std::vector<long> cl(n);
            for (int i = 0; i < n; ++i) cl[i] = lvl[(r + i) % n];
            consider(c, cl, false);
            CurveWord rc = rotated(rw, r);
            std::vector<long> rcl(n);
            for (int i = 0; i < n; ++i) rcl[i] = rlvl[(r + i) % n];
            consider(rc, rcl, true);
        }
    }
    if (bestReversed && w.circle)
        for (auto& b : localSystem) b.eigenvalue = Rat(1) / b.eigenvalue;
    std::sort(localSystem.begin(), localSystem.end(),
              [](const JordanBlock& x, const JordanBlock& y) {
                  return x.eigenvalue != y.eigenvalue ? x.eigenvalue < y.eigenvalue
                                                      : x.size < y.size;
              });

    GradedCurve gc;
    gc.word_ = std::move(best);
    gc.lift_ = bestLvl[0];
    gc.levels_ = std::move(bestLvl);
    gc.ls_ = std::move(localSystem);
    // re-derive levels from the canonical word as a consistency check
    auto again = walkLevels(s, gc.word_, gc.lift_);
    if (again != gc.levels_)
        throw CurveError("InvalidWalk", "inconsistent grading levels along the word");
    return gc;
}

int GradedCurve::rank() const {
    if (!word_.circle) return 1;
    int r = 0;
    for (const auto& b : ls_) r += b.size;
    return r;
}

int GradedCurve::frontVertex(const MarkedSurface& s) const {
    return s.vertexOfEnd(word_.steps.front().tailEnd());
}
int GradedCurve::backVertex(const MarkedSurface& s) const {
    return s.vertexOfEnd(word_.steps.back().headEnd());
}

GradedCurve GradedCurve::shifted(long k) const {
    GradedCurve c(*this);
    c.lift_ += k;
    for (auto& g : c.levels_) g += k;
    return c;
}

GradedCurve GradedCurve::withLocalSystem(std::vector<JordanBlock> ls) const {
    GradedCurve c(*this);
    c.ls_ = std::move(ls);
    return c;
}

std::optional<long> GradedCurve::shiftFrom(const GradedCurve& o) const {
    if (word_ != o.word_) return std::nullopt;
    return lift_ - o.lift_;
}

bool GradedCurve::operator<(const GradedCurve& o) const {
    if (word_ != o.word_) return word_ < o.word_;
    if (lift_ != o.lift_) return lift_ < o.lift_;
    if (ls_.size() != o.ls_.size()) return ls_.size() < o.ls_.size();
    for (size_t i = 0; i < ls_.size(); ++i) {
        if (ls_[i].eigenvalue != o.ls_[i].eigenvalue)
            return ls_[i].eigenvalue < o.ls_[i].eigenvalue;
        if (ls_[i].size != o.ls_[i].size) return ls_[i].size < o.ls_[i].size;
    }
    return false;
}

std::string GradedCurve::toString(const MarkedSurface& s) const {
    std::ostringstream os;
    os << (word_.circle ? "circle" : "interval") << " lift=" << lift_ << " : "
       << wordToString(s, word_);
    if (word_.circle) {
        os << " eigs=(";
        for (size_t i = 0; i < ls_.size(); ++i) {
            if (i) os << ",";
            os << ratToString(ls_[i].eigenvalue) << ":" << ls_[i].size;
        }
        os << ")";
    }
    return os.str();
}

bool boundsTeardrop(const MarkedSurface& s, const CurveWord& w) {
    // A teardrop needs a nullhomotopic subloop between two passes through a
    // common vertex. For each pair of turn positions at the same vertex,
    // close the intermediate word and test reducibility to the trivial walk.
    int n = w.size();
    auto vertexAfter = [&](int i) {
        return s.vertexOfEnd(w.steps[i].headEnd());
    };
    int turns = w.circle ? n : n - 1;
    for (int i = 0; i < turns; ++i) {
        for (int j = i + 1; j < turns; ++j) {
            if (vertexAfter(i) != vertexAfter(j)) continue;
            CurveWord loop;
            loop.circle = true;
            for (int k = i + 1; k <= j; ++k) loop.steps.push_back(w.steps[k % n]);
            CurveWord copy = loop;
            if (!reduceWord(s, copy)) return true;
        }
    }
    return false;
}

std::pair<long, long> windingNumbers(const MarkedSurface& s, const CurveWord& w,
                                     const WindingFrame& f) {
    (void)s;
    long p = 0, q = 0;
    for (const auto& st : w.steps) {
        int sign = st.rev ? -1 : 1;
        p += sign * f.arcCoefL[st.arc];
        q += sign * f.arcCoefM[st.arc];
    }
    return {p, q};
}

WindingFrame torusFrame(const MarkedSurface& s) {
    auto a = s.arcByName("a"), b = s.arcByName("b");
    if (!a || !b)
        throw CurveError("FrameUnavailable", "surface has no torus frame arcs a/b");
    WindingFrame f;
    f.arcCoefL.assign(s.arcCount(), 0);
    f.arcCoefM.assign(s.arcCount(), 0);
    f.arcCoefL[*a] = 1;
    f.arcCoefM[*b] = 1;
    return f;
}

WindingFrame annulusFrame(const MarkedSurface& s) {
    auto a = s.arcByName("s1");
    if (!a)
        throw CurveError("FrameUnavailable", "surface has no annulus frame arc s1");
    WindingFrame f;
    f.arcCoefL.assign(s.arcCount(), 0);
    f.arcCoefM.assign(s.arcCount(), 0);
    f.arcCoefL[*a] = 1;
    return f;
}

CurveWord parseWord(const MarkedSurface& s, const std::string& text) {
    CurveWord w;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        if (tok == "circle") {
            w.circle = true;
            continue;
        }
        WalkStep st;
        if (tok[0] == '~') {
            st.rev = true;
            tok = tok.substr(1);
        }
        auto a = s.arcByName(tok);
        if (!a) throw CurveError("InvalidWalk", "unknown arc '" + tok + "'");
        st.arc = *a;
        w.steps.push_back(st);
    }
    if (w.steps.empty()) throw CurveError("InvalidWalk", "empty word");
    return w;
}

std::string wordToString(const MarkedSurface& s, const CurveWord& w) {
    std::ostringstream os;
    if (w.circle) os << "circle ";
    for (size_t i = 0; i < w.steps.size(); ++i) {
        if (i) os << " ";
        if (w.steps[i].rev) os << "~";
        os << s.arcName(w.steps[i].arc);
    }
    return os.str();
}

} // namespace surfstab
