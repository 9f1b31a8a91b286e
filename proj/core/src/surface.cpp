#include "surfstab/surface.hpp"
#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace surfstab {

namespace {

[[noreturn]] void fail(SurfaceErrc c, const std::string& elem, const std::string& msg) {
    throw SurfaceError(c, elem, msg);
}

} // namespace

std::optional<int> MarkedSurface::arcByName(const std::string& n) const {
    for (int i = 0; i < arcCount(); ++i)
        if (arcNames_[i] == n) return i;
    return std::nullopt;
}

std::optional<int> MarkedSurface::vertexByName(const std::string& n) const {
    for (int i = 0; i < vertexCount(); ++i)
        if (vertexNames_[i] == n) return i;
    return std::nullopt;
}

int MarkedSurface::wedgeSum(int v, int lo, int hi) const {
    const auto& f = fans_[v];
    int s = 0;
    for (int k = lo; k < hi; ++k) s += f.wedgeDeg[k];
    return s;
}

class SurfaceBuilder {
  public:
    static MarkedSurface build(const SurfaceDescription& d) {
        MarkedSurface s;
        s.name_ = d.name;
        s.arcNames_ = d.arcNames;
        s.unmNames_ = d.unmarkedNames;
        s.faces_ = d.faces;

        if (!d.holeNames.empty())
            fail(SurfaceErrc::NotFullyStopped, d.holeNames.front(),
                 "boundary circle '" + d.holeNames.front() +
                     "' has no marked interval");
        for (const auto& f : d.faces)
            for (const auto& sd : f.sides)
                if (sd.kind == Side::Hole)
                    fail(SurfaceErrc::NotFullyStopped, f.name,
                         "face '" + f.name + "' bounds an unmarked circle");

        indexSlots(s, d);
        normalizeCorners(s);
        buildFans(s);
        buildCircles(s);
        topology(s);
        checkGrading(s);
        return s;
    }

  private:
    static void indexSlots(MarkedSurface& s, const SurfaceDescription& d) {
        int nArcs = static_cast<int>(d.arcNames.size());
        int nUnm = static_cast<int>(d.unmarkedNames.size());
        s.arcSlots_.assign(nArcs, {Slot{}, Slot{}});
        s.unmSlots_.assign(nUnm, Slot{});
        std::vector<std::array<int, 2>> arcSeen(nArcs, {0, 0});
        std::vector<int> unmSeen(nUnm, 0);

        for (int fi = 0; fi < static_cast<int>(d.faces.size()); ++fi) {
            const auto& f = d.faces[fi];
            if (f.sides.empty())
                fail(SurfaceErrc::BadDescription, f.name, "empty face '" + f.name + "'");
            if (!f.corner.empty() && f.corner.size() != f.sides.size())
                fail(SurfaceErrc::BadDescription, f.name,
                     "face '" + f.name + "' has " + std::to_string(f.corner.size()) +
                         " corner degrees for " + std::to_string(f.sides.size()) +
                         " sides");
            for (int si = 0; si < static_cast<int>(f.sides.size()); ++si) {
                const Side& sd = f.sides[si];
                if (sd.kind == Side::Arc) {
                    if (sd.id < 0 || sd.id >= nArcs)
                        fail(SurfaceErrc::BadDescription, f.name, "bad arc id");
                    int which = sd.rev ? 1 : 0;
                    if (arcSeen[sd.id][which]++)
                        fail(SurfaceErrc::DanglingArc, d.arcNames[sd.id],
                             "arc '" + d.arcNames[sd.id] +
                                 "' traversed twice in the same direction");
                    s.arcSlots_[sd.id][which] = {fi, si};
                } else {
                    if (sd.id < 0 || sd.id >= nUnm)
                        fail(SurfaceErrc::BadDescription, f.name, "bad segment id");
                    if (unmSeen[sd.id]++)
                        fail(SurfaceErrc::BadDescription, d.unmarkedNames[sd.id],
                             "unmarked segment '" + d.unmarkedNames[sd.id] +
                                 "' appears twice");
                    s.unmSlots_[sd.id] = {fi, si};
                }
            }
        }
        for (int a = 0; a < nArcs; ++a)
            if (arcSeen[a][0] != 1 || arcSeen[a][1] != 1)
                fail(SurfaceErrc::DanglingArc, d.arcNames[a],
                     "arc '" + d.arcNames[a] + "' does not appear on exactly two face sides");
        for (int u = 0; u < nUnm; ++u)
            if (unmSeen[u] != 1)
                fail(SurfaceErrc::BadDescription, d.unmarkedNames[u],
                     "unmarked segment '" + d.unmarkedNames[u] + "' unused");

        // Tightness bookkeeping: each face must carry at most one unmarked
        // side; faces with none are internal polygons.
        for (const auto& f : d.faces) {
            int unm = 0;
            for (const auto& sd : f.sides)
                if (sd.kind == Side::Unmarked) ++unm;
            if (unm > 1)
                fail(SurfaceErrc::NonDiskFace, f.name,
                     "face '" + f.name + "' meets " + std::to_string(unm) +
                         " unmarked boundary segments (arc system not full)");
            if (unm == 0) s.tight_ = false;
        }
    }

    static void normalizeCorners(MarkedSurface& s) {
        for (auto& f : s.faces_)
            if (f.corner.empty()) f.corner.assign(f.sides.size(), 0);
    }

    // End of a slot's traversal: tail = end we leave, head = end we arrive at.
    static ArcEnd travHead(const Side& sd) { return {sd.id, sd.rev ? 0 : 1}; }
    static ArcEnd travTail(const Side& sd) { return {sd.id, sd.rev ? 1 : 0}; }

    static void buildFans(MarkedSurface& s) {
        int nArcs = s.arcCount();
        s.endVertex_.assign(2 * nArcs, -1);
        s.endPos_.assign(2 * nArcs, -1);
        s.unmTail_.assign(s.unmarkedCount(), -1);
        s.unmHead_.assign(s.unmarkedCount(), -1);

        for (int u = 0; u < s.unmarkedCount(); ++u) {
            Slot sl = s.unmSlots_[u];
            VertexFan fan;
            fan.uIn = u;
            int v = static_cast<int>(s.fans_.size());
            s.unmHead_[u] = v;

            int fi = sl.face, si = sl.idx;
            int guard = 0;
            for (;;) {
                if (++guard > 4 * nArcs + 4)
                    fail(SurfaceErrc::NonDiskFace, s.faces_[fi].name,
                         "corner walk does not close near face '" + s.faces_[fi].name + "'");
                const auto& f = s.faces_[fi];
                int k = static_cast<int>(f.sides.size());
                fan.wedgeDeg.push_back(f.corner[si]);
                const Side& nxt = f.sides[(si + 1) % k];
                if (nxt.kind == Side::Unmarked) {
                    fan.uOut = nxt.id;
                    s.unmTail_[nxt.id] = v;
                    break;
                }
                ArcEnd e = travTail(nxt);
                if (s.endVertex_[e.token()] != -1)
                    fail(SurfaceErrc::NonDiskFace, s.arcNames_[e.arc],
                         "arc end of '" + s.arcNames_[e.arc] + "' met twice in corner walks");
                s.endVertex_[e.token()] = v;
                s.endPos_[e.token()] = static_cast<int>(fan.ends.size()) + 1;
                fan.ends.push_back(e);
                // Cross the arc to the other traversal: that slot arrives at
                // this vertex; its following corner continues the fan.
                Slot other = s.arcSlots_[e.arc][nxt.rev ? 0 : 1];
                fi = other.face;
                si = other.idx;
            }
            s.fans_.push_back(std::move(fan));
        }
        for (int a = 0; a < nArcs; ++a)
            for (int e = 0; e < 2; ++e)
                if (s.endVertex_[2 * a + e] < 0)
                    fail(SurfaceErrc::DanglingArc, s.arcNames_[a],
                         "end of arc '" + s.arcNames_[a] + "' not attached to any marked interval");
        if (s.fans_.empty())
            fail(SurfaceErrc::BadDescription, s.name_, "surface has no marked intervals");
    }

    static void buildCircles(MarkedSurface& s) {
        int V = s.vertexCount();
        s.vertexCircle_.assign(V, -1);
        for (int v0 = 0; v0 < V; ++v0) {
            if (s.vertexCircle_[v0] != -1) continue;
            int c = static_cast<int>(s.circles_.size());
            std::vector<int> cyc;
            int v = v0;
            do {
                s.vertexCircle_[v] = c;
                cyc.push_back(v);
                int u = s.fans_[v].uOut;
                v = s.unmHead_[u];
            } while (v != v0);
            s.circles_.push_back(std::move(cyc));
        }
        s.boundaryCircles_ = static_cast<int>(s.circles_.size());
        s.vertexNames_.resize(V);
        for (int v = 0; v < V; ++v) s.vertexNames_[v] = "M" + std::to_string(v);
    }

    static void topology(MarkedSurface& s) {
        // connectivity over face adjacency through arcs
        std::vector<char> seen(s.faceCount(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            int fi = stack.back();
            stack.pop_back();
            for (const auto& sd : s.faces_[fi].sides) {
                if (sd.kind != Side::Arc) continue;
                int other = s.arcSlots_[sd.id][sd.rev ? 0 : 1].face;
                if (!seen[other]) {
                    seen[other] = 1;
                    stack.push_back(other);
                }
            }
        }
        for (char c : seen)
            if (!c)
                fail(SurfaceErrc::BadDescription, s.name_, "surface is disconnected");

        int V = s.vertexCount();
        int E = s.arcCount() + s.unmarkedCount();
        int F = s.faceCount();
        s.euler_ = V - E + F;
        int g2 = 2 - s.boundaryCircles_ - s.euler_;
        if (g2 < 0 || g2 % 2 != 0)
            fail(SurfaceErrc::BadDescription, s.name_,
                 "gluing is not an oriented surface (chi=" + std::to_string(s.euler_) + ")");
        s.genus_ = g2 / 2;
    }

    static void checkGrading(MarkedSurface& s) {
        // Internal polygon faces must satisfy the disk corner-sum rule.
        for (const auto& f : s.faces_) {
            bool internal = true;
            for (const auto& sd : f.sides)
                if (sd.kind != Side::Arc) internal = false;
            if (!internal) continue;
            int sum = std::accumulate(f.corner.begin(), f.corner.end(), 0);
            int want = static_cast<int>(f.sides.size()) - 2;
            if (sum != want)
                fail(SurfaceErrc::GradingInconsistent, f.name,
                     "internal face '" + f.name + "' has corner sum " +
                         std::to_string(sum) + ", expected " + std::to_string(want));
        }
    }
};

MarkedSurface MarkedSurface::validate(const SurfaceDescription& d) {
    return SurfaceBuilder::build(d);
}

namespace {

// Canonical signature: explore from every (face, rotation) seed, rename
// everything in discovery order, keep the lexicographically smallest trace.
// Corner degrees adjacent to unmarked sides are normalized to zero (they do
// not affect the graded category).
std::string exploreFrom(const MarkedSurface& s, int f0, int r0,
                        std::map<int, int>* arcOrderOut = nullptr) {
    const auto& faces = s.faces();
    int nF = static_cast<int>(faces.size());
    std::vector<int> faceNew(nF, -1), faceRot(nF, 0);
    std::map<int, int> arcNew, unmNew;
    std::map<int, bool> arcFirstRev;
    std::vector<int> order;
    faceNew[f0] = 0;
    faceRot[f0] = r0;
    order.push_back(f0);
    std::ostringstream sig;

    for (size_t qi = 0; qi < order.size(); ++qi) {
        int fi = order[qi];
        const auto& f = faces[fi];
        int k = static_cast<int>(f.sides.size());
        int rot = faceRot[fi];
        sig << "F" << k << ":";
        for (int t = 0; t < k; ++t) {
            int i = (rot + t) % k;
            const Side& sd = f.sides[i];
            if (sd.kind == Side::Unmarked) {
                auto it = unmNew.find(sd.id);
                if (it == unmNew.end())
                    it = unmNew.emplace(sd.id, static_cast<int>(unmNew.size())).first;
                sig << " u" << it->second;
            } else {
                auto it = arcNew.find(sd.id);
                if (it == arcNew.end()) {
                    it = arcNew.emplace(sd.id, static_cast<int>(arcNew.size())).first;
                    arcFirstRev[sd.id] = sd.rev;
                    Slot other = s.slotOf(sd.id, !sd.rev);
                    if (faceNew[other.face] == -1) {
                        faceNew[other.face] = static_cast<int>(order.size());
                        faceRot[other.face] = other.idx;
                        order.push_back(other.face);
                    }
                }
                bool rev = (sd.rev != arcFirstRev[sd.id]);
                sig << " a" << it->second << (rev ? "-" : "+");
            }
            // corner between side i and i+1
            const Side& nx = f.sides[(i + 1) % k];
            bool arrow = (sd.kind == Side::Arc && nx.kind == Side::Arc);
            sig << " c" << (arrow ? f.corner[i] : 0);
        }
        sig << ";";
    }
    if (static_cast<int>(order.size()) != nF) sig << "DISCONNECTED";
    if (arcOrderOut) *arcOrderOut = arcNew;
    return sig.str();
}

} // namespace

std::string MarkedSurface::canonicalSignature() const {
    std::string best;
    for (int f = 0; f < faceCount(); ++f)
        for (int r = 0; r < static_cast<int>(faces_[f].sides.size()); ++r) {
            std::string sig = exploreFrom(*this, f, r);
            if (best.empty() || sig < best) best = sig;
        }
    return best;
}

std::vector<int> MarkedSurface::canonicalArcOrder() const {
    std::string best;
    std::map<int, int> bestOrder;
    for (int f = 0; f < faceCount(); ++f)
        for (int r = 0; r < static_cast<int>(faces_[f].sides.size()); ++r) {
            std::map<int, int> ord;
            std::string sig = exploreFrom(*this, f, r, &ord);
            if (best.empty() || sig < best) {
                best = sig;
                bestOrder = ord;
            }
        }
    std::vector<int> out(arcCount(), -1);
    for (auto& [arc, idx] : bestOrder) out[arc] = idx;
    return out;
}

SurfaceDescription MarkedSurface::description() const {
    SurfaceDescription d;
    d.name = name_;
    d.arcNames = arcNames_;
    d.unmarkedNames = unmNames_;
    d.faces = faces_;
    return d;
}

SurfaceDescription diskDescription(int n) {
    if (n < 2) throw std::invalid_argument("disk needs n >= 2");
    SurfaceDescription d;
    d.name = "delta" + std::to_string(n);
    for (int i = 1; i < n; ++i) d.arcNames.push_back("A" + std::to_string(i));
    for (int i = 1; i <= n; ++i) d.unmarkedNames.push_back("u" + std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) {
        FaceDescription f;
        f.name = "F" + std::to_string(i + 1);
        f.sides = {Side{Side::Arc, i, true}, Side{Side::Unmarked, i, false}};
        d.faces.push_back(f);
    }
    FaceDescription big;
    big.name = "F" + std::to_string(n);
    for (int i = 0; i + 1 < n; ++i) big.sides.push_back(Side{Side::Arc, i, false});
    big.sides.push_back(Side{Side::Unmarked, n - 1, false});
    d.faces.push_back(big);
    return d;
}

SurfaceDescription annulusDescription(int p, int q, int m) {
    if (p < 1 || q < 1) throw std::invalid_argument("annulus needs p,q >= 1");
    int N = p + q;
    SurfaceDescription d;
    d.name = "annulus" + std::to_string(p) + "_" + std::to_string(q);
    for (int i = 1; i <= N; ++i) d.arcNames.push_back("s" + std::to_string(i));
    for (int i = 1; i <= N; ++i) d.unmarkedNames.push_back("u" + std::to_string(i));
    // Gap k sits between arcs s_k and s_{k+1}; the first p gaps carry the
    // outer unmarked segments, the remaining q the inner ones.
    for (int k = 0; k < N; ++k) {
        int k1 = (k + 1) % N;
        FaceDescription f;
        f.name = "F" + std::to_string(k + 1);
        bool outer = (k < p);
        if (outer)
            f.sides = {Side{Side::Arc, k, true}, Side{Side::Unmarked, k, false},
                       Side{Side::Arc, k1, false}};
        else
            f.sides = {Side{Side::Arc, k1, false}, Side{Side::Unmarked, k, false},
                       Side{Side::Arc, k, true}};
        f.corner.assign(3, 0);
        // grading twist: the arrow corner of the first outer-gap face sits at
        // an inner vertex; placing m there gives the core circle index +m
        if (k == 0) f.corner[2] = m;
        d.faces.push_back(f);
    }
    return d;
}

SurfaceDescription punctTorusDescription(int n, int iL, int iM) {
    if (n < 1) throw std::invalid_argument("punctured torus needs n >= 1");
    SurfaceDescription d;
    d.name = "ptorus" + std::to_string(n);
    d.arcNames.push_back("a");
    d.arcNames.push_back("b");
    for (int i = 1; i < n; ++i) d.arcNames.push_back("E" + std::to_string(i));
    for (int i = 1; i <= n; ++i) d.unmarkedNames.push_back("u" + std::to_string(i));

    FaceDescription big;
    big.name = "F0";
    big.sides = {Side{Side::Arc, 0, false}, Side{Side::Arc, 1, false},
                 Side{Side::Arc, 0, true}, Side{Side::Arc, 1, true}};
    for (int i = 1; i < n; ++i) big.sides.push_back(Side{Side::Arc, 1 + i, false});
    big.sides.push_back(Side{Side::Unmarked, n - 1, false});
    big.corner.assign(big.sides.size(), 0);
    // Wedge degrees at the basepoint fan [a.0, b.1, a.1, b.0, ...]:
    // d1 = corner(-a,-b) = corner[2], d2 = corner(+b,-a) = corner[1],
    // d3 = corner(+a,+b) = corner[0]; circle indices come out as
    // index(a-circle) = d1+d2-1, index(b-circle) = 1-(d2+d3).
    big.corner[2] = iL;       // d1 = iL with d2 = 1
    big.corner[1] = 1;        // d2
    big.corner[0] = -iM;      // d3 = 1 - iM - d2
    d.faces.push_back(big);

    for (int i = 1; i < n; ++i) {
        FaceDescription f;
        f.name = "F" + std::to_string(i);
        f.sides = {Side{Side::Arc, 1 + i, true}, Side{Side::Unmarked, i - 1, false}};
        d.faces.push_back(f);
    }
    return d;
}

MarkedSurface makeDisk(int n) { return MarkedSurface::validate(diskDescription(n)); }
MarkedSurface makeAnnulus(int p, int q, int m) {
    return MarkedSurface::validate(annulusDescription(p, q, m));
}
MarkedSurface makePunctTorus(int n, int iL, int iM) {
    return MarkedSurface::validate(punctTorusDescription(n, iL, iM));
}

} // namespace surfstab
