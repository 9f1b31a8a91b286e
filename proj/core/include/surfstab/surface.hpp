#pragma once
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace surfstab {

// Graded marked surface, encoded by a full arc system: the complement of the
// arcs is a union of disk faces, each listed as a counterclockwise cycle of
// sides. Marked boundary intervals are collapsed to vertices; a side is an
// arc traversal or an unmarked boundary segment between two vertices. Corner
// degrees between consecutive sides encode the grading line field.
//
// A system is "tight" when every face contains exactly one unmarked side;
// tight systems have a unique reduced word per isotopy class of curves and
// are required by all curve-level operations. Faces with no unmarked side
// (internal polygons) are accepted by validation for K0/grading bookkeeping
// only, subject to the corner-sum constraint.

enum class SurfaceErrc {
    NotFullyStopped,
    NonDiskFace,
    GradingInconsistent,
    DanglingArc,
    BadDescription,
};

struct SurfaceError : std::runtime_error {
    SurfaceErrc code;
    std::string element;
    SurfaceError(SurfaceErrc c, const std::string& elem, const std::string& what)
        : std::runtime_error(what), code(c), element(elem) {}
};

struct Side {
    enum Kind { Arc, Unmarked, Hole } kind = Arc;
    int id = -1;
    bool rev = false;
    bool operator==(const Side&) const = default;
};

struct FaceDescription {
    std::string name;
    std::vector<Side> sides;
    std::vector<int> corner; // per corner (i between side i and i+1); may be empty
};

struct SurfaceDescription {
    std::string name;
    std::vector<std::string> arcNames;
    std::vector<std::string> unmarkedNames;
    std::vector<std::string> holeNames;
    std::vector<FaceDescription> faces;
};

// Arc end: end 0 is the tail of the arc's intrinsic orientation (the '+'
// traversal), end 1 the head.
struct ArcEnd {
    int arc = -1;
    int end = 0;
    bool operator==(const ArcEnd&) const = default;
    bool operator<(const ArcEnd& o) const {
        return arc != o.arc ? arc < o.arc : end < o.end;
    }
    int token() const { return arc * 2 + end; }
};

struct Slot {
    int face = -1;
    int idx = -1;
    bool operator==(const Slot&) const = default;
};

// Linear fan of arc ends around a marked vertex, ordered from the incoming
// unmarked segment (position 0) to the outgoing one (position r+1). Arc ends
// occupy positions 1..r. wedgeDeg[k] is the corner degree between positions
// k and k+1; wedges 1..r-1 are the arrow corners.
struct VertexFan {
    std::vector<ArcEnd> ends;
    std::vector<int> wedgeDeg;
    int uIn = -1, uOut = -1; // unmarked segment ids
    int arcEndCount() const { return static_cast<int>(ends.size()); }
};

class MarkedSurface {
  public:
    static MarkedSurface validate(const SurfaceDescription& d);

    const std::string& name() const { return name_; }
    int arcCount() const { return static_cast<int>(arcNames_.size()); }
    int unmarkedCount() const { return static_cast<int>(unmNames_.size()); }
    int faceCount() const { return static_cast<int>(faces_.size()); }
    int vertexCount() const { return static_cast<int>(fans_.size()); }
    int markedCount() const { return vertexCount(); }

    int eulerChar() const { return euler_; }
    int genus() const { return genus_; }
    int boundaryCircles() const { return boundaryCircles_; }
    bool tight() const { return tight_; }

    const std::string& arcName(int a) const { return arcNames_[a]; }
    const std::string& unmarkedName(int u) const { return unmNames_[u]; }
    const std::string& vertexName(int v) const { return vertexNames_[v]; }
    std::optional<int> arcByName(const std::string& n) const;
    std::optional<int> vertexByName(const std::string& n) const;

    const std::vector<FaceDescription>& faces() const { return faces_; }

    // Slots of an arc: first the '+' traversal, then the '-' traversal.
    Slot slotOf(int arc, bool rev) const { return arcSlots_[arc][rev ? 1 : 0]; }

    int vertexOfEnd(ArcEnd e) const { return endVertex_[e.token()]; }
    int fanPos(ArcEnd e) const { return endPos_[e.token()]; } // 1..r
    const VertexFan& fan(int v) const { return fans_[v]; }
    ArcEnd endAtPos(int v, int pos) const { return fans_[v].ends[pos - 1]; }

    // Sum of wedge degrees for wedges [lo, hi), positions 1 <= lo <= hi <= r.
    int wedgeSum(int v, int lo, int hi) const;

    // Vertices at the two ends of an arc: tail (end 0), head (end 1).
    int arcTailVertex(int a) const { return vertexOfEnd({a, 0}); }
    int arcHeadVertex(int a) const { return vertexOfEnd({a, 1}); }

    // Boundary structure: circle index per vertex and per unmarked segment.
    int circleOfVertex(int v) const { return vertexCircle_[v]; }
    int circleCount() const { return boundaryCircles_; }
    // Vertices on a circle in boundary order.
    const std::vector<int>& circleVertices(int c) const { return circles_[c]; }

    // Unmarked segment endpoints: tail vertex (walk start), head vertex.
    int unmarkedTail(int u) const { return unmTail_[u]; }
    int unmarkedHead(int u) const { return unmHead_[u]; }

    // Deterministic canonical relabeling; two surfaces are isomorphic as
    // labeled combinatorial objects iff their canonical signatures agree.
    std::string canonicalSignature() const;
    // Canonical index of each arc under the relabeling that realizes the
    // canonical signature.
    std::vector<int> canonicalArcOrder() const;
    SurfaceDescription description() const;

    bool isomorphic(const MarkedSurface& o) const {
        return canonicalSignature() == o.canonicalSignature();
    }

  private:
    std::string name_;
    std::vector<std::string> arcNames_, unmNames_, vertexNames_;
    std::vector<FaceDescription> faces_;
    std::vector<std::array<Slot, 2>> arcSlots_;
    std::vector<Slot> unmSlots_;
    std::vector<int> endVertex_, endPos_;
    std::vector<VertexFan> fans_;
    std::vector<int> unmTail_, unmHead_;
    std::vector<int> vertexCircle_;
    std::vector<std::vector<int>> circles_;
    int euler_ = 0, genus_ = 0, boundaryCircles_ = 0;
    bool tight_ = true;

    friend class SurfaceBuilder;
};

// Convenience constructors for the standard pieces used throughout.
SurfaceDescription diskDescription(int n);                 // Delta_n, n >= 2
SurfaceDescription annulusDescription(int p, int q, int m); // Delta*_{p,q,(m)}
SurfaceDescription punctTorusDescription(int n, int iL, int iM); // T*_n
MarkedSurface makeDisk(int n);
MarkedSurface makeAnnulus(int p, int q, int m);
MarkedSurface makePunctTorus(int n, int iL = 0, int iM = 0);

} // namespace surfstab
