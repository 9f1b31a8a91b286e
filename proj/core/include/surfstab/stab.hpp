#pragma once
#include "surfstab/homology.hpp"
#include "surfstab/intersect.hpp"
#include "surfstab/phase.hpp"
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace surfstab {

using SurfacePtr = std::shared_ptr<const MarkedSurface>;

struct StabError : std::runtime_error {
    std::string kind; // CutoffExceeded | AmbiguousDecomposition | InvalidHeart
    StabError(std::string k, const std::string& what)
        : std::runtime_error(what), kind(std::move(k)) {}
};

// Central charge on the arc basis of the defining system.
struct CentralCharge {
    std::vector<QC> onBasis;
    QC eval(const K0Class& k) const;
};

// A semistable object with its exact phase. The curve's lift and the phase
// window are pinned together by the slicing.
struct PhasedObject {
    GradedCurve curve;
    ExactPhase phase;
    bool operator<(const PhasedObject& o) const {
        return curve < o.curve;
    }
};

// Chain of stable intervals: pieces joined at marked intervals by degree-one
// extension classes. dirs[i] tells which side of the i-th joint is the
// quotient: the generator of the extension runs quotient -> sub in degree 1.
struct CosiChain {
    std::vector<PhasedObject> pieces;
    std::vector<int> jointVertex;    // size pieces-1, or pieces for circles
    std::vector<bool> quotientFirst; // true: piece i is the quotient side
    bool circle = false;
    int length() const { return static_cast<int>(pieces.size()); }
};

struct CosiResult {
    bool stableCircle = false; // target is a stable circle (or stable interval):
    bool stable = false;       // singleton decomposition
    CosiChain chain;           // singleton when stable
};

struct HNFactor {
    ExactPhase phase;
    QC charge;
    std::vector<PhasedObject> pieces; // JH pieces of this factor
};

// Audit report of the stability axioms at a cutoff.
struct StabilityReport {
    bool ok = true;
    std::vector<std::string> violations;
    int objectsChecked = 0;
};

struct WallHit {
    K0Class a, b;
    bool onWall; // Z(a)/Z(b) real with a, b not proportional
};

class StabilityCondition {
  public:
    // Builds the stability condition from a finite heart and computes the
    // stable set up to the word-length cutoff.
    static StabilityCondition build(SurfacePtr s, CentralCharge Z,
                                    std::vector<GradedCurve> heartSimples,
                                    int wordCutoff, int chainCutoff = 12);

    const MarkedSurface& surface() const { return *surf_; }
    SurfacePtr surfacePtr() const { return surf_; }
    const CentralCharge& charge() const { return Z_; }
    const std::vector<PhasedObject>& simples() const { return simples_; }
    const std::vector<PhasedObject>& stables() const { return stables_; }
    int wordCutoff() const { return wordCutoff_; }
    int chainCutoff() const { return chainCutoff_; }

    QC chargeOf(const GradedCurve& c) const;
    // Phase of a semistable rep consistent with the cached windows; nullopt
    // for objects not in the cached stable set.
    std::optional<PhasedObject> stableRep(const CurveWord& w) const;
    bool isStableSupport(const CurveWord& w) const;

    // The unique chain-of-stable-intervals decomposition (or stable circle).
    CosiResult cosiDecompose(const GradedCurve& X) const;
    std::vector<HNFactor> hnFiltration(const GradedCurve& X) const;
    CosiResult higherRankCircleDecompose(const GradedCurve& X) const;

    // All HN-valid chains concatenating to X over the cached stable set;
    // used by the decomposition and exposed for the audit.
    std::vector<CosiChain> validChains(const GradedCurve& X) const;

    StabilityReport checkStability() const;

    // Exact support bound over the cached stable set: returns the squared
    // value |Z|^2 / norm^2 and a rational lower bound for |Z|/norm.
    Rat supportConstantSq() const;
    Rat supportConstantLowerBound() const;

    std::optional<PhaseGapArc> phaseGap() const;

    std::vector<WallHit> detectWalls(const std::vector<K0Class>& xi) const;
    bool isGeneric(const std::vector<K0Class>& xi) const;

    // Equality as presented conditions: same surface signature, equal basis
    // charges, set-equal stable sets at the shared cutoff.
    bool equals(const StabilityCondition& o) const;

    // Coordinates of a class in the simple basis when they are non-negative
    // integers (membership in a heart shift).
    std::optional<std::vector<Int>> heartCoords(const K0Class& v) const;
    // Shift of X whose class is heart-signable (X or X[1]); X if neither.
    GradedCurve heartAlign(const GradedCurve& X) const;

  private:
    SurfacePtr surf_;
    CentralCharge Z_;
    std::vector<PhasedObject> simples_;
    std::vector<PhasedObject> stables_; // canonical reps, phases in (0,1]
    int wordCutoff_ = 6, chainCutoff_ = 12;
    std::vector<std::vector<Int>> simpleClassRows_; // rows: arc, cols: simple

    void computeStableSet();
    friend class ChainSearch;
};

// Chain predicates of the paper as standalone checks.
bool simpleCosiCheck(const MarkedSurface& s, const CosiChain& chain);

struct EnvelopeType {
    bool circle = false;
    int N = 1;      // chain length
    int left = 0;   // extensions on the left (sub-first joints)
    int right = 0;  // extensions on the right
};
EnvelopeType hnEnvelopeType(const MarkedSurface& s, const CosiChain& chain);

// Non-crossing violations between two chains: polygons bounded by the two
// chains through two meeting events, excluding trivial bigons with
// isomorphic sides, all-proportional configurations and non-disk loops.
struct PolygonViolation {
    int type; // 1: two crossings, 2: two shared marks, 3: mixed
    std::string witness;
};
std::vector<PolygonViolation> noncrossingCheck(const MarkedSurface& s,
                                               const CosiChain& cx,
                                               const CosiChain& cy);

// Concatenation of a chain into its total graded curve; validates joints.
GradedCurve concatenateChain(const MarkedSurface& s,
                             const std::vector<PhasedObject>& pieces,
                             const std::vector<int>& jointVertex, bool circle);

// Enumerates all indecomposable curve candidate words up to the cutoff:
// reduced interval words and gradable primitive circle words, teardrop-free.
std::vector<CurveWord> enumerateWords(const MarkedSurface& s, int maxLen);

} // namespace surfstab
