#pragma once
#include "surfstab/rational.hpp"
#include "surfstab/surface.hpp"
#include <optional>
#include <string>
#include <vector>

namespace surfstab {

// Objects of the Fukaya category are graded curves: reduced walks on the arc
// graph. A walk alternates arc traversals with turns at the marked vertices;
// the turn between consecutive traversals is determined by the two arc ends,
// so a word is just the traversal sequence. Reduced words (no traversal
// immediately undone) represent isotopy classes uniquely, up to reversal and,
// for circles, rotation.

struct WalkStep {
    int arc = -1;
    bool rev = false;
    bool operator==(const WalkStep&) const = default;
    bool operator<(const WalkStep& o) const {
        return arc != o.arc ? arc < o.arc : rev < o.rev;
    }
    WalkStep reversed() const { return {arc, !rev}; }
    ArcEnd tailEnd() const { return {arc, rev ? 1 : 0}; }
    ArcEnd headEnd() const { return {arc, rev ? 0 : 1}; }
};

struct CurveWord {
    bool circle = false;
    std::vector<WalkStep> steps;
    bool operator==(const CurveWord&) const = default;
    bool operator<(const CurveWord& o) const {
        if (circle != o.circle) return circle < o.circle;
        return steps < o.steps;
    }
    int size() const { return static_cast<int>(steps.size()); }
};

struct CurveError : std::runtime_error {
    std::string kind; // InvalidWalk | MultiplyCovered | NotGradable | EndpointMismatch
    CurveError(std::string k, const std::string& what)
        : std::runtime_error(what), kind(std::move(k)) {}
};

struct JordanBlock {
    Rat eigenvalue{1};
    int size = 1;
    bool operator==(const JordanBlock&) const = default;
};

// Canonical graded curve on a fixed surface. 'lift' is the grading level of
// the first traversal of the canonical word; levels along the word follow
// from the turn jumps.
class GradedCurve {
  public:
    // Builds the canonical representative. Throws CurveError on invalid
    // walks, nullhomotopic circles, non-gradable circles, or non-primitive
    // circle words (multiply covered).
    static GradedCurve make(const MarkedSurface& s, CurveWord w, long lift,
                            std::vector<JordanBlock> localSystem = {});

    const CurveWord& word() const { return word_; }
    bool isCircle() const { return word_.circle; }
    long lift() const { return lift_; }
    const std::vector<long>& levels() const { return levels_; }
    const std::vector<JordanBlock>& localSystem() const { return ls_; }
    int rank() const;

    // Interval endpoints (vertices); front is where the first step leaves.
    int frontVertex(const MarkedSurface& s) const;
    int backVertex(const MarkedSurface& s) const;

    GradedCurve shifted(long k) const;
    GradedCurve withLocalSystem(std::vector<JordanBlock> ls) const;

    // Identity on the underlying curve forgetting grading and local system.
    bool sameSupport(const GradedCurve& o) const { return word_ == o.word_; }
    // Same support and the lift differs by k: returns k.
    std::optional<long> shiftFrom(const GradedCurve& o) const;

    bool operator==(const GradedCurve& o) const {
        return word_ == o.word_ && lift_ == o.lift_ && ls_ == o.ls_;
    }
    bool operator<(const GradedCurve& o) const;

    std::string toString(const MarkedSurface& s) const;

  private:
    CurveWord word_;
    long lift_ = 0;
    std::vector<long> levels_;
    std::vector<JordanBlock> ls_;
};

// Turn displacement between consecutive steps a -> b at their shared vertex;
// throws on mismatched vertices or spurs. Exposed for the intersection and
// homology machinery.
int turnDisplacement(const MarkedSurface& s, const WalkStep& a, const WalkStep& b);
// Grading jump of the same turn.
long turnJump(const MarkedSurface& s, const WalkStep& a, const WalkStep& b);

// Reduces spurs in place; returns false if the word dies (nullhomotopic).
bool reduceWord(const MarkedSurface& s, CurveWord& w);

// Total grading jump around a circle word: the winding index of the line
// field along the circle. Gradable iff zero; the loop around a puncture has
// index 2.
long circleIndex(const MarkedSurface& s, const CurveWord& w);

// Whether a reduced word has a teardrop: a nullhomotopic subloop cut off at
// a self-crossing. Admissible objects have none.
bool boundsTeardrop(const MarkedSurface& s, const CurveWord& w);

// Winding numbers of a curve against a frame of cocycle functionals, given
// as signed counts of designated arcs. Used by the annulus/torus analyses.
struct WindingFrame {
    std::vector<int> arcCoefL, arcCoefM; // per-arc coefficients of the two functionals
};
std::pair<long, long> windingNumbers(const MarkedSurface& s, const CurveWord& w,
                                     const WindingFrame& f);
WindingFrame torusFrame(const MarkedSurface& s);   // arcs "a" and "b"
WindingFrame annulusFrame(const MarkedSurface& s); // arc "s1"

// Parses a word literal: whitespace-separated arc names, '~' prefix for a
// reversed traversal. Leading "circle" token marks a circle word.
CurveWord parseWord(const MarkedSurface& s, const std::string& text);
std::string wordToString(const MarkedSurface& s, const CurveWord& w);

} // namespace surfstab
