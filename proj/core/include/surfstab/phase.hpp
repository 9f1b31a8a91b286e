#pragma once
#include "surfstab/rational.hpp"
#include <optional>
#include <string>
#include <vector>

namespace surfstab {

// A phase is an exact real number t with e^{i pi t} parallel to a given
// nonzero rational direction. Stored as an integer window plus a direction
// normalized into the canonical half plane
//   { im > 0 } union { im == 0, re < 0 },
// which carries the fractional parts (0,1]. The charge direction represented
// is (-1)^window * dir. Comparisons are exact (cross product signs).
class ExactPhase {
  public:
    ExactPhase() = default;

    // Phase in the window (k, k+1] whose charge direction is parallel to z
    // (same ray). Throws if z == 0 or if no such phase exists for this k.
    static ExactPhase inWindow(const QC& z, long k);

    // The unique phase in (0,1] for a charge in the canonical half plane.
    static ExactPhase unitWindow(const QC& z) { return inWindow(z, 0); }

    // Window k such that (k, k+1] contains a phase with charge direction z,
    // and k is the choice with k in {base, base+1}.
    static ExactPhase nearWindow(const QC& z, long base);

    long window() const { return window_; }
    const QC& dir() const { return dir_; }

    // Charge ray of the object: (-1)^window * dir.
    QC chargeDir() const;

    ExactPhase shifted(long k) const;

    // Exact total order on phases.
    bool operator<(const ExactPhase& o) const { return cmp(o) < 0; }
    bool operator>(const ExactPhase& o) const { return cmp(o) > 0; }
    bool operator<=(const ExactPhase& o) const { return cmp(o) <= 0; }
    bool operator>=(const ExactPhase& o) const { return cmp(o) >= 0; }
    bool operator==(const ExactPhase& o) const { return cmp(o) == 0; }
    bool operator!=(const ExactPhase& o) const { return cmp(o) != 0; }
    int cmp(const ExactPhase& o) const;

    // phase + 1 <= o, phase + 1 > o etc. appear in lozenge inequalities;
    // cmpShifted compares (*this + s) with o.
    int cmpShifted(long s, const ExactPhase& o) const;

    std::string toString() const; // e.g. "0+(1/3+i)" meaning window 0

  private:
    long window_ = 0;
    QC dir_{Rat(-1), Rat(0)}; // canonical-half direction, fractional part 1

    static int fracCmp(const QC& a, const QC& b);
};

bool inCanonicalHalf(const QC& z);

// Direction mod pi (phase mod 1): canonical-half direction only.
struct PhaseMod1 {
    QC dir; // canonical half, nonzero
    bool operator==(const PhaseMod1& o) const;
    bool operator<(const PhaseMod1& o) const; // by fractional part in (0,1]
};

PhaseMod1 phaseMod1(const ExactPhase& p);
PhaseMod1 phaseMod1OfCharge(const QC& z); // z != 0, either sign

// Largest open arc of the mod-1 phase circle free of the given directions.
// Returns nullopt when the set is empty (gap = everything, caller decides)
// or covers everything it can. 'lo'/'hi' are occupied endpoints; the open
// arc between them (going ccw from lo to hi) is free. interior is a strict
// interior direction of the free arc, usable as an exact rotation witness.
struct PhaseGapArc {
    PhaseMod1 lo, hi;
    QC interior;
    bool wraps; // true if lo == hi (single occupied direction)
};
std::optional<PhaseGapArc> largestPhaseGap(std::vector<PhaseMod1> occupied);

} // namespace surfstab
