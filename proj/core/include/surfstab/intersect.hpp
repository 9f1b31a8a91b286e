#pragma once
#include "surfstab/curve.hpp"
#include "surfstab/surface.hpp"
#include <map>
#include <vector>

namespace surfstab {

// Minimal-position intersection theory for reduced walk words. A transverse
// crossing between curves X and Y contributes one morphism generator in each
// direction, of degrees d and 1-d. An end pair on a shared marked interval
// contributes a single boundary-path generator from the later endpoint to the
// earlier one (morphisms sweep against the boundary orientation).

struct Crossing {
    long degXtoY = 0; // degree of the generator X -> Y; Y -> X has 1 - deg
    int vertex = -1;  // vertex at which the crossing is localized
    // Walk positions: index of the step of X (resp. Y) arriving at the
    // localization turn; -1 when the crossing localizes at a curve front.
    int stepX = -1, stepY = -1;
};

struct BoundaryGen {
    bool fromXtoY = true;
    long deg = 0;
    int vertex = -1;
    bool srcEndBack = true; // which end of the source curve
    bool dstEndBack = true;
    int sweepLo = 0, sweepHi = 0; // fan positions swept [lo, hi]
};

// All essential crossings between the two curves (X != Y as words), or all
// essential self-crossings when called with the same curve.
std::vector<Crossing> crossings(const MarkedSurface& s, const GradedCurve& X,
                                const GradedCurve& Y);
std::vector<Crossing> selfCrossings(const MarkedSurface& s, const GradedCurve& X);

// Boundary-path generators between interval ends (X != Y as words).
std::vector<BoundaryGen> boundaryGens(const MarkedSurface& s, const GradedCurve& X,
                                      const GradedCurve& Y);

bool isEmbedded(const MarkedSurface& s, const GradedCurve& X);

// Graded dimensions of Hom(X, Y) in the intersection/boundary-path model,
// including local-system multiplicities and the coincident-support cases.
struct HomBasis {
    std::map<long, int> dim;
    int at(long d) const {
        auto it = dim.find(d);
        return it == dim.end() ? 0 : it->second;
    }
    int total() const {
        int t = 0;
        for (auto& [d, n] : dim) t += n;
        return t;
    }
};
HomBasis homBasis(const MarkedSurface& s, const GradedCurve& X, const GradedCurve& Y);

// Geometric intersection number (count of essential crossings, no degrees),
// counting multiplicity one per crossing regardless of local systems.
int crossingNumber(const MarkedSurface& s, const GradedCurve& X, const GradedCurve& Y);

} // namespace surfstab
