#pragma once
#include "surfstab/curve.hpp"
#include "surfstab/rational.hpp"
#include "surfstab/surface.hpp"
#include <vector>

namespace surfstab {

// K0 of the Fukaya category, presented on the arc basis of the defining
// system. Tight systems have no relations; internal polygon faces of
// over-full systems contribute one relation row each.
struct K0Class {
    std::vector<Int> c;
    bool operator==(const K0Class& o) const { return c == o.c; }
    bool operator<(const K0Class& o) const { return c < o.c; }
    bool isZero() const {
        for (const auto& x : c)
            if (x != 0) return false;
        return true;
    }
    K0Class operator+(const K0Class& o) const;
    K0Class operator-(const K0Class& o) const;
    K0Class operator-() const;
};

struct K0Lattice {
    int nBasis = 0;
    std::vector<std::vector<Int>> relations;
    int rank = 0;
};

K0Lattice k0Lattice(const MarkedSurface& s);

// Class of a graded curve: signed arc traversal counts, the sign being the
// grading-level parity, times the local-system rank.
K0Class classOf(const MarkedSurface& s, const GradedCurve& c);

// Max-norm of a class (for the support property).
Int maxNorm(const K0Class& k);

// Integer matrix rank via Smith-style elimination.
int integerRank(std::vector<std::vector<Int>> m);

// Winding projection w(cls) = (p, q) against a frame expressed as two
// integer functionals on the arc basis.
std::pair<Int, Int> windingProjection(const K0Class& cls, const WindingFrame& f);

// Pushout of two arc-basis lattices along an identified chain. chainL[i] in
// L and chainR[i] in R are glued. Returns the glued lattice together with
// the two basis embeddings (image index per source basis element).
struct K0Pushout {
    K0Lattice glued;
    std::vector<int> mapL, mapR;
};
K0Pushout pushoutK0(const K0Lattice& L, const std::vector<int>& chainL,
                    const K0Lattice& R, const std::vector<int>& chainR);

struct K0Error : std::runtime_error {
    std::string kind; // IncompatibleChain
    K0Error(std::string k, const std::string& what)
        : std::runtime_error(what), kind(std::move(k)) {}
};

} // namespace surfstab
