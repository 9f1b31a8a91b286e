#include "surfstab/homology.hpp"
#include <algorithm>

namespace surfstab {

K0Class K0Class::operator+(const K0Class& o) const {
    K0Class r = *this;
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
    return r;
}
K0Class K0Class::operator-(const K0Class& o) const {
    K0Class r = *this;
    for (size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
    return r;
}
K0Class K0Class::operator-() const {
    K0Class r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}

int integerRank(std::vector<std::vector<Int>> m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        // find a pivot with minimal nonzero absolute value and reduce
        for (;;) {
            size_t piv = rows;
            for (size_t i = r; i < rows; ++i)
                if (m[i][c] != 0 && (piv == rows || abs(m[i][c]) < abs(m[piv][c])))
                    piv = i;
            if (piv == rows) break;
            std::swap(m[r], m[piv]);
            bool clean = true;
            for (size_t i = r + 1; i < rows; ++i) {
                if (m[i][c] == 0) continue;
                Int q = m[i][c] / m[r][c];
                for (size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
                if (m[i][c] != 0) clean = false;
            }
            if (clean) {
                ++r;
                break;
            }
        }
    }
    return static_cast<int>(r);
}

K0Lattice k0Lattice(const MarkedSurface& s) {
    K0Lattice L;
    L.nBasis = s.arcCount();
    for (const auto& f : s.faces()) {
        bool internal = true;
        for (const auto& sd : f.sides)
            if (sd.kind != Side::Arc) internal = false;
        if (!internal) continue;
        // relation of an internal polygon: the face boundary walk with
        // level-sign coefficients
        std::vector<Int> row(L.nBasis, 0);
        long g = 0;
        int k = static_cast<int>(f.sides.size());
        for (int i = 0; i < k; ++i) {
            row[f.sides[i].id] += (g % 2 == 0) ? 1 : -1;
            // corner i: fan-adjacent turn, displacement +1
            g += 1 - f.corner[i];
        }
        L.relations.push_back(std::move(row));
    }
    L.rank = L.nBasis - integerRank(L.relations);
    return L;
}

K0Class classOf(const MarkedSurface& s, const GradedCurve& c) {
    K0Class k;
    k.c.assign(s.arcCount(), 0);
    int r = c.rank();
    for (size_t i = 0; i < c.word().steps.size(); ++i) {
        long g = c.levels()[i];
        Int sgn = (g % 2 == 0) ? 1 : -1;
        k.c[c.word().steps[i].arc] += sgn * r;
    }
    return k;
}

Int maxNorm(const K0Class& k) {
    Int m = 0;
    for (const auto& x : k.c) {
        Int a = abs(x);
        if (a > m) m = a;
    }
    return m;
}

std::pair<Int, Int> windingProjection(const K0Class& cls, const WindingFrame& f) {
    Int p = 0, q = 0;
    for (size_t i = 0; i < cls.c.size(); ++i) {
        p += cls.c[i] * f.arcCoefL[i];
        q += cls.c[i] * f.arcCoefM[i];
    }
    return {p, q};
}

K0Pushout pushoutK0(const K0Lattice& L, const std::vector<int>& chainL,
                    const K0Lattice& R, const std::vector<int>& chainR) {
    if (chainL.size() != chainR.size())
        throw K0Error("IncompatibleChain", "chain sublattices have different ranks");
    for (int i : chainL)
        if (i < 0 || i >= L.nBasis)
            throw K0Error("IncompatibleChain", "chain index out of range on the left");
    for (int i : chainR)
        if (i < 0 || i >= R.nBasis)
            throw K0Error("IncompatibleChain", "chain index out of range on the right");

    K0Pushout out;
    out.mapL.assign(L.nBasis, -1);
    out.mapR.assign(R.nBasis, -1);
    for (int i = 0; i < L.nBasis; ++i) out.mapL[i] = i;
    int next = L.nBasis;
    for (size_t t = 0; t < chainR.size(); ++t) out.mapR[chainR[t]] = chainL[t];
    for (int j = 0; j < R.nBasis; ++j)
        if (out.mapR[j] == -1) out.mapR[j] = next++;
    out.glued.nBasis = next;

    auto push = [&](const std::vector<Int>& row, const std::vector<int>& map) {
        std::vector<Int> r(out.glued.nBasis, 0);
        for (size_t i = 0; i < row.size(); ++i) r[map[i]] += row[i];
        out.glued.relations.push_back(std::move(r));
    };
    for (const auto& row : L.relations) push(row, out.mapL);
    for (const auto& row : R.relations) push(row, out.mapR);
    out.glued.rank = out.glued.nBasis - integerRank(out.glued.relations);
    return out;
}

} // namespace surfstab
