#include "surfstab/stab.hpp"
#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace surfstab {

QC CentralCharge::eval(const K0Class& k) const {
    QC z;
    for (size_t i = 0; i < k.c.size(); ++i) {
        if (k.c[i] == 0) continue;
        z += scale(Rat(k.c[i]), onBasis[i]);
    }
    return z;
}

QC StabilityCondition::chargeOf(const GradedCurve& c) const {
    return Z_.eval(classOf(*surf_, c));
}

std::vector<CurveWord> enumerateWords(const MarkedSurface& s, int maxLen) {
    std::set<CurveWord> seen;
    std::vector<CurveWord> out;
    std::vector<WalkStep> stack;
    auto canonicalPush = [&](bool circle) {
        CurveWord w;
        w.circle = circle;
        w.steps = stack;
        try {
            GradedCurve c = GradedCurve::make(s, w, 0);
            if (boundsTeardrop(s, c.word())) return;
            if (seen.insert(c.word()).second) out.push_back(c.word());
        } catch (const CurveError&) {
        }
    };
    std::function<void(int)> dfs = [&](int depth) {
        canonicalPush(false);
        ArcEnd h = stack.back().headEnd();
        ArcEnd t = stack.front().tailEnd();
        if (s.vertexOfEnd(h) == s.vertexOfEnd(t) && s.fanPos(h) != s.fanPos(t))
            canonicalPush(true);
        if (depth == maxLen) return;
        int v = s.vertexOfEnd(h);
        const VertexFan& fan = s.fan(v);
        for (int pos = 1; pos <= fan.arcEndCount(); ++pos) {
            if (pos == s.fanPos(h)) continue;
            ArcEnd e = s.endAtPos(v, pos);
            stack.push_back(WalkStep{e.arc, e.end == 1});
            dfs(depth + 1);
            stack.pop_back();
        }
    };
    for (int a = 0; a < s.arcCount(); ++a)
        for (bool rev : {false, true}) {
            stack = {WalkStep{a, rev}};
            dfs(1);
        }
    std::sort(out.begin(), out.end(), [](const CurveWord& a, const CurveWord& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        if (a.circle != b.circle) return a.circle < b.circle;
        return a.steps < b.steps;
    });
    return out;
}

namespace {

struct Target {
    std::vector<WalkStep> steps;
    std::vector<long> lvl;
};

struct OrientedPiece {
    int stableIdx;
    bool reversed;
    long shift;
};

struct RawChain {
    std::vector<OrientedPiece> pieces;
    bool circle = false;
};

std::vector<WalkStep> orientedSteps(const GradedCurve& c, bool rev) {
    if (!rev) return c.word().steps;
    std::vector<WalkStep> r;
    for (auto it = c.word().steps.rbegin(); it != c.word().steps.rend(); ++it)
        r.push_back(it->reversed());
    return r;
}
std::vector<long> orientedLevels(const GradedCurve& c, bool rev) {
    if (!rev) return c.levels();
    return std::vector<long>(c.levels().rbegin(), c.levels().rend());
}

} // namespace

// Chain search: peel stable interval pieces off the front of a leveled
// target word; junction cancellation leaves a reversed piece tail as the new
// front of the remainder.
class ChainSearch {
  public:
    explicit ChainSearch(const StabilityCondition& sc) : sc_(sc), s_(sc.surface()) {
        for (size_t i = 0; i < sc.stables().size(); ++i) {
            const GradedCurve& c = sc.stables()[i].curve;
            if (c.isCircle()) continue;
            firstStep_[c.word().steps.front()].push_back({(int)i, false});
            firstStep_[c.word().steps.back().reversed()].push_back({(int)i, true});
        }
    }

    // Chains concatenating to the word. With a lift the target grading is
    // fixed; otherwise pieces are taken at their canonical heart lifts and
    // each chain implies a target lift.
    std::vector<RawChain> search(const CurveWord& w, std::optional<long> lift,
                                 int maxPieces, int maxRemainder) {
        maxPieces_ = maxPieces;
        maxRemainder_ = maxRemainder;
        liftFixed_ = lift.has_value();
        std::vector<RawChain> found;
        if (!w.circle) {
            Target t;
            t.steps = w.steps;
            t.lvl = lift ? levelsFor(w.steps, *lift) : std::vector<long>();
            std::vector<OrientedPiece> acc;
            dfs(t, acc, found, false);
        } else {
            int n = w.size();
            std::set<std::string> dedup;
            std::vector<long> base =
                lift ? levelsFor(w.steps, *lift) : std::vector<long>();
            for (int r = 0; r < n; ++r) {
                Target t;
                for (int i = 0; i < n; ++i) t.steps.push_back(w.steps[(r + i) % n]);
                if (lift) {
                    // cyclic levels rotate with the word
                    GradedCurve g = GradedCurve::make(s_, w, *lift);
                    for (int i = 0; i < n; ++i) t.lvl.push_back(g.levels()[(r + i) % n]);
                }
                std::vector<OrientedPiece> acc;
                std::vector<RawChain> local;
                dfs(t, acc, local, true);
                for (auto& ch : local)
                    if (dedup.insert(circleKey(ch)).second) found.push_back(ch);
            }
        }
        return found;
    }

  private:
    const StabilityCondition& sc_;
    const MarkedSurface& s_;
    std::map<WalkStep, std::vector<std::pair<int, bool>>> firstStep_;
    int maxPieces_ = 8, maxRemainder_ = 64;
    bool liftFixed_ = false;

    std::vector<long> levelsFor(const std::vector<WalkStep>& steps, long lift) {
        std::vector<long> g(steps.size());
        g[0] = lift;
        for (size_t i = 0; i + 1 < steps.size(); ++i)
            g[i + 1] = g[i] + turnJump(s_, steps[i], steps[i + 1]);
        return g;
    }

    static std::string circleKey(const RawChain& ch) {
        std::vector<std::string> toks;
        for (auto& p : ch.pieces) {
            std::ostringstream os;
            os << p.stableIdx << (p.reversed ? "r" : "f") << p.shift;
            toks.push_back(os.str());
        }
        std::string best;
        for (size_t r = 0; r < toks.size(); ++r) {
            std::string cand;
            for (size_t i = 0; i < toks.size(); ++i)
                cand += toks[(r + i) % toks.size()] + "|";
            if (best.empty() || cand < best) best = cand;
        }
        return best;
    }

    void dfs(const Target& t, std::vector<OrientedPiece>& acc,
             std::vector<RawChain>& found, bool circle) {
        if ((int)acc.size() >= maxPieces_) return;
        if ((int)t.steps.size() > maxRemainder_) return;
        auto it = firstStep_.find(t.steps.front());
        if (it == firstStep_.end()) return;
        bool haveLvl = !t.lvl.empty();
        for (auto [idx, rev] : it->second) {
            const PhasedObject& po = sc_.stables()[idx];
            auto ps = orientedSteps(po.curve, rev);
            auto pl = orientedLevels(po.curve, rev);
            long shift = haveLvl ? t.lvl.front() - pl.front() : 0;
            size_t m = 0;
            bool ok = true;
            while (m < ps.size() && m < t.steps.size() && ps[m] == t.steps[m]) {
                if (haveLvl && pl[m] + shift != t.lvl[m]) {
                    ok = false;
                    break;
                }
                ++m;
            }
            if (!ok || m == 0) continue;
            Target rest;
            for (size_t i = ps.size(); i-- > m;) {
                rest.steps.push_back(ps[i].reversed());
                rest.lvl.push_back(pl[i] + shift);
            }
            size_t tailStart = rest.steps.size();
            for (size_t i = m; i < t.steps.size(); ++i) rest.steps.push_back(t.steps[i]);
            if (!rest.steps.empty()) {
                if (haveLvl) {
                    for (size_t i = m; i < t.steps.size(); ++i) rest.lvl.push_back(t.lvl[i]);
                } else if (m < t.steps.size()) {
                    // propagate grading into the unmatched tail
                    long prev;
                    WalkStep prevStep;
                    if (tailStart > 0) {
                        prev = rest.lvl[tailStart - 1];
                        prevStep = rest.steps[tailStart - 1];
                    } else {
                        prev = pl[m - 1] + shift;
                        prevStep = ps[m - 1];
                    }
                    try {
                        long g = prev + turnJump(s_, prevStep, t.steps[m]);
                        rest.lvl.push_back(g);
                        for (size_t i = m + 1; i < t.steps.size(); ++i) {
                            g += turnJump(s_, t.steps[i - 1], t.steps[i]);
                            rest.lvl.push_back(g);
                        }
                    } catch (const CurveError&) {
                        continue; // spur or mismatch at the junction
                    }
                }
            }
            acc.push_back({idx, rev, shift});
            if (rest.steps.empty()) {
                RawChain ch;
                ch.pieces = acc;
                ch.circle = circle;
                found.push_back(ch);
            } else {
                dfs(rest, acc, found, circle);
            }
            acc.pop_back();
        }
    }
};

namespace {

struct AssembledChain {
    CosiChain chain;
    GradedCurve total;
};

std::optional<AssembledChain> assemble(const StabilityCondition& sc,
                                       const RawChain& raw,
                                       const std::vector<PhasedObject>& pool) {
    const MarkedSurface& s = sc.surface();
    AssembledChain out;
    out.chain.circle = raw.circle;
    std::vector<WalkStep> word;
    std::vector<long> lvl;
    std::vector<std::pair<GradedCurve, bool>> oriented;
    for (auto& p : raw.pieces) {
        const PhasedObject& base = pool[p.stableIdx];
        GradedCurve c = base.curve.shifted(p.shift);
        oriented.push_back({c, p.reversed});
        out.chain.pieces.push_back({c, base.phase.shifted(p.shift)});
        auto ps = orientedSteps(c, p.reversed);
        auto pl = orientedLevels(c, p.reversed);
        for (size_t i = 0; i < ps.size(); ++i) {
            word.push_back(ps[i]);
            lvl.push_back(pl[i]);
        }
    }
    int n = static_cast<int>(raw.pieces.size());
    int joints = raw.circle ? n : n - 1;
    if (n == 1 && !raw.circle) joints = 0;
    for (int j = 0; j < joints; ++j) {
        auto& [a, arev] = oriented[j];
        auto& [b, brev] = oriented[(j + 1) % n];
        ArcEnd ea = arev ? a.word().steps.front().tailEnd()
                         : a.word().steps.back().headEnd();
        ArcEnd eb = brev ? b.word().steps.back().headEnd()
                         : b.word().steps.front().tailEnd();
        int va = s.vertexOfEnd(ea), vb = s.vertexOfEnd(eb);
        if (va != vb) return std::nullopt;
        out.chain.jointVertex.push_back(va);
        bool aBack = !arev, bBack = brev;
        bool foundGen = false, fromAtoB = true;
        if (a.word() == b.word()) {
            // joint between two parallel copies: use the degree-one class
            auto hab = homBasis(s, a, b);
            auto hba = homBasis(s, b, a);
            if (hab.at(1) > 0) {
                fromAtoB = true;
                foundGen = true;
            } else if (hba.at(1) > 0) {
                fromAtoB = false;
                foundGen = true;
            }
        } else {
            for (const auto& g : boundaryGens(s, a, b)) {
                if (g.vertex != va || g.deg != 1) continue;
                bool srcBack = g.fromXtoY ? aBack : bBack;
                bool dstBack = g.fromXtoY ? bBack : aBack;
                if (g.srcEndBack != srcBack || g.dstEndBack != dstBack) continue;
                fromAtoB = g.fromXtoY;
                foundGen = true;
                break;
            }
        }
        if (!foundGen) return std::nullopt;
        out.chain.quotientFirst.push_back(fromAtoB);
    }
    // reduce the concatenated word with level tracking
    std::vector<WalkStep> st;
    std::vector<long> sl;
    for (size_t i = 0; i < word.size(); ++i) {
        if (!st.empty() && word[i] == st.back().reversed() && lvl[i] == sl.back()) {
            st.pop_back();
            sl.pop_back();
        } else {
            st.push_back(word[i]);
            sl.push_back(lvl[i]);
        }
    }
    if (raw.circle) {
        size_t b = 0, e = st.size();
        while (e - b >= 2 && st[e - 1].reversed() == st[b] && sl[e - 1] == sl[b]) {
            ++b;
            --e;
        }
        st.assign(st.begin() + b, st.begin() + e);
        sl.assign(sl.begin() + b, sl.begin() + e);
    }
    if (st.empty()) return std::nullopt;
    CurveWord ww;
    ww.circle = raw.circle;
    ww.steps = st;
    try {
        out.total = GradedCurve::make(s, ww, sl.front());
    } catch (const CurveError&) {
        return std::nullopt;
    }
    return out;
}

bool hnValid(const CosiChain& ch) {
    int n = ch.length();
    if (n <= 1) return true;
    std::vector<bool> alive(n, true);
    int remaining = n;
    int jointCount = ch.circle ? n : n - 1;
    while (remaining > 0) {
        int lo = -1;
        for (int i = 0; i < n; ++i)
            if (alive[i] && (lo == -1 || ch.pieces[i].phase < ch.pieces[lo].phase))
                lo = i;
        ExactPhase phi = ch.pieces[lo].phase;
        for (int j = 0; j < jointCount; ++j) {
            int a = j, b = (j + 1) % n;
            if (!alive[a] || !alive[b]) continue;
            bool aLow = alive[a] && ch.pieces[a].phase == phi;
            bool bLow = alive[b] && ch.pieces[b].phase == phi;
            if (aLow == bLow) continue;
            bool lowIsQuotient = aLow ? ch.quotientFirst[j] : !ch.quotientFirst[j];
            if (!lowIsQuotient) return false;
        }
        for (int i = 0; i < n; ++i)
            if (alive[i] && ch.pieces[i].phase == phi) {
                alive[i] = false;
                --remaining;
            }
    }
    return true;
}

std::string chainKey(const CosiChain& ch, const MarkedSurface& s) {
    std::vector<std::string> toks;
    for (auto& p : ch.pieces) toks.push_back(p.curve.toString(s));
    if (!ch.circle) {
        std::string fwd, bwd;
        for (auto& t : toks) fwd += t + ";";
        for (auto it = toks.rbegin(); it != toks.rend(); ++it) bwd += *it + ";";
        return std::min(fwd, bwd);
    }
    std::string best;
    int n = static_cast<int>(toks.size());
    for (int r = 0; r < n; ++r) {
        std::string c1, c2;
        for (int i = 0; i < n; ++i) c1 += toks[(r + i) % n] + ";";
        for (int i = 0; i < n; ++i) c2 += toks[((r - i) % n + n) % n] + ";";
        if (best.empty() || c1 < best) best = c1;
        if (c2 < best) best = c2;
    }
    return best;
}

std::optional<std::vector<Int>> solveIntegral(const std::vector<std::vector<Int>>& rowsM,
                                              const std::vector<Int>& v) {
    size_t rows = rowsM.size();
    size_t n = rows ? rowsM[0].size() : 0;
    std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(n + 1));
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = Rat(rowsM[i][j]);
        a[i][n] = Rat(v[i]);
    }
    size_t r = 0;
    std::vector<int> pivotCol;
    std::vector<size_t> pivotRow;
    for (size_t c = 0; c < n && r < rows; ++c) {
        size_t piv = rows;
        for (size_t i = r; i < rows; ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        std::swap(a[r], a[piv]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c] / a[r][c];
            for (size_t j = c; j <= n; ++j) a[i][j] -= f * a[r][j];
        }
        pivotCol.push_back(static_cast<int>(c));
        pivotRow.push_back(r);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (a[i][n] != 0) return std::nullopt;
    std::vector<Int> out(n, 0);
    for (size_t t = 0; t < pivotCol.size(); ++t) {
        Rat val = a[pivotRow[t]][n] / a[pivotRow[t]][pivotCol[t]];
        if (denominator(val) != 1) return std::nullopt;
        out[pivotCol[t]] = numerator(val);
    }
    return out;
}

} // namespace

StabilityCondition StabilityCondition::build(SurfacePtr s, CentralCharge Z,
                                             std::vector<GradedCurve> heartSimples,
                                             int wordCutoff, int chainCutoff) {
    StabilityCondition sc;
    sc.surf_ = std::move(s);
    sc.Z_ = std::move(Z);
    sc.wordCutoff_ = wordCutoff;
    sc.chainCutoff_ = chainCutoff;
    const MarkedSurface& surf = *sc.surf_;

    if ((int)sc.Z_.onBasis.size() != surf.arcCount())
        throw StabError("InvalidHeart", "charge must be given on the arc basis");
    K0Lattice k0 = k0Lattice(surf);
    if ((int)heartSimples.size() != k0.rank)
        throw StabError("InvalidHeart",
                        "finite heart needs " + std::to_string(k0.rank) +
                            " simples, got " + std::to_string(heartSimples.size()));

    for (auto& c : heartSimples) {
        if (!isEmbedded(surf, c))
            throw StabError("InvalidHeart",
                            "heart simple is not embedded: " + c.toString(surf));
        QC z = sc.Z_.eval(classOf(surf, c));
        if (z.isZero())
            throw StabError("InvalidHeart", "heart simple has zero charge");
        if (!inCanonicalHalf(z))
            throw StabError("InvalidHeart",
                            "heart simple charge outside the closed upper half "
                            "plane: " + c.toString(surf) + " Z=" + qcToString(z));
        sc.simples_.push_back({c, ExactPhase::unitWindow(z)});
    }
    for (size_t i = 0; i < sc.simples_.size(); ++i)
        for (size_t j = 0; j < sc.simples_.size(); ++j) {
            auto h = homBasis(surf, sc.simples_[i].curve, sc.simples_[j].curve);
            for (auto& [d, cnt] : h.dim) {
                if (cnt <= 0) continue;
                if (d < 0)
                    throw StabError("InvalidHeart",
                                    "negative-degree morphism between heart simples");
                if (d == 0 && i != j)
                    throw StabError("InvalidHeart",
                                    "degree-zero morphism between distinct simples");
            }
            if (i == j && !sc.simples_[i].curve.isCircle() && h.at(0) != 1)
                throw StabError("InvalidHeart", "heart simple has extra endomorphisms");
        }
    std::vector<std::vector<Int>> m(sc.simples_.size(),
                                    std::vector<Int>(surf.arcCount(), 0));
    sc.simpleClassRows_.assign(surf.arcCount(),
                               std::vector<Int>(sc.simples_.size(), 0));
    for (size_t j = 0; j < sc.simples_.size(); ++j) {
        K0Class k = classOf(surf, sc.simples_[j].curve);
        for (int i = 0; i < surf.arcCount(); ++i) {
            sc.simpleClassRows_[i][j] = k.c[i];
            m[j][i] = k.c[i];
        }
    }
    if (integerRank(m) != (int)sc.simples_.size())
        throw StabError("InvalidHeart", "simple classes do not form a basis");

    sc.computeStableSet();
    return sc;
}

std::optional<std::vector<Int>> StabilityCondition::heartCoords(const K0Class& v) const {
    auto nonneg = [](const std::vector<Int>& n) {
        for (auto& x : n)
            if (x < 0) return false;
        return true;
    };
    auto n1 = solveIntegral(simpleClassRows_, v.c);
    if (n1 && nonneg(*n1)) return n1;
    return std::nullopt;
}

void StabilityCondition::computeStableSet() {
    const MarkedSurface& s = *surf_;
    stables_ = simples_;
    std::sort(stables_.begin(), stables_.end());

    std::vector<CurveWord> candidates = enumerateWords(s, wordCutoff_);
    struct Cand {
        CurveWord w;
        long lambda;
    };
    std::vector<Cand> heartCands;
    std::set<CurveWord> simpleWords;
    for (auto& p : simples_) simpleWords.insert(p.curve.word());
    for (auto& w : candidates) {
        if (simpleWords.count(w)) continue;
        GradedCurve base = GradedCurve::make(s, w, 0);
        K0Class v = classOf(s, base);
        auto n = heartCoords(v);
        if (!n) n = heartCoords(-v);
        if (!n) continue;
        long lambda = 0;
        for (auto& x : *n) lambda += static_cast<long>(x);
        if (lambda < 2) continue;
        heartCands.push_back({w, lambda});
    }
    std::sort(heartCands.begin(), heartCands.end(), [](const Cand& a, const Cand& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        if (a.w.size() != b.w.size()) return a.w.size() < b.w.size();
        return a.w.steps < b.w.steps;
    });

    for (auto& cand : heartCands) {
        ChainSearch cs(*this);
        int budget = std::min<long>(chainCutoff_, cand.lambda);
        auto raws = cs.search(cand.w, std::nullopt, budget, 4 * wordCutoff_ + 8);
        bool anyChain = false, anyValid = false;
        long heartLift = 0;
        bool liftSet = false;
        for (auto& raw : raws) {
            auto a = assemble(*this, raw, stables_);
            if (!a || !(a->total.word() == cand.w)) continue;
            anyChain = true;
            if (!liftSet) {
                heartLift = a->total.lift();
                liftSet = true;
            }
            if (hnValid(a->chain)) anyValid = true;
        }
        if (anyChain && !anyValid) {
            GradedCurve rep = GradedCurve::make(s, cand.w, heartLift);
            QC z = chargeOf(rep);
            if (!z.isZero() && inCanonicalHalf(z))
                stables_.push_back({rep, ExactPhase::unitWindow(z)});
        }
    }
    std::sort(stables_.begin(), stables_.end());
}

std::optional<PhasedObject> StabilityCondition::stableRep(const CurveWord& w) const {
    for (auto& p : stables_)
        if (p.curve.word() == w) return p;
    return std::nullopt;
}

bool StabilityCondition::isStableSupport(const CurveWord& w) const {
    return stableRep(w).has_value();
}

std::vector<CosiChain> StabilityCondition::validChains(const GradedCurve& X) const {
    ChainSearch cs(*this);
    auto raws = cs.search(X.word(), X.lift(), chainCutoff_, 4 * wordCutoff_ + 8);
    std::vector<CosiChain> out;
    std::set<std::string> seen;
    GradedCurve want = GradedCurve::make(*surf_, X.word(), X.lift());
    for (auto& raw : raws) {
        auto a = assemble(*this, raw, stables_);
        if (!a) continue;
        if (!(a->total.word() == want.word() && a->total.lift() == want.lift()))
            continue;
        if (!hnValid(a->chain)) continue;
        std::string key = chainKey(a->chain, *surf_);
        if (seen.insert(key).second) out.push_back(a->chain);
    }
    return out;
}

CosiResult StabilityCondition::cosiDecompose(const GradedCurve& X) const {
    CosiResult r;
    if (X.rank() > 1) return higherRankCircleDecompose(X);
    if (auto rep = stableRep(X.word())) {
        r.stable = true;
        r.stableCircle = X.isCircle();
        long k = X.lift() - rep->curve.lift();
        r.chain.circle = false;
        r.chain.pieces = {PhasedObject{rep->curve.shifted(k), rep->phase.shifted(k)}};
        return r;
    }
    auto chains = validChains(X);
    if (chains.empty())
        throw StabError("CutoffExceeded",
                        "no chain of stable intervals found for " +
                            X.toString(*surf_) + " at the current cutoffs");
    if (chains.size() > 1)
        throw StabError("AmbiguousDecomposition",
                        "multiple valid decompositions survive for " +
                            X.toString(*surf_));
    r.chain = chains.front();
    return r;
}

std::vector<HNFactor> StabilityCondition::hnFiltration(const GradedCurve& X) const {
    CosiResult r = cosiDecompose(X);
    std::vector<HNFactor> out;
    for (auto& p : r.chain.pieces) {
        HNFactor* grp = nullptr;
        for (auto& f : out)
            if (f.phase == p.phase) grp = &f;
        if (!grp) {
            out.push_back(HNFactor{p.phase, QC{}, {}});
            grp = &out.back();
        }
        grp->pieces.push_back(p);
        grp->charge += chargeOf(p.curve);
    }
    std::sort(out.begin(), out.end(),
              [](const HNFactor& a, const HNFactor& b) { return b.phase < a.phase; });
    return out;
}

CosiResult StabilityCondition::higherRankCircleDecompose(const GradedCurve& X) const {
    if (!X.isCircle() || X.rank() < 2) return cosiDecompose(X);
    if (X.localSystem().size() != 1)
        throw StabError("InvalidHeart", "indecomposable circles carry one Jordan block");
    GradedCurve rankOne =
        X.withLocalSystem({JordanBlock{X.localSystem()[0].eigenvalue, 1}});
    CosiResult base = cosiDecompose(rankOne);
    CosiResult r;
    if (base.stable) {
        r.chain.circle = false;
        for (int i = 0; i < X.rank(); ++i)
            r.chain.pieces.push_back(base.chain.pieces.front());
        return r;
    }
    r.chain.circle = base.chain.circle;
    for (int copy = 0; copy < X.rank(); ++copy)
        for (int i = 0; i < base.chain.length(); ++i) {
            r.chain.pieces.push_back(base.chain.pieces[i]);
            if (i < (int)base.chain.jointVertex.size()) {
                r.chain.jointVertex.push_back(base.chain.jointVertex[i]);
                r.chain.quotientFirst.push_back(base.chain.quotientFirst[i]);
            }
        }
    return r;
}

GradedCurve StabilityCondition::heartAlign(const GradedCurve& X) const {
    K0Class v = classOf(*surf_, X);
    if (heartCoords(v)) return X;
    if (heartCoords(-v)) return X.shifted(1);
    return X;
}

StabilityReport StabilityCondition::checkStability() const {
    StabilityReport rep;
    const MarkedSurface& s = *surf_;
    auto flag = [&](const std::string& v) {
        rep.ok = false;
        rep.violations.push_back(v);
    };
    for (auto& p : stables_)
        if (!isEmbedded(s, p.curve))
            flag("stable object not embedded: " + p.curve.toString(s));
    for (auto& p : stables_)
        for (auto& q : stables_) {
            auto h = homBasis(s, p.curve, q.curve);
            for (auto& [d, n] : h.dim) {
                if (n <= 0) continue;
                if (p.phase > q.phase.shifted(d))
                    flag("hom-vanishing violated: " + p.curve.toString(s) + " -> " +
                         q.curve.toString(s) + " in degree " + std::to_string(d));
            }
        }
    for (auto& w : enumerateWords(s, wordCutoff_)) {
        ++rep.objectsChecked;
        try {
            if (isStableSupport(w)) continue;
            GradedCurve base = heartAlign(GradedCurve::make(s, w, 0));
            if (chargeOf(base).isZero()) continue;
            auto chains = validChains(base);
            if (chains.size() > 1) flag("ambiguous decomposition for " + base.toString(s));
        } catch (const StabError&) {
            // cutoff shortfalls are tolerated in the audit
        }
    }
    return rep;
}

Rat StabilityCondition::supportConstantSq() const {
    Rat best(-1);
    for (auto& p : stables_) {
        K0Class k = classOf(*surf_, p.curve);
        Int nrm = maxNorm(k);
        if (nrm == 0) continue;
        Rat val = Z_.eval(k).normSq() / Rat(nrm * nrm);
        if (best < 0 || val < best) best = val;
    }
    return best;
}

Rat StabilityCondition::supportConstantLowerBound() const {
    Rat best(-1);
    for (auto& p : stables_) {
        K0Class k = classOf(*surf_, p.curve);
        Int nrm = maxNorm(k);
        if (nrm == 0) continue;
        QC z = Z_.eval(k);
        Rat re = z.re < 0 ? -z.re : z.re;
        Rat im = z.im < 0 ? -z.im : z.im;
        Rat val = (re > im ? re : im) / Rat(nrm);
        if (best < 0 || val < best) best = val;
    }
    return best;
}

std::optional<PhaseGapArc> StabilityCondition::phaseGap() const {
    std::vector<PhaseMod1> occ;
    for (auto& p : stables_) occ.push_back(phaseMod1(p.phase));
    return largestPhaseGap(occ);
}

std::vector<WallHit> StabilityCondition::detectWalls(const std::vector<K0Class>& xi) const {
    std::vector<WallHit> hits;
    for (size_t i = 0; i < xi.size(); ++i)
        for (size_t j = i + 1; j < xi.size(); ++j) {
            bool prop = true;
            for (size_t a = 0; a < xi[i].c.size() && prop; ++a)
                for (size_t b = a + 1; b < xi[i].c.size() && prop; ++b)
                    if (xi[i].c[a] * xi[j].c[b] != xi[i].c[b] * xi[j].c[a]) prop = false;
            if (prop) continue;
            QC za = Z_.eval(xi[i]), zb = Z_.eval(xi[j]);
            if (za.isZero() || zb.isZero()) continue;
            if (cross(za, zb) == 0) hits.push_back({xi[i], xi[j], true});
        }
    return hits;
}

bool StabilityCondition::isGeneric(const std::vector<K0Class>& xi) const {
    return detectWalls(xi).empty();
}

bool StabilityCondition::equals(const StabilityCondition& o) const {
    if (surf_->canonicalSignature() != o.surf_->canonicalSignature()) return false;
    auto ordA = surf_->canonicalArcOrder();
    auto ordB = o.surf_->canonicalArcOrder();
    std::vector<int> invA(ordA.size()), invB(ordB.size());
    for (size_t a = 0; a < ordA.size(); ++a) invA[ordA[a]] = static_cast<int>(a);
    for (size_t b = 0; b < ordB.size(); ++b) invB[ordB[b]] = static_cast<int>(b);
    for (size_t i = 0; i < ordA.size(); ++i)
        if (!(Z_.onBasis[invA[i]] == o.Z_.onBasis[invB[i]])) return false;
    auto canonWords = [](const StabilityCondition& sc, const std::vector<int>& ord) {
        std::set<std::string> out;
        for (auto& p : sc.stables_) {
            std::ostringstream os;
            os << (p.curve.isCircle() ? "c" : "i") << p.curve.lift() << ":";
            for (auto& st : p.curve.word().steps)
                os << (st.rev ? "~" : "") << ord[st.arc] << ".";
            out.insert(os.str());
        }
        return out;
    };
    return canonWords(*this, ordA) == canonWords(o, ordB);
}

bool simpleCosiCheck(const MarkedSurface& s, const CosiChain& ch) {
    (void)s;
    std::set<CurveWord> words;
    for (auto& p : ch.pieces)
        if (!words.insert(p.curve.word()).second) return false;
    std::set<int> joints(ch.jointVertex.begin(), ch.jointVertex.end());
    return joints.size() == ch.jointVertex.size();
}

EnvelopeType hnEnvelopeType(const MarkedSurface& s, const CosiChain& ch) {
    if (!simpleCosiCheck(s, ch))
        throw StabError("NotSimple", "chain is not a simple decomposition");
    EnvelopeType t;
    t.circle = ch.circle;
    t.N = ch.length();
    for (bool q : ch.quotientFirst)
        if (q) ++t.right;
        else ++t.left;
    return t;
}

namespace {

std::vector<WalkStep> chainWalk(const CosiChain& ch) {
    std::vector<WalkStep> w;
    for (auto& p : ch.pieces)
        for (auto& st : p.curve.word().steps) w.push_back(st);
    return w;
}

bool cyclicallyTrivial(std::vector<WalkStep> w) {
    bool changed = true;
    while (changed && !w.empty()) {
        changed = false;
        for (size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i + 1] == w[i].reversed()) {
                w.erase(w.begin() + i, w.begin() + i + 2);
                changed = true;
                break;
            }
        if (!changed && w.size() >= 2 && w.front() == w.back().reversed()) {
            w.pop_back();
            w.erase(w.begin());
            changed = true;
        }
    }
    return w.empty();
}

} // namespace

std::vector<PolygonViolation> noncrossingCheck(const MarkedSurface& s,
                                               const CosiChain& cx,
                                               const CosiChain& cy) {
    std::vector<PolygonViolation> out;
    struct Event {
        size_t px, py;
        int kind;
    };
    std::vector<Event> events;
    std::vector<size_t> offX{0}, offY{0};
    for (auto& p : cx.pieces) offX.push_back(offX.back() + p.curve.word().size());
    for (auto& p : cy.pieces) offY.push_back(offY.back() + p.curve.word().size());

    for (size_t i = 0; i < cx.pieces.size(); ++i)
        for (size_t j = 0; j < cy.pieces.size(); ++j) {
            auto& a = cx.pieces[i].curve;
            auto& b = cy.pieces[j].curve;
            if (a.word() == b.word()) continue;
            for (auto& c : crossings(s, a, b))
                events.push_back(
                    {offX[i] + std::max(0, c.stepX), offY[j] + std::max(0, c.stepY), 0});
            for (auto& g : boundaryGens(s, a, b)) {
                bool aBack = g.fromXtoY ? g.srcEndBack : g.dstEndBack;
                bool bBack = g.fromXtoY ? g.dstEndBack : g.srcEndBack;
                events.push_back({offX[i] + (aBack ? a.word().size() - 1 : 0),
                                  offY[j] + (bBack ? b.word().size() - 1 : 0), 1});
            }
        }

    auto wx = chainWalk(cx);
    auto wy = chainWalk(cy);

    bool allProportional = [&]() {
        std::vector<K0Class> cls;
        for (auto& p : cx.pieces) cls.push_back(classOf(s, p.curve));
        for (auto& p : cy.pieces) cls.push_back(classOf(s, p.curve));
        for (size_t i = 0; i < cls.size(); ++i)
            for (size_t j = i + 1; j < cls.size(); ++j)
                for (size_t a = 0; a < cls[i].c.size(); ++a)
                    for (size_t b = a + 1; b < cls[i].c.size(); ++b)
                        if (cls[i].c[a] * cls[j].c[b] != cls[i].c[b] * cls[j].c[a])
                            return false;
        return true;
    }();

    for (size_t e1 = 0; e1 < events.size(); ++e1)
        for (size_t e2 = e1 + 1; e2 < events.size(); ++e2) {
            auto [ax, ay, k1] = events[e1];
            auto [bx, by, k2] = events[e2];
            if (ax == bx && ay == by) continue;
            size_t lx = std::min(ax, bx), hx = std::max(ax, bx);
            size_t ly = std::min(ay, by), hy = std::max(ay, by);
            std::vector<WalkStep> loop;
            for (size_t t = lx + 1; t <= hx && t < wx.size(); ++t)
                loop.push_back(wx[t]);
            for (size_t t = hy; t > ly && t < wy.size(); --t)
                loop.push_back(wy[t].reversed());
            if (loop.empty()) continue;
            if (!cyclicallyTrivial(loop)) continue;
            if (allProportional) continue;
            PolygonViolation v;
            v.type = (k1 == 0 && k2 == 0) ? 1 : (k1 == 1 && k2 == 1) ? 2 : 3;
            std::ostringstream os;
            os << "polygon between X[" << lx << ".." << hx << "] and Y[" << ly
               << ".." << hy << "]";
            v.witness = os.str();
            out.push_back(v);
        }
    return out;
}

GradedCurve concatenateChain(const MarkedSurface& s,
                             const std::vector<PhasedObject>& pieces,
                             const std::vector<int>& jointVertex, bool circle) {
    if (pieces.empty()) throw CurveError("EndpointMismatch", "empty chain");
    std::vector<WalkStep> word;
    std::vector<long> lvl;
    for (size_t i = 0; i < pieces.size(); ++i) {
        auto& c = pieces[i].curve;
        std::vector<WalkStep> st = c.word().steps;
        std::vector<long> lv = c.levels();
        if (!word.empty()) {
            int prevV = s.vertexOfEnd(word.back().headEnd());
            int f = s.vertexOfEnd(st.front().tailEnd());
            int b = s.vertexOfEnd(st.back().headEnd());
            bool needRev = (f != prevV);
            if (needRev && b != prevV)
                throw CurveError("EndpointMismatch",
                                 "chain pieces do not share the joint vertex");
            if (needRev) {
                std::vector<WalkStep> rs;
                std::vector<long> rl;
                for (size_t t = st.size(); t-- > 0;) {
                    rs.push_back(st[t].reversed());
                    rl.push_back(lv[t]);
                }
                st = rs;
                lv = rl;
            }
            if (i - 1 < jointVertex.size() && jointVertex[i - 1] >= 0 &&
                prevV != jointVertex[i - 1])
                throw CurveError("EndpointMismatch", "joint vertex mismatch");
        }
        for (size_t t = 0; t < st.size(); ++t) {
            if (!word.empty() && st[t] == word.back().reversed() && lv[t] == lvl.back()) {
                word.pop_back();
                lvl.pop_back();
                continue;
            }
            word.push_back(st[t]);
            lvl.push_back(lv[t]);
        }
    }
    if (word.empty()) throw CurveError("InvalidWalk", "chain collapses");
    CurveWord w;
    w.circle = circle;
    w.steps = word;
    return GradedCurve::make(s, w, lvl.front());
}

} // namespace surfstab
