#pragma once
// Bruhat-cell machinery shared by the rank-two matrix groups here (Sp4, U4,
// G2 in its 7-dimensional model): cell enumeration, structural factorization
// g = u . wdot . b through one pattern scan and one LU split, and the
// reduction of P wf P cells to the listed J-double-coset representatives.
//
// A group plugs in: its field, the coordinate subgroups of U (bijective
// parametrization), the torus, Weyl representatives for the two simple
// reflections, the Levi coordinate used to split P = (transversal) . J, the
// J-torus, and the listed representatives per P-cell family.

#include <map>

#include "fjmod/fqmat.hpp"
#include "fjmod/parallel.hpp"

namespace fjmod {

template <int N>
struct CoordGroup {
    int size = 0;                            // number of parameter values
    std::function<FMat<N>(int)> mat;         // index 0 must give the identity
};

template <class Field, int N>
struct BruhatMachine {
    const Field* F = nullptr;
    std::vector<CoordGroup<N>> ucoords;      // ordered parametrization of U
    CoordGroup<N> torus;                     // all torus elements
    std::vector<std::vector<int>> weyl_words;  // over {0,1} = {alpha, beta}
    FMat<N> salpha, sbeta;

    std::vector<FMat<N>> wdot;               // representative per Weyl word
    std::vector<std::array<int, N>> pattern; // pivot pattern per Weyl element
    std::vector<std::vector<int>> phi_w;     // ucoord indices flipped by w^-1
    long long order = 0;

    void build() {
        int nw = (int)weyl_words.size();
        wdot.resize(nw);
        pattern.resize(nw);
        phi_w.resize(nw);
        for (int i = 0; i < nw; ++i) {
            FMat<N> m = fm_identity<Field, N>(*F);
            for (int s : weyl_words[i]) m = fm_mul(*F, m, s == 0 ? salpha : sbeta);
            wdot[i] = m;
            pattern[i] = bruhat_pattern(*F, m);
            for (int j = 0; j < i; ++j)
                if (pattern[j] == pattern[i])
                    throw std::logic_error("Weyl patterns not distinct");
            // u2 ranges over U ∩ wdot^-1 U^- wdot: coordinates sent negative
            // by conjugation with wdot itself
            FMat<N> mi = fm_inv(*F, m);
            for (size_t c = 0; c < ucoords.size(); ++c) {
                FMat<N> conj = fm_mul(*F, fm_mul(*F, m, ucoords[c].mat(1)), mi);
                bool upper = true;
                for (int r = 1; r < N && upper; ++r)
                    for (int cc = 0; cc < r; ++cc)
                        if (conj(r, cc)) { upper = false; break; }
                if (!upper) phi_w[i].push_back((int)c);
            }
        }
        order = 0;
        long long usize = 1;
        for (const auto& c : ucoords) usize *= c.size;
        for (int i = 0; i < nw; ++i) {
            long long cell = (long long)torus.size * usize;
            for (int c : phi_w[i]) cell *= ucoords[c].size;
            order += cell;
        }
    }

    int weyl_of(const FMat<N>& g) const {
        auto pat = bruhat_pattern(*F, g);
        for (size_t i = 0; i < pattern.size(); ++i)
            if (pattern[i] == pat) return (int)i;
        throw std::logic_error("pattern matches no Weyl element");
    }

    // g = u . wdot[w] . b with u in U and b in B (upper triangular)
    struct UWB {
        int w;
        FMat<N> u, b;
    };
    UWB factor_uwb(const FMat<N>& g) const {
        UWB r;
        r.w = weyl_of(g);
        FMat<N> A = fm_mul(*F, fm_inv(*F, wdot[r.w]), g);
        FMat<N> L, R;
        lu_split(*F, A, L, R);
        r.u = fm_mul(*F, fm_mul(*F, wdot[r.w], L), fm_inv(*F, wdot[r.w]));
        r.b = R;
        return r;
    }

    // stream every element exactly once, in a fixed cell-lexicographic order
    template <class Fn>
    void enumerate(Fn f) const {
        for (size_t w = 0; w < wdot.size(); ++w) enumerate_cell((int)w, f);
    }

    template <class Fn>
    void enumerate_cell(int wcell, Fn f) const {
        std::vector<int> uidx(ucoords.size());
        {
            size_t w = (size_t)wcell;
            const auto& flip = phi_w[w];
            long long u2count = 1;
            for (int c : flip) u2count *= ucoords[c].size;
            for (int t = 0; t < torus.size; ++t) {
                FMat<N> tw = fm_mul(*F, torus.mat(t), wdot[w]);
                // enumerate u in U
                std::fill(uidx.begin(), uidx.end(), 0);
                while (true) {
                    FMat<N> u = fm_identity<Field, N>(*F);
                    for (size_t c = 0; c < ucoords.size(); ++c)
                        if (uidx[c]) u = fm_mul(*F, u, ucoords[c].mat(uidx[c]));
                    FMat<N> head = fm_mul(*F, u, tw);
                    for (long long m = 0; m < u2count; ++m) {
                        long long mm = m;
                        FMat<N> tail = head;
                        for (int c : flip) {
                            int v = (int)(mm % ucoords[c].size);
                            mm /= ucoords[c].size;
                            if (v) tail = fm_mul(*F, tail, ucoords[c].mat(v));
                        }
                        f(tail);
                    }
                    size_t c = 0;
                    while (c < ucoords.size() && ++uidx[c] == ucoords[c].size) {
                        uidx[c] = 0;
                        ++c;
                    }
                    if (c == ucoords.size()) break;
                }
            }
        }
    }
};

// Hooks describing how P splits off J and which representatives are listed.
template <class Field, int N>
struct CosetHooks {
    // families: per Weyl element, the index of its P-cell family
    std::vector<int> family_of_weyl;
    std::vector<FMat<N>> family_rep;  // chosen wf per family (family 0 = P)
    // splitting wdot = m1 . wf . m2 . D0 per Weyl element
    std::vector<FMat<N>> split_m1, split_m2, split_d0;
    // listed double-coset representatives with their family ids
    std::vector<FMat<N>> listed;
    std::vector<int> listed_family;
    // P = transversal . J = J . transversal
    std::function<int(const FMat<N>&)> levi_coord;        // the transversal parameter
    std::function<FMat<N>(int)> transversal;              // parameter -> matrix
    CoordGroup<N> jtorus;                                 // J ∩ T
};

template <class Field, int N>
struct Factorization {
    FMat<N> j1, j2;
    int rep = 0;  // index into hooks.listed
};

// Build the wdot = m1 wf m2 D0 splitting table by scanning the 2x|fam|x2
// candidates for a diagonal remainder.
template <class Field, int N>
void build_split_table(const Field& F, BruhatMachine<Field, N>& B, CosetHooks<Field, N>& H) {
    size_t nw = B.wdot.size();
    H.split_m1.resize(nw);
    H.split_m2.resize(nw);
    H.split_d0.resize(nw);
    H.family_of_weyl.assign(nw, -1);
    FMat<N> id = fm_identity<Field, N>(F);
    std::vector<FMat<N>> ms = {id, B.sbeta, fm_inv(F, B.sbeta)};
    for (size_t w = 0; w < nw; ++w) {
        bool found = false;
        for (size_t f = 0; f < H.family_rep.size() && !found; ++f)
            for (const auto& m1 : ms)
                for (const auto& m2 : ms) {
                    FMat<N> cand = fm_mul(F, fm_mul(F, m1, H.family_rep[f]), m2);
                    FMat<N> D = fm_mul(F, fm_inv(F, cand), B.wdot[w]);
                    bool diag = true;
                    for (int i = 0; i < N && diag; ++i)
                        for (int j = 0; j < N; ++j)
                            if (i != j && D(i, j)) { diag = false; break; }
                    if (diag) {
                        H.split_m1[w] = m1;
                        H.split_m2[w] = m2;
                        H.split_d0[w] = D;
                        H.family_of_weyl[w] = (int)f;
                        found = true;
                        break;
                    }
                }
        if (!found) throw std::logic_error("no P-cell splitting for a Weyl element");
    }
}

// The structural factorizer g = j1 . listed[rep] . j2. Middle reductions are
// memoized per torus remainder.
template <class Field, int N>
class DoubleCosetFactorizer {
public:
    DoubleCosetFactorizer(const Field& F, const BruhatMachine<Field, N>& B,
                          const CosetHooks<Field, N>& H)
        : F_(F), B_(B), H_(H) {}

    Factorization<Field, N> factorize(const FMat<N>& g) const {
        auto uwb = B_.factor_uwb(g);
        int fam = H_.family_of_weyl[uwb.w];
        // g = u . m1 wf m2 D0 . b = p1 . wf . p2
        FMat<N> p1 = fm_mul(F_, uwb.u, H_.split_m1[uwb.w]);
        FMat<N> p2 = fm_mul(F_, fm_mul(F_, H_.split_m2[uwb.w], H_.split_d0[uwb.w]), uwb.b);
        int a1 = H_.levi_coord(p1);
        FMat<N> j1 = fm_mul(F_, p1, fm_inv(F_, H_.transversal(a1)));
        int a2 = H_.levi_coord(p2);
        FMat<N> j2 = fm_mul(F_, fm_inv(F_, H_.transversal(a2)), p2);
        FMat<N> mid = fm_mul(F_, fm_mul(F_, H_.transversal(a1), H_.family_rep[fam]),
                             H_.transversal(a2));
        const MidReduce& mr = reduce_middle(fam, mid);
        Factorization<Field, N> out;
        out.rep = mr.rep;
        out.j1 = fm_mul(F_, j1, mr.jl);
        out.j2 = fm_mul(F_, mr.jr, j2);
        return out;
    }

private:
    struct MidReduce {
        FMat<N> jl, jr;  // mid = jl^-1 . listed[rep] . jr^-1 rearranged below
        int rep;
    };
    const Field& F_;
    const BruhatMachine<Field, N>& B_;
    const CosetHooks<Field, N>& H_;
    mutable std::map<std::pair<int, FMat<N>>, MidReduce> memo_;
    mutable std::mutex mu_;

    const MidReduce& reduce_middle(int fam, const FMat<N>& mid) const {
        std::lock_guard<std::mutex> lk(mu_);
        auto key = std::make_pair(fam, mid);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        // scan listed representatives in ascending order so that every middle
        // of a torus-connected coset reduces to the same (smallest) one
        for (size_t r = 0; r < H_.listed.size(); ++r) {
            if (H_.listed_family[r] != fam) continue;
            for (int u = 0; u < H_.jtorus.size; ++u) {
                FMat<N> left = fm_mul(F_, H_.jtorus.mat(u), mid);
                for (int s = 0; s < H_.jtorus.size; ++s) {
                    if (fm_mul(F_, left, H_.jtorus.mat(s)) == H_.listed[r]) {
                        MidReduce mr;
                        mr.jl = fm_inv(F_, H_.jtorus.mat(u));
                        mr.jr = fm_inv(F_, H_.jtorus.mat(s));
                        mr.rep = (int)r;
                        return memo_.emplace(key, mr).first->second;
                    }
                }
            }
        }
        throw std::logic_error("middle torus form reaches no listed representative");
    }
};

// With J = Stab(e1), the double coset J r J corresponds exactly to the
// J-orbit of the vector r^-1 e1: right cosets Jg inside it are keyed by
// g^-1 e1, and r' = u^-1 r j^-1 for u, j in J iff r'^-1 e1 lies in the orbit.
// This gives the true partition of the listed representatives and the exact
// coset sizes |J r J| = |J| * |orbit| without enumerating the group.
template <class Field, int N>
struct CosetPartition {
    std::vector<int> class_of;        // per listed representative
    std::vector<long long> orbit_size;  // per class
    std::vector<int> canonical;       // first listed index per class
};

template <class Field, int N>
CosetPartition<Field, N> coset_partition(const Field& F, const std::vector<FMat<N>>& listed,
                                         const std::vector<FMat<N>>& j_generators) {
    using Vec = std::array<int, N>;
    auto act = [&](const FMat<N>& g, const Vec& v) {
        Vec out{};
        for (int i = 0; i < N; ++i) {
            int s = 0;
            for (int j = 0; j < N; ++j)
                if (v[j]) s = F.add(s, F.mul(g(i, j), v[j]));
            out[i] = s;
        }
        return out;
    };
    std::vector<FMat<N>> gens = j_generators;
    for (const auto& g : j_generators) gens.push_back(fm_inv(F, g));
    CosetPartition<Field, N> out;
    out.class_of.assign(listed.size(), -1);
    std::map<Vec, int> seen;  // vector -> class id
    for (size_t i = 0; i < listed.size(); ++i) {
        Vec v{};
        FMat<N> ri = fm_inv(F, listed[i]);
        for (int r = 0; r < N; ++r) v[r] = ri(r, 0);
        auto it = seen.find(v);
        if (it != seen.end()) {
            out.class_of[i] = it->second;
            continue;
        }
        int cls = (int)out.orbit_size.size();
        out.class_of[i] = cls;
        out.canonical.push_back((int)i);
        std::vector<Vec> stack{v};
        seen.emplace(v, cls);
        long long n = 0;
        while (!stack.empty()) {
            Vec x = stack.back();
            stack.pop_back();
            ++n;
            for (const auto& g : gens) {
                Vec y = act(g, x);
                if (seen.emplace(y, cls).second) stack.push_back(y);
            }
        }
        out.orbit_size.push_back(n);
    }
    return out;
}

}  // namespace fjmod
