#pragma once
// Heisenberg and Jacobi groups in the three displayed conventions, and the
// Weil representations as certified representations of the Jacobi groups.
// The two SL2 conventions differ in the symplectic form (2x1y2 - 2x2y1
// versus -2x1y2 + 2x2y1) and hence in the Heisenberg cocycle and the w-row
// of the action; the unitary convention lives on E^2 + k with the half-trace
// twist. Sign subtleties are guarded by certify_weil, which checks the
// central character, all Heisenberg pairs, and the semidirect compatibility
// exactly, and names the failing pair on violation.

#include "fjmod/sl2.hpp"

namespace fjmod {

enum class WeilConvention { Sp4Style, G2Style, UnitaryStyle };

struct HeisElem {
    int x = 0, y = 0, z = 0;
    friend bool operator==(const HeisElem& a, const HeisElem& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
    struct Hash {
        size_t operator()(const HeisElem& h) const {
            return ((size_t)h.x * 1315423911u) ^ ((size_t)h.y * 2654435761u) ^ (size_t)h.z;
        }
    };
};

// W-part coordinates x,y live in k (matrix conventions) or E (unitary);
// z always lives in k.
struct HeisModel {
    using Elem = HeisElem;
    WeilConvention conv;
    const FqField* k = nullptr;
    const FqExtField* E = nullptr;  // set only for UnitaryStyle

    int wsize() const { return conv == WeilConvention::UnitaryStyle ? E->q * E->q : k->q; }
    long long order() const { return (long long)wsize() * wsize() * k->q; }

    int cocycle(const Elem& a, const Elem& b) const {
        switch (conv) {
            case WeilConvention::Sp4Style:
                return k->sub(k->mul(a.x, b.y), k->mul(b.x, a.y));
            case WeilConvention::G2Style:
                return k->sub(k->mul(b.x, a.y), k->mul(a.x, b.y));
            case WeilConvention::UnitaryStyle: {
                // (1/2) Tr(<u1,u2>), <u1,u2> = x1 conj(y2) - y1 conj(x2)
                int form = E->sub(E->mul(a.x, E->frob(b.y)), E->mul(a.y, E->frob(b.x)));
                int tr = E->trace(form);
                return k->mul(tr, k->inv(k->from_int(2)));
            }
        }
        return 0;
    }
    Elem add(const Elem& a, const Elem& b) const {
        if (conv == WeilConvention::UnitaryStyle)
            return {E->add(a.x, b.x), E->add(a.y, b.y), k->add(k->add(a.z, b.z), cocycle(a, b))};
        return {k->add(a.x, b.x), k->add(a.y, b.y), k->add(k->add(a.z, b.z), cocycle(a, b))};
    }
    Elem neg(const Elem& a) const {
        if (conv == WeilConvention::UnitaryStyle)
            return {E->neg(a.x), E->neg(a.y), k->sub(cocycle(a, a), a.z)};
        return {k->neg(a.x), k->neg(a.y), k->sub(cocycle(a, a), a.z)};
    }
    Elem id() const { return {0, 0, 0}; }
    template <class Fn>
    void for_each(Fn f) const {
        int w = wsize();
        for (int x = 0; x < w; ++x)
            for (int y = 0; y < w; ++y)
                for (int z = 0; z < k->q; ++z) f(Elem{x, y, z});
    }
    // the W-part acted on from the right by the 2x2 level group; the G2
    // convention acts through g* = d1 g d1, which is how conjugation inside
    // G2 moves the V-coordinates (the projection J -> SL2 x| H uses g*)
    Elem act(const Elem& h, const FMat<2>& g) const {
        if (conv == WeilConvention::UnitaryStyle) {
            int x = E->add(E->mul(h.x, g(0, 0)), E->mul(h.y, g(1, 0)));
            int y = E->add(E->mul(h.x, g(0, 1)), E->mul(h.y, g(1, 1)));
            return {x, y, h.z};
        }
        int b = g(0, 1), c = g(1, 0);
        if (conv == WeilConvention::G2Style) { b = k->neg(b); c = k->neg(c); }
        int x = k->add(k->mul(h.x, g(0, 0)), k->mul(h.y, c));
        int y = k->add(k->mul(h.x, b), k->mul(h.y, g(1, 1)));
        return {x, y, h.z};
    }
};

// Semidirect product L x| H with L = SL2(k) or U2(k) acting on W from the
// right: (g1, h1)(g2, h2) = (g1 g2, h1.g2 + h2).
template <class LModel>
struct JacobiModel {
    struct Elem {
        FMat<2> g;
        HeisElem h;
        friend bool operator==(const Elem& a, const Elem& b) { return a.g == b.g && a.h == b.h; }
        struct Hash {
            size_t operator()(const Elem& e) const {
                return FMat<2>::Hash{}(e.g) * 1000003u ^ HeisElem::Hash{}(e.h);
            }
        };
    };
    const LModel* L = nullptr;
    const HeisModel* H = nullptr;

    Elem id() const { return {L->id(), H->id()}; }
    Elem mul(const Elem& a, const Elem& b) const {
        return {L->mul(a.g, b.g), H->add(H->act(a.h, b.g), b.h)};
    }
    Elem inv(const Elem& a) const {
        FMat<2> gi = L->inv(a.g);
        return {gi, H->neg(H->act(a.h, gi))};
    }
    long long order() const { return L->order() * H->order(); }
    template <class Fn>
    void for_each(Fn f) const {
        L->for_each([&](const FMat<2>& g) {
            H->for_each([&](const HeisElem& h) { f(Elem{g, h}); });
        });
    }
    std::vector<Elem> generators() const {
        std::vector<Elem> out;
        for (const auto& g : L->generators()) out.push_back({g, H->id()});
        int one = 1;
        out.push_back({L->id(), HeisElem{one, 0, 0}});
        out.push_back({L->id(), HeisElem{0, one, 0}});
        out.push_back({L->id(), HeisElem{0, 0, one}});
        return out;
    }
};

using Sl2Jacobi = JacobiModel<Sl2Model>;

// ---- the matrix-convention Weil representations on S(k), dim q ----

// Heisenberg action on the delta basis, fixed by the convention's displayed
// formulas; [x,y,z] is split as [x,0,*] + [0,y,0] with the cocycle correction.
inline CMat weil_h_action(const Sl2Setup& S, WeilConvention conv, const AddChar& psi,
                          const HeisModel& H, const HeisElem& h) {
    const FqField& k = S.k;
    int q = k.q, N = 2 * k.p;
    int zc = conv == WeilConvention::Sp4Style ? k.sub(h.z, k.mul(h.x, h.y))
                                              : k.add(h.z, k.mul(h.x, h.y));
    (void)H;
    CMat M(q, q);
    int two = k.from_int(2);
    for (int s = 0; s < q; ++s) {
        // [0,y,0] multiplies delta_s by psi(+-2sy), then [x,0,zc] shifts to s-x
        int dst = k.sub(s, h.x);
        int arg = k.mul(two, k.mul(s, h.y));
        if (conv == WeilConvention::G2Style) arg = k.neg(arg);
        M(dst, s) = psi.value(zc, N) * psi.value(arg, N);
    }
    return M;
}

inline CMat weil_sl2_matrix(const Sl2Setup& S, WeilConvention conv, const AddChar& psi,
                            const FMat<2>& g) {
    const FqField& k = S.k;
    int q = k.q, N = 2 * k.p;
    int two = k.from_int(2);
    MultChar eps = eps_char(k);
    auto D = [&](int a) {
        CMat M(q, q);
        CycloNum e = eps.value(a, N);
        int ai = k.inv(a);
        for (int s = 0; s < q; ++s) M(k.mul(ai, s), s) = e;
        return M;
    };
    auto Nn = [&](int b) {
        CMat M(q, q);
        for (int s = 0; s < q; ++s) M(s, s) = psi.value(k.mul(b, k.mul(s, s)), N);
        return M;
    };
    // Both matrix conventions share this SL2 action: adapting the formulas to
    // the negated symplectic form moves the sign into the Heisenberg rows and
    // the twisted action, not the level action. (Taking the displayed G2
    // w-row with psi(-2xb xi) literally fails the relation certifier on the
    // semidirect pairs; the certified adapted row is psi(+2xb xi).)
    CycloNum gi = gauss_gamma(k, psi, 1, N).inverse();
    CMat W(q, q);
    for (int s = 0; s < q; ++s)
        for (int xi = 0; xi < q; ++xi)
            W(xi, s) = gi * psi.value(k.mul(two, k.mul(s, xi)), N);
    Sl2Bruhat br = sl2_bruhat(k, g);
    if (!br.big_cell) return D(br.diag_a) * Nn(br.upper_last);
    return Nn(br.upper_first) * D(br.diag_a) * W * Nn(br.upper_last);
}

struct WeilRep {
    WeilConvention conv;
    AddChar psi;
    Rep<Sl2Jacobi> rep;
};

inline WeilRep build_weil(const Sl2Setup& S, WeilConvention conv, const Sl2Jacobi& J,
                          int psi_scale = 1) {
    if (conv == WeilConvention::UnitaryStyle)
        throw std::domain_error("unitary convention lives on the U2 Jacobi group");
    WeilRep w;
    w.conv = conv;
    w.psi = S.psi.scaled(psi_scale);
    w.rep.G = &J;
    w.rep.dim = S.k.q;
    for (int s = 0; s < S.k.q; ++s) w.rep.labels.push_back("delta_" + std::to_string(s));
    const Sl2Setup* Sp = &S;
    AddChar psi = w.psi;
    const HeisModel* H = J.H;
    w.rep.eval_raw = [Sp, conv, psi, H](const Sl2Jacobi::Elem& e) {
        return weil_sl2_matrix(*Sp, conv, psi, e.g) * weil_h_action(*Sp, conv, psi, *H, e.h);
    };
    return w;
}

// RelationViolation guard: central character, Heisenberg pairs (exhaustive
// when |H| is small), semidirect compatibility, and sampled level pairs.
template <class Jac>
void certify_weil(const Rep<Jac>& rep, const Jac& J, const FqField& k, int conductor,
                  const AddChar& psi, int random_pairs, uint64_t seed) {
    using Elem = typename Jac::Elem;
    if (rep.eval(J.id()) != CMat::identity(rep.dim))
        throw std::logic_error("RelationViolation: identity");
    for (int z = 0; z < k.q; ++z) {
        Elem c{J.L->id(), HeisElem{0, 0, z}};
        if (rep.eval(c) != psi.value(z, conductor) * CMat::identity(rep.dim))
            throw std::logic_error("RelationViolation: central character at z=" +
                                   std::to_string(z));
    }
    // Heisenberg pairs: exhaustive while |H| stays desk-sized, sampled beyond
    std::vector<HeisElem> hs;
    J.H->for_each([&](const HeisElem& h) { hs.push_back(h); });
    std::vector<CMat> hmat;
    hmat.reserve(hs.size());
    for (const auto& h : hs) hmat.push_back(rep.eval(Elem{J.L->id(), h}));
    std::unordered_map<HeisElem, size_t, HeisElem::Hash> hidx;
    for (size_t i = 0; i < hs.size(); ++i) hidx[hs[i]] = i;
    std::mt19937_64 rng(seed);
    auto check_hpair = [&](size_t i, size_t j) {
        HeisElem sum = J.H->add(hs[i], hs[j]);
        if (hmat[i] * hmat[j] != hmat[hidx.at(sum)])
            throw std::logic_error("RelationViolation: Heisenberg pair (" +
                                   std::to_string(i) + "," + std::to_string(j) + ")");
    };
    if (hs.size() <= 729) {
        for (size_t i = 0; i < hs.size(); ++i)
            for (size_t j = 0; j < hs.size(); ++j) check_hpair(i, j);
    } else {
        for (int t = 0; t < 4000; ++t) check_hpair(rng() % hs.size(), rng() % hs.size());
    }
    // semidirect compatibility on level generators
    size_t hcap = hs.size() <= 729 ? hs.size() : 729;
    for (const auto& g : J.L->generators()) {
        CMat A = rep.eval(Elem{g, J.H->id()});
        CMat Ai = rep.eval(Elem{J.L->inv(g), J.H->id()});
        for (size_t t = 0; t < hcap; ++t) {
            size_t i = hs.size() <= 729 ? t : rng() % hs.size();
            HeisElem moved = J.H->act(hs[i], J.L->inv(g));
            if (A * hmat[i] * Ai != hmat[hidx.at(moved)])
                throw std::logic_error("RelationViolation: semidirect pair");
        }
    }
    // random product pairs across the whole Jacobi group
    std::vector<Elem> pool;
    J.for_each([&](const Elem& e) { pool.push_back(e); });
    for (int t = 0; t < random_pairs; ++t) {
        const Elem& a = pool[rng() % pool.size()];
        const Elem& b = pool[rng() % pool.size()];
        if (rep.eval(J.mul(a, b)) != rep.eval(a) * rep.eval(b))
            throw std::logic_error("RelationViolation: random product pair");
    }
}

// Solve the invariant pairing tB rho(iota g) = ... i.e. find symmetric B with
// rho(g)^T B rho(iota g) = B for all generators; unique up to scalar when
// iota-twist is the dual. Deterministic scaling: first nonzero entry 1.
template <class Model, class Iota>
CMat solve_invariant_pairing(const Rep<Model>& rho,
                             const std::vector<typename Model::Elem>& gens, Iota iota) {
    std::vector<CMat> space = full_endomorphism_basis(rho.dim);
    for (const auto& g : gens) {
        CMat A = rho.eval(g).transpose(), Bm = rho.eval(iota(g));
        space = refine_space(space, [&](const CMat& B) { return A * B * Bm - B; });
        if (space.empty()) break;
    }
    if (space.size() != 1)
        throw std::logic_error("invariant pairing space has dimension " +
                               std::to_string(space.size()));
    CMat B = space[0];
    for (auto& v : B.a)
        if (!v.is_zero()) {
            CycloNum inv = v.inverse();
            for (auto& w : B.a) w = inv * w;
            break;
        }
    return B;
}

// sigma_pi = pi (x) omega_psi as a representation of J, evaluated through the
// J-coordinates, together with the bilinear pairing and its transpose.
template <class Ambient>
struct PairedRepT {
    const Ambient* G = nullptr;
    int dim = 0;
    CMat pairing, pairing_inv;
    std::function<CMat(const typename Ambient::Elem&)> eval_raw;
    size_t memo_cap = SIZE_MAX;  // bound the cache for the big extended runs
    mutable std::unordered_map<typename Ambient::Elem, CMat, typename Ambient::Elem::Hash> memo;

    CMat eval(const typename Ambient::Elem& j) const {
        auto it = memo.find(j);
        if (it != memo.end()) return it->second;
        CMat m = eval_raw(j);
        if (memo.size() < memo_cap) memo.emplace(j, m);
        return m;
    }
    CMat transpose_op(const CMat& A) const { return pairing_inv * A.transpose() * pairing; }
};


}  // namespace fjmod
