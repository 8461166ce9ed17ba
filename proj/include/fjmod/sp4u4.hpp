#pragma once
// Sp4(k) and U4(k) preserving the antidiagonal form, their Fourier-Jacobi
// subgroups J = Stab(e1) with the explicit isomorphisms from SL2 x| H and
// U2 x| H_E, the MVW involution iota = conj by diag(-1,-1,1,1), the double
// coset representatives t(a), eta(a), xi(a), and the structural factorizer.

#include "fjmod/coset.hpp"
#include "fjmod/u2.hpp"

namespace fjmod {

// ---------------- Sp4 ----------------

struct Sp4Model {
    using Elem = FMat<4>;
    const FqField* F = nullptr;
    BruhatMachine<FqField, 4> bruhat;
    CosetHooks<FqField, 4> hooks;
    std::unique_ptr<DoubleCosetFactorizer<FqField, 4>> factorizer;

    Elem id() const { return fm_identity<FqField, 4>(*F); }
    Elem mul(const Elem& a, const Elem& b) const { return fm_mul(*F, a, b); }
    Elem inv(const Elem& a) const { return fm_inv(*F, a); }
    long long order() const { return bruhat.order; }

    // g Omega g^T = Omega, Omega the antidiagonal symplectic form
    bool member(const Elem& g) const {
        auto B = [&](int i, int j) {
            int s = 0;
            s = F->add(s, F->mul(g(i, 0), g(j, 3)));
            s = F->add(s, F->mul(g(i, 1), g(j, 2)));
            s = F->sub(s, F->mul(g(i, 2), g(j, 1)));
            s = F->sub(s, F->mul(g(i, 3), g(j, 0)));
            return s;
        };
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                int want = 0;
                if (i == 0 && j == 3) want = 1;
                if (i == 1 && j == 2) want = 1;
                if (B(i, j) != want) return false;
            }
        return true;
    }

    Elem torus(int a, int b) const {
        Elem m;
        m.set(0, 0, a); m.set(1, 1, b); m.set(2, 2, F->inv(b)); m.set(3, 3, F->inv(a));
        return m;
    }
    Elem xroot(int which, int t) const {  // alpha, beta, alpha+beta, 2alpha+beta
        Elem m = id();
        switch (which) {
            case 0: m.set(0, 1, t); m.set(2, 3, F->neg(t)); break;
            case 1: m.set(1, 2, t); break;
            case 2: m.set(0, 2, t); m.set(1, 3, t); break;
            case 3: m.set(0, 3, t); break;
        }
        return m;
    }
    Elem t_rep(int a) const { return torus(a, 1); }
    Elem eta_rep(int a) const {
        Elem m;
        m.set(0, 1, a); m.set(1, 0, F->inv(a)); m.set(2, 3, a); m.set(3, 2, F->inv(a));
        return m;
    }
    Elem xi_rep(int a) const {
        Elem m;
        m.set(0, 3, a); m.set(1, 1, 1); m.set(2, 2, 1); m.set(3, 0, F->neg(F->inv(a)));
        return m;
    }
    Elem dmat() const {
        Elem m;
        m.set(0, 0, F->neg(1)); m.set(1, 1, F->neg(1)); m.set(2, 2, 1); m.set(3, 3, 1);
        return m;
    }
    Elem iota(const Elem& g) const { return mul(mul(dmat(), g), dmat()); }
    Elem tau(const Elem& g) const { return iota(inv(g)); }

    bool in_j(const Elem& g) const {  // J = Stab(e1)
        return g(0, 0) == 1 && g(1, 0) == 0 && g(2, 0) == 0 && g(3, 0) == 0;
    }

    // (g, [x,y,z]) -> [[1, v, z],[0, g, g v*],[0,0,1]] with v* = (y, -x)^T
    Elem embed(const FMat<2>& g, const HeisElem& h) const {
        Elem m;
        m.set(0, 0, 1); m.set(3, 3, 1);
        m.set(0, 1, h.x); m.set(0, 2, h.y); m.set(0, 3, h.z);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m.set(1 + i, 1 + j, g(i, j));
        int c1 = F->sub(F->mul(g(0, 0), h.y), F->mul(g(0, 1), h.x));
        int c2 = F->sub(F->mul(g(1, 0), h.y), F->mul(g(1, 1), h.x));
        m.set(1, 3, c1); m.set(2, 3, c2);
        return m;
    }
    // inverse of embed on J
    std::pair<FMat<2>, HeisElem> coords(const Elem& j) const {
        FMat<2> g;
        g.set(0, 0, j(1, 1)); g.set(0, 1, j(1, 2));
        g.set(1, 0, j(2, 1)); g.set(1, 1, j(2, 2));
        return {g, HeisElem{j(0, 1), j(0, 2), j(0, 3)}};
    }

    std::vector<Elem> generators() const {
        std::vector<Elem> out;
        for (int w = 0; w < 4; ++w) out.push_back(xroot(w, 1));
        out.push_back(bruhat.salpha);
        out.push_back(bruhat.sbeta);
        out.push_back(torus(F->gen, 1));
        out.push_back(torus(1, F->gen));
        return out;
    }
    template <class Fn>
    void for_each(Fn f) const { bruhat.enumerate(f); }

    // heap-constructed: the bruhat/hook closures capture the model address
    static std::unique_ptr<Sp4Model> make(const FqField& F) {
        auto mp = std::make_unique<Sp4Model>();
        Sp4Model& m = *mp;
        m.F = &F;
        int q = F.q;
        auto& B = m.bruhat;
        B.F = &F;
        for (int w = 0; w < 4; ++w)
            B.ucoords.push_back({q, [&m, w](int t) { return m.xroot(w, t); }});
        B.torus = {(q - 1) * (q - 1), [&m, &F, q](int i) {
                       return m.torus(1 + i % (q - 1), 1 + i / (q - 1));
                   }};
        B.weyl_words = {{}, {0}, {1}, {0, 1}, {1, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 0, 1}};
        FMat<4> sa, sb;
        sa.set(0, 1, 1); sa.set(1, 0, F.neg(1)); sa.set(2, 3, F.neg(1)); sa.set(3, 2, 1);
        sb.set(0, 0, 1); sb.set(1, 2, 1); sb.set(2, 1, F.neg(1)); sb.set(3, 3, 1);
        B.salpha = sa; B.sbeta = sb;
        B.build();
        for (const auto& g : {sa, sb, m.xroot(0, 1), m.xroot(1, 1), m.xroot(2, 1),
                              m.xroot(3, 1), m.torus(F.gen, F.gen)})
            if (!m.member(g)) throw std::logic_error("Sp4 generator fails the Gram relation");

        auto& H = m.hooks;
        H.family_rep = {m.id(), sa, fm_mul(F, fm_mul(F, sa, sb), sa)};
        for (int a = 1; a < q; ++a) { H.listed.push_back(m.t_rep(a)); H.listed_family.push_back(0); }
        for (int a = 1; a < q; ++a) { H.listed.push_back(m.eta_rep(a)); H.listed_family.push_back(1); }
        for (int a = 1; a < q; ++a) { H.listed.push_back(m.xi_rep(a)); H.listed_family.push_back(2); }
        H.levi_coord = [](const FMat<4>& p) { return p(0, 0); };
        H.transversal = [&m](int a) { return m.t_rep(a); };
        H.jtorus = {q - 1, [&m](int i) { return m.torus(1, 1 + i); }};
        build_split_table(F, B, H);
        m.factorizer = std::make_unique<DoubleCosetFactorizer<FqField, 4>>(F, B, H);
        return mp;
    }
};

// ---------------- U4 ----------------

struct U4Model {
    using Elem = FMat<4>;
    const FqExtField* E = nullptr;
    BruhatMachine<FqExtField, 4> bruhat;
    CosetHooks<FqExtField, 4> hooks;
    std::unique_ptr<DoubleCosetFactorizer<FqExtField, 4>> factorizer;

    Elem id() const { return fm_identity<FqExtField, 4>(*E); }
    Elem mul(const Elem& a, const Elem& b) const { return fm_mul(*E, a, b); }
    Elem inv(const Elem& a) const { return fm_inv(*E, a); }
    long long order() const { return bruhat.order; }

    bool member(const Elem& g) const {  // g Omega conj(g)^T = Omega
        auto B = [&](int i, int j) {
            int s = 0;
            s = E->add(s, E->mul(g(i, 0), E->frob(g(j, 3))));
            s = E->add(s, E->mul(g(i, 1), E->frob(g(j, 2))));
            s = E->sub(s, E->mul(g(i, 2), E->frob(g(j, 1))));
            s = E->sub(s, E->mul(g(i, 3), E->frob(g(j, 0))));
            return s;
        };
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                int want = 0;
                if (i == 0 && j == 3) want = 1;
                if (i == 1 && j == 2) want = 1;
                if (i == 2 && j == 1) want = E->neg(1);
                if (i == 3 && j == 0) want = E->neg(1);
                if (B(i, j) != want) return false;
            }
        return true;
    }

    Elem torus(int a, int b) const {  // a, b in E^x
        Elem m;
        m.set(0, 0, a); m.set(1, 1, b);
        m.set(2, 2, E->inv(E->frob(b))); m.set(3, 3, E->inv(E->frob(a)));
        return m;
    }
    // coordinate subgroups of U: w in E, u in k, v in E, t in k
    Elem coord_w(int w) const {
        Elem m = id();
        m.set(0, 1, E->neg(E->frob(w))); m.set(2, 3, w);
        return m;
    }
    Elem coord_u(int u) const {  // u in the base field
        Elem m = id();
        m.set(1, 2, E->from_base(u));
        return m;
    }
    Elem coord_v(int v) const {
        Elem m = id();
        m.set(0, 2, E->frob(v)); m.set(1, 3, v);
        return m;
    }
    Elem coord_t(int t) const {  // t in the base field
        Elem m = id();
        m.set(0, 3, E->from_base(t));
        return m;
    }
    Elem t_rep(int a) const { return torus(a, 1); }
    Elem eta_rep(int a) const {
        Elem m;
        int ai = E->inv(E->frob(a));
        m.set(0, 1, a); m.set(1, 0, ai); m.set(2, 3, a); m.set(3, 2, ai);
        return m;
    }
    Elem xi_rep(int a) const {
        Elem m;
        m.set(0, 3, a); m.set(1, 1, 1); m.set(2, 2, 1);
        m.set(3, 0, E->neg(E->inv(E->frob(a))));
        return m;
    }
    Elem dmat() const {
        Elem m;
        m.set(0, 0, E->neg(1)); m.set(1, 1, E->neg(1)); m.set(2, 2, 1); m.set(3, 3, 1);
        return m;
    }
    // the unitary involution carries the Galois twist: with plain d-conjugation
    // the t(a)-cosets for a in E^1 - {+-1} are swapped rather than fixed and
    // iota pi is not the contragredient on the U2 cuspidals; with the bar it is
    Elem iota(const Elem& g) const { return mul(mul(dmat(), fm_conj(*E, g)), dmat()); }
    Elem tau(const Elem& g) const { return iota(inv(g)); }
    bool in_j(const Elem& g) const {
        return g(0, 0) == 1 && g(1, 0) == 0 && g(2, 0) == 0 && g(3, 0) == 0;
    }

    // (g, [x,y,z]) -> [[1, v, z - x conj(y)/2 + conj(x) y /2 ... ]] per the
    // displayed J-isomorphism; the corner column is g v* with v* = (conj y, -conj x)^T
    Elem embed(const FMat<2>& g, const HeisElem& h) const {
        const FqField& k = E->base();
        Elem m;
        m.set(0, 0, 1); m.set(3, 3, 1);
        m.set(0, 1, h.x); m.set(0, 2, h.y);
        int half = E->from_base(k.inv(k.from_int(2)));
        int corr = E->mul(half, E->sub(E->mul(h.x, E->frob(h.y)), E->mul(E->frob(h.x), h.y)));
        m.set(0, 3, E->add(E->from_base(h.z), corr));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m.set(1 + i, 1 + j, g(i, j));
        int vs1 = E->frob(h.y), vs2 = E->neg(E->frob(h.x));
        m.set(1, 3, E->add(E->mul(g(0, 0), vs1), E->mul(g(0, 1), vs2)));
        m.set(2, 3, E->add(E->mul(g(1, 0), vs1), E->mul(g(1, 1), vs2)));
        return m;
    }
    std::pair<FMat<2>, HeisElem> coords(const Elem& j) const {
        const FqField& k = E->base();
        FMat<2> g;
        g.set(0, 0, j(1, 1)); g.set(0, 1, j(1, 2));
        g.set(1, 0, j(2, 1)); g.set(1, 1, j(2, 2));
        int x = j(0, 1), y = j(0, 2);
        int half = E->from_base(k.inv(k.from_int(2)));
        int corr = E->mul(half, E->sub(E->mul(x, E->frob(y)), E->mul(E->frob(x), y)));
        int z = E->sub(j(0, 3), corr);
        if (!E->in_base(z)) throw std::logic_error("U4 J-coordinate z not in k");
        return {g, HeisElem{x, y, E->re(z)}};
    }

    std::vector<Elem> generators() const {
        return {coord_w(1), coord_u(1), coord_v(1), coord_t(1), bruhat.salpha, bruhat.sbeta,
                torus(E->genE, 1), torus(1, E->genE)};
    }
    template <class Fn>
    void for_each(Fn f) const { bruhat.enumerate(f); }

    static std::unique_ptr<U4Model> make(const FqExtField& E) {
        auto mp = std::make_unique<U4Model>();
        U4Model& m = *mp;
        m.E = &E;
        int q = E.q, n = q * q;
        auto& B = m.bruhat;
        B.F = &E;
        B.ucoords.push_back({n, [&m](int w) { return m.coord_w(w); }});
        B.ucoords.push_back({q, [&m](int u) { return m.coord_u(u); }});
        B.ucoords.push_back({n, [&m](int v) { return m.coord_v(v); }});
        B.ucoords.push_back({q, [&m](int t) { return m.coord_t(t); }});
        B.torus = {(n - 1) * (n - 1), [&m, n](int i) {
                       return m.torus(1 + i % (n - 1), 1 + i / (n - 1));
                   }};
        B.weyl_words = {{}, {0}, {1}, {0, 1}, {1, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 0, 1}};
        FMat<4> sa, sb;
        sa.set(0, 1, 1); sa.set(1, 0, E.neg(1)); sa.set(2, 3, E.neg(1)); sa.set(3, 2, 1);
        sb.set(0, 0, 1); sb.set(1, 2, 1); sb.set(2, 1, E.neg(1)); sb.set(3, 3, 1);
        B.salpha = sa; B.sbeta = sb;
        B.build();
        for (const auto& g : {sa, sb, m.coord_w(1), m.coord_u(1), m.coord_v(1), m.coord_t(1),
                              m.torus(E.genE, E.genE)})
            if (!m.member(g)) throw std::logic_error("U4 generator fails the Gram relation");

        auto& H = m.hooks;
        H.family_rep = {m.id(), sa, fm_mul(E, fm_mul(E, sa, sb), sa)};
        for (int a = 1; a < n; ++a) { H.listed.push_back(m.t_rep(a)); H.listed_family.push_back(0); }
        for (int a = 1; a < n; ++a) { H.listed.push_back(m.eta_rep(a)); H.listed_family.push_back(1); }
        for (int a = 1; a < n; ++a) { H.listed.push_back(m.xi_rep(a)); H.listed_family.push_back(2); }
        H.levi_coord = [](const FMat<4>& p) { return p(0, 0); };
        H.transversal = [&m](int a) { return m.t_rep(a); };
        H.jtorus = {n - 1, [&m](int i) { return m.torus(1, 1 + i); }};
        build_split_table(E, B, H);
        m.factorizer = std::make_unique<DoubleCosetFactorizer<FqExtField, 4>>(E, B, H);
        return mp;
    }
};

using Sp4Paired = PairedRepT<Sp4Model>;

// sigma_pi for Sp4: pi from the SL2 list (not principal), omega in the
// Sp4-convention; pairing B_pi (x) B_omega with B_omega = identity (Eq 3.1).
inline Sp4Paired build_sp4_paired(const Sp4Model& G, const Sl2Setup& S, const Sl2Irrep& pi,
                                  const WeilRep& w) {
    if (pi.kind == Sl2Kind::Principal)
        throw std::domain_error("UnsupportedPi: the paired bases exist for the non-principal pi");
    Sp4Paired out;
    out.G = &G;
    out.dim = pi.rep.dim * w.rep.dim;
    CMat bw = CMat::identity(w.rep.dim);
    out.pairing = pi.pairing.kron(bw);
    out.pairing_inv = out.pairing.inverse();
    const Sp4Model* Gp = &G;
    const Rep<Sl2Model>* prep = &pi.rep;
    const Rep<Sl2Jacobi>* wrep = &w.rep;
    out.eval_raw = [Gp, prep, wrep](const FMat<4>& j) {
        auto [g, h] = Gp->coords(j);
        return prep->eval(g).kron(wrep->eval({g, h}));
    };
    return out;
}

using U4Paired = PairedRepT<U4Model>;

inline U4Paired build_u4_paired(const U4Model& G, const U2Setup& U, const U2Irrep& pi,
                                const U2WeilRep& w, const CMat& pi_pairing,
                                const CMat& omega_pairing) {
    if (pi.kind == U2Kind::Principal)
        throw std::domain_error("UnsupportedPi: the paired bases exist for the non-principal pi");
    U4Paired out;
    out.G = &G;
    out.dim = pi.rep.dim * w.rep.dim;
    out.pairing = pi_pairing.kron(omega_pairing);
    out.pairing_inv = out.pairing.inverse();
    const U4Model* Gp = &G;
    const Rep<U2Model>* prep = &pi.rep;
    const Rep<U2Jacobi>* wrep = &w.rep;
    out.eval_raw = [Gp, prep, wrep](const FMat<4>& j) {
        auto [g, h] = Gp->coords(j);
        return prep->eval(g).kron(wrep->eval({g, h}));
    };
    return out;
}

}  // namespace fjmod
