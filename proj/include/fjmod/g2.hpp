#pragma once
// The Chevalley group G2(k) in its 7-dimensional representation. The weight
// basis is ordered 2a+b, a+b, a, 0, -a, -(a+b), -(2a+b) (a short, b long), so
// positive root elements are strictly upper triangular, the torus h(t1,t2)
// is diagonal, and the Borel is the upper triangular part of the group.
//
// The integer Chevalley basis below was derived from the sl2-string data of
// the 7-dimensional module and sign-calibrated so that the relation pack --
// torus relations, Weyl conjugations with their signs, and all five
// commutator families -- holds exactly as displayed; check_relations is the
// runtime gate for every q.

#include "fjmod/coset.hpp"
#include "fjmod/weil.hpp"

namespace fjmod {

namespace g2data {

struct Entry {
    int row, col, val;
};

// e_gamma for the positive roots, f_gamma for the negatives (1-based indices)
inline const std::vector<Entry>& chevalley(int root, bool positive) {
    static const std::vector<Entry> table[12] = {
        /* e_a    */ {{1, 2, 1}, {3, 4, 2}, {4, 5, 1}, {6, 7, 1}},
        /* e_b    */ {{2, 3, 1}, {5, 6, 1}},
        /* e_ab   */ {{1, 3, -1}, {2, 4, 2}, {4, 6, -1}, {5, 7, 1}},
        /* e_a2b  */ {{1, 4, -2}, {2, 5, 1}, {3, 6, 1}, {4, 7, -1}},
        /* e_a3b  */ {{1, 5, 1}, {3, 7, -1}},
        /* e_a3b2 */ {{1, 6, -1}, {2, 7, -1}},
        /* f_a    */ {{2, 1, 1}, {4, 3, 1}, {5, 4, 2}, {7, 6, 1}},
        /* f_b    */ {{3, 2, 1}, {6, 5, 1}},
        /* f_ab   */ {{3, 1, -1}, {4, 2, 1}, {6, 4, -2}, {7, 5, 1}},
        /* f_a2b  */ {{4, 1, -1}, {5, 2, 1}, {6, 3, 1}, {7, 4, -2}},
        /* f_a3b  */ {{5, 1, 1}, {7, 3, -1}},
        /* f_a3b2 */ {{6, 1, -1}, {7, 2, -1}},
    };
    return table[root + (positive ? 0 : 6)];
}

// roots in the fixed order a, b, a+b, 2a+b, 3a+b, 3a+2b
inline std::pair<int, int> root_coeffs(int root) {
    static const std::pair<int, int> r[6] = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}};
    return r[root];
}

}  // namespace g2data

struct G2Model {
    using Elem = FMat<7>;
    const FqField* F = nullptr;
    BruhatMachine<FqField, 7> bruhat;
    CosetHooks<FqField, 7> hooks;
    std::unique_ptr<DoubleCosetFactorizer<FqField, 7>> factorizer;
    FMat<7> walpha, wbeta, w1, w2;

    Elem id() const { return fm_identity<FqField, 7>(*F); }
    Elem mul(const Elem& a, const Elem& b) const { return fm_mul(*F, a, b); }
    Elem inv(const Elem& a) const { return fm_inv(*F, a); }
    long long order() const { return bruhat.order; }

    // x_gamma(t) = 1 + t E + t^2 E^2/2 with the frozen integer data
    Elem xroot(int root, bool positive, int t) const {
        Elem m = id();
        if (t == 0) return m;
        const auto& entries = g2data::chevalley(root, positive);
        for (const auto& e : entries)
            m.set(e.row - 1, e.col - 1,
                  F->add(m(e.row - 1, e.col - 1), F->mul(t, F->from_int(e.val))));
        // the square term: E^2/2 entries from the chain pairs; the integer
        // product e1.val e2.val is +-2 on every chain, so /2 stays integral
        for (const auto& e1 : entries)
            for (const auto& e2 : entries)
                if (e1.col == e2.row) {
                    int half = F->from_int(e1.val * e2.val / 2);
                    int t2 = F->mul(t, t);
                    m.set(e1.row - 1, e2.col - 1,
                          F->add(m(e1.row - 1, e2.col - 1), F->mul(t2, half)));
                }
        return m;
    }
    Elem xplus(int root, int t) const { return xroot(root, true, t); }
    Elem xminus(int root, int t) const { return xroot(root, false, t); }

    Elem wgamma(int root, int t) const {  // w_gamma(t) = x(t) x_-(-1/t) x(t)
        int ti = F->inv(t);
        return mul(mul(xplus(root, t), xminus(root, F->neg(ti))), xplus(root, t));
    }
    Elem hgamma(int root, int t) const { return mul(wgamma(root, t), inv(wgamma(root, 1))); }

    // h(t1,t2) = h_a(t1 t2) h_b(t1^2 t2): diagonal with the weight powers
    Elem htorus(int t1, int t2) const {
        Elem m;
        int t12 = F->mul(t1, t2);
        m.set(0, 0, t12);
        m.set(1, 1, t1);
        m.set(2, 2, t2);
        m.set(3, 3, 1);
        m.set(4, 4, F->inv(t2));
        m.set(5, 5, F->inv(t1));
        m.set(6, 6, F->inv(t12));
        return m;
    }

    // V-elements (r1,...,r5) = x_a(r1) x_ab(r2) x_a2b(r3) x_a3b(r4) x_a3b2(r5)
    Elem velem(int r1, int r2, int r3, int r4, int r5) const {
        Elem m = xplus(0, r1);
        if (r2) m = mul(m, xplus(2, r2));
        if (r3) m = mul(m, xplus(3, r3));
        if (r4) m = mul(m, xplus(4, r4));
        if (r5) m = mul(m, xplus(5, r5));
        return m;
    }
    std::array<int, 5> vcoords(const Elem& v) const {
        std::array<int, 5> r{};
        Elem rest = v;
        r[0] = F->mul(rest(2, 3), F->inv(F->from_int(2)));   // e_a: (3,4) entry 2
        rest = mul(inv(velem(r[0], 0, 0, 0, 0)), rest);
        r[1] = F->mul(rest(1, 3), F->inv(F->from_int(2)));   // e_ab: (2,4) entry 2
        rest = mul(inv(velem(0, r[1], 0, 0, 0)), rest);
        r[2] = F->mul(rest(0, 3), F->inv(F->neg(F->from_int(2))));  // e_a2b: (1,4) entry -2
        rest = mul(inv(velem(0, 0, r[2], 0, 0)), rest);
        r[3] = rest(0, 4);                                    // e_a3b: (1,5) entry 1
        rest = mul(inv(velem(0, 0, 0, r[3], 0)), rest);
        r[4] = F->neg(rest(0, 5));                            // e_a3b2: (1,6) entry -1
        if (velem(r[0], r[1], r[2], r[3], r[4]) != v)
            throw std::logic_error("element is not in V");
        return r;
    }

    // pr((r1..r5)) = [r1, r2, r3 - r1 r2] into the G2-convention Heisenberg
    HeisElem pr(const std::array<int, 5>& r) const {
        return {r[0], r[1], F->sub(r[2], F->mul(r[0], r[1]))};
    }

    // SL2(k) inside the Levi M = GL2: x_b(r), x_-b(r), h(a, a^-1)
    Elem embed_sl2(const FMat<2>& g) const {
        Sl2Bruhat br = sl2_bruhat(*F, g);
        if (!br.big_cell)
            return mul(htorus(br.diag_a, F->inv(br.diag_a)), xplus(1, br.upper_last));
        Elem m = mul(xplus(1, br.upper_first), htorus(br.diag_a, F->inv(br.diag_a)));
        m = mul(m, wbeta);
        return mul(m, xplus(1, br.upper_last));
    }
    FMat<2> levi_block(const Elem& g) const {
        FMat<2> b;
        b.set(0, 0, g(1, 1)); b.set(0, 1, g(1, 2));
        b.set(1, 0, g(2, 1)); b.set(1, 1, g(2, 2));
        return b;
    }
    // J = SL2 x| V = Stab(v1)
    bool in_j(const Elem& g) const {
        if (g(0, 0) != 1) return false;
        for (int i = 1; i < 7; ++i)
            if (g(i, 0)) return false;
        return true;
    }
    std::pair<FMat<2>, std::array<int, 5>> fj_coords(const Elem& j) const {
        FMat<2> g = levi_block(j);
        Elem v = mul(inv(embed_sl2(g)), j);
        return {g, vcoords(v)};
    }
    Elem embed(const FMat<2>& g, const std::array<int, 5>& r) const {
        return mul(embed_sl2(g), velem(r[0], r[1], r[2], r[3], r[4]));
    }

    Elem iota(const Elem& g) const {
        Elem h = htorus(1, F->neg(1));
        return mul(mul(h, g), h);
    }
    Elem tau(const Elem& g) const { return iota(inv(g)); }

    Elem eta_rep(int a) const {  // h(a, a^-2) w_alpha
        int a2i = F->inv(F->mul(a, a));
        return mul(htorus(a, a2i), walpha);
    }
    Elem xi_rep(int a) const { return mul(htorus(F->neg(1), a), w1); }

    std::vector<Elem> generators() const {
        std::vector<Elem> out;
        for (int r = 0; r < 6; ++r) out.push_back(xplus(r, 1));
        out.push_back(xminus(0, 1));
        out.push_back(xminus(1, 1));
        out.push_back(htorus(F->gen, 1));
        out.push_back(htorus(1, F->gen));
        return out;
    }
    std::vector<Elem> j_generators() const {
        std::vector<Elem> out;
        FMat<2> n1, w, d;
        n1.set(0, 0, 1); n1.set(0, 1, 1); n1.set(1, 1, 1);
        w.set(0, 1, 1); w.set(1, 0, F->neg(1));
        d.set(0, 0, F->gen); d.set(1, 1, F->inv(F->gen));
        out.push_back(embed_sl2(n1));
        out.push_back(embed_sl2(w));
        out.push_back(embed_sl2(d));
        out.push_back(xplus(0, 1));
        out.push_back(xplus(2, 1));
        out.push_back(xplus(3, 1));
        out.push_back(xplus(4, 1));
        out.push_back(xplus(5, 1));
        return out;
    }

    template <class Fn>
    void for_each(Fn f) const { bruhat.enumerate(f); }

    static std::unique_ptr<G2Model> make(const FqField& F) {
        auto mp = std::make_unique<G2Model>();
        G2Model& m = *mp;
        m.F = &F;
        int q = F.q;
        m.walpha = m.wgamma(0, 1);
        m.wbeta = m.wgamma(1, 1);
        m.w1 = m.mul(m.mul(m.walpha, m.wbeta), m.inv(m.walpha));
        m.w2 = m.mul(m.mul(m.mul(m.mul(m.walpha, m.wbeta), m.walpha), m.inv(m.wbeta)),
                     m.inv(m.walpha));
        auto& B = m.bruhat;
        B.F = &F;
        for (int r = 0; r < 6; ++r)
            B.ucoords.push_back({q, [&m, r](int t) { return m.xplus(r, t); }});
        B.torus = {(q - 1) * (q - 1), [&m, q](int i) {
                       return m.htorus(1 + i % (q - 1), 1 + i / (q - 1));
                   }};
        B.weyl_words = {{},           {0},         {1},          {0, 1},
                        {1, 0},       {0, 1, 0},   {1, 0, 1},    {0, 1, 0, 1},
                        {1, 0, 1, 0}, {0, 1, 0, 1, 0}, {1, 0, 1, 0, 1}, {0, 1, 0, 1, 0, 1}};
        B.salpha = m.walpha;
        B.sbeta = m.wbeta;
        B.build();
        long long want = 1;  // q^6 (q^6 - 1)(q^2 - 1)
        {
            long long Q = q;
            long long q6 = Q * Q * Q * Q * Q * Q;
            want = q6 * (q6 - 1) * (Q * Q - 1);
        }
        if (B.order != want) throw std::logic_error("G2 cell count misses the closed form");

        auto& H = m.hooks;
        H.family_rep = {m.id(), m.walpha, m.w1, m.w2};
        for (int a = 1; a < q; ++a) { H.listed.push_back(m.htorus(a, 1)); H.listed_family.push_back(0); }
        for (int a = 1; a < q; ++a) { H.listed.push_back(m.eta_rep(a)); H.listed_family.push_back(1); }
        for (int a = 1; a < q; ++a) { H.listed.push_back(m.xi_rep(a)); H.listed_family.push_back(2); }
        for (int a = 1; a < q; ++a) { H.listed.push_back(m.mul(m.htorus(a, 1), m.w2)); H.listed_family.push_back(3); }
        H.levi_coord = [&m, &F](const FMat<7>& p) {
            FMat<2> b = m.levi_block(p);
            return F.sub(F.mul(b(0, 0), b(1, 1)), F.mul(b(0, 1), b(1, 0)));
        };
        H.transversal = [&m](int a) { return m.htorus(a, 1); };
        H.jtorus = {q - 1, [&m, &F](int i) { return m.htorus(1 + i, F.inv(1 + i)); }};
        build_split_table(F, B, H);
        m.factorizer = std::make_unique<DoubleCosetFactorizer<FqField, 7>>(F, B, H);
        return mp;
    }
};

// The relation pack: (5.1) torus, (5.2) Weyl-torus, the five commutator
// families of (5.3) plus the commuting pairs, and the twelve Chevalley
// conjugation constants of (5.4). Exhaustive over parameters when
// exhaustive = true (the gate at q = 3), sampled otherwise. Returns a list of
// commutator families that collapse mod p (the 3xy-style constants at p = 3).
struct G2RelationReport {
    bool ok = false;
    std::string failure;
    std::vector<std::string> collapsed_mod_p;
};

inline G2RelationReport g2_check_relations(const G2Model& G, bool exhaustive, uint64_t seed) {
    const FqField& F = *G.F;
    int q = F.q;
    G2RelationReport rep;
    auto fail = [&](const std::string& what) {
        rep.ok = false;
        rep.failure = what;
        return rep;
    };
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> tpairs;
    if (exhaustive) {
        for (int a = 1; a < q; ++a)
            for (int b = 1; b < q; ++b) tpairs.push_back({a, b});
    } else {
        for (int i = 0; i < 24; ++i)
            tpairs.push_back({1 + (int)(rng() % (q - 1)), 1 + (int)(rng() % (q - 1))});
    }
    // (5.1): h^-1 x_a(r) h = x_a(t2^-1 r); h^-1 x_b(r) h = x_b(t1^-1 t2 r)
    for (auto [t1, t2] : tpairs)
        for (int r = 0; r < q; ++r) {
            auto h = G.htorus(t1, t2);
            auto hi = G.inv(h);
            if (G.mul(G.mul(hi, G.xplus(0, r)), h) != G.xplus(0, F.mul(F.inv(t2), r)))
                return fail("(5.1) alpha");
            if (G.mul(G.mul(hi, G.xplus(1, r)), h) !=
                G.xplus(1, F.mul(F.mul(F.inv(t1), t2), r)))
                return fail("(5.1) beta");
        }
    // (5.2)
    for (auto [t1, t2] : tpairs) {
        auto h = G.htorus(t1, t2);
        if (G.mul(G.mul(G.walpha, h), G.inv(G.walpha)) != G.htorus(F.mul(t1, t2), F.inv(t2)))
            return fail("(5.2) w_alpha");
        if (G.mul(G.mul(G.wbeta, h), G.inv(G.wbeta)) != G.htorus(t2, t1))
            return fail("(5.2) w_beta");
    }
    // (5.3) commutator families; [g1,g2] = g1^-1 g2^-1 g1 g2
    auto comm = [&](const FMat<7>& g1, const FMat<7>& g2) {
        return G.mul(G.mul(G.inv(g1), G.inv(g2)), G.mul(g1, g2));
    };
    auto xy_pairs = [&]() {
        std::vector<std::pair<int, int>> ps;
        if (exhaustive) {
            for (int x = 0; x < q; ++x)
                for (int y = 0; y < q; ++y) ps.push_back({x, y});
        } else {
            for (int i = 0; i < 32; ++i) ps.push_back({(int)(rng() % q), (int)(rng() % q)});
        }
        return ps;
    }();
    int three = F.from_int(3), two = F.from_int(2);
    bool c3 = three == 0;
    if (c3) {
        rep.collapsed_mod_p = {"[x_a, x_a2b] = x_a3b(3xy) collapses to commuting at p=3",
                               "the 3x^2y, 3xy^2, 3xy coefficients in (5.3) vanish at p=3"};
    }
    for (auto [x, y] : xy_pairs) {
        int xy = F.mul(x, y), x2y = F.mul(F.mul(x, x), y), x3y = F.mul(F.mul(F.mul(x, x), x), y);
        int x3y2 = F.mul(x3y, y), xy2 = F.mul(xy, y);
        if (comm(G.xplus(0, x), G.xplus(1, y)) !=
            G.mul(G.mul(G.xplus(2, F.neg(xy)), G.xplus(3, F.neg(x2y))),
                  G.mul(G.xplus(4, x3y), G.xplus(5, F.neg(F.mul(two, x3y2))))))
            return fail("(5.3) [x_a, x_b]");
        if (comm(G.xplus(0, x), G.xplus(2, y)) !=
            G.mul(G.xplus(3, F.neg(F.mul(two, xy))),
                  G.mul(G.xplus(4, F.mul(three, x2y)), G.xplus(5, F.mul(three, xy2)))))
            return fail("(5.3) [x_a, x_ab]");
        if (comm(G.xplus(0, x), G.xplus(3, y)) != G.xplus(4, F.mul(three, xy)))
            return fail("(5.3) [x_a, x_a2b]");
        if (comm(G.xplus(1, x), G.xplus(4, y)) != G.xplus(5, xy))
            return fail("(5.3) [x_b, x_a3b]");
        if (comm(G.xplus(2, x), G.xplus(3, y)) != G.xplus(5, F.mul(three, xy)))
            return fail("(5.3) [x_ab, x_a2b]");
        // all other positive pairs commute
        for (auto [i, j] : {std::pair{1, 2}, {1, 3}, {1, 5}, {2, 4}, {2, 5},
                            {3, 4}, {3, 5}, {4, 5}, {0, 4}, {0, 5}})
            if (comm(G.xplus(i, x), G.xplus(j, y)) != G.id())
                return fail("(5.3) commuting pair " + std::to_string(i) + "," + std::to_string(j));
    }
    // (5.4): w_{g1} x_{g2}(r) w_{g1}^-1 = x_{s_{g1} g2}(c r), including negatives
    struct CRow { int g1, g2, c; };
    static const CRow crows[] = {{0, 0, -1}, {0, 3, -1}, {0, 4, -1}, {0, 1, 1}, {0, 2, 1},
                                 {0, 5, 1},  {1, 1, -1}, {1, 2, -1}, {1, 5, -1}, {1, 0, 1},
                                 {1, 3, 1},  {1, 4, 1}};
    auto refl = [&](int g1, int g2, bool pos) {
        auto [m1, n1] = g2data::root_coeffs(g1);
        auto [m2, n2] = g2data::root_coeffs(g2);
        if (!pos) { m2 = -m2; n2 = -n2; }
        // <g2, g1> = 2(g2,g1)/(g1,g1) with (a,a)=2, (b,b)=6, (a,b)=-3
        int num = 2 * (m1 * m2 * 2 + (m1 * n2 + m2 * n1) * -3 + n1 * n2 * 6);
        int den = m1 * m1 * 2 + 2 * m1 * n1 * -3 + n1 * n1 * 6;
        int c = num / den;
        int rm = m2 - c * m1, rn = n2 - c * n1;
        for (int r = 0; r < 6; ++r) {
            auto [mm, nn] = g2data::root_coeffs(r);
            if (mm == rm && nn == rn) return std::pair{r, true};
            if (mm == -rm && nn == -rn) return std::pair{r, false};
        }
        throw std::logic_error("reflection left the root system");
    };
    for (const auto& row : crows)
        for (int r = 1; r < q; ++r) {
            auto wg = row.g1 == 0 ? G.walpha : G.wbeta;
            for (bool pos : {true, false}) {
                auto [tr, tpos] = refl(row.g1, row.g2, pos);
                auto lhs = G.mul(G.mul(wg, G.xroot(row.g2, pos, r)), G.inv(wg));
                auto rhs = G.xroot(tr, tpos, F.mul(F.from_int(row.c), r));
                if (lhs != rhs) return fail("(5.4) c(" + std::to_string(row.g1) + "," +
                                            std::to_string(row.g2) + ")");
            }
        }
    rep.ok = true;
    return rep;
}

// sigma's omega-factor on J: compose the fj coordinates with the certified
// G2-convention Weil representation of the (twisted) Jacobi group.
struct G2WeilFactor {
    const G2Model* G = nullptr;
    std::shared_ptr<HeisModel> H;
    std::shared_ptr<Sl2Jacobi> J;
    std::shared_ptr<WeilRep> w;

    static G2WeilFactor make(const G2Model& G, const Sl2Setup& S) {
        G2WeilFactor out;
        out.G = &G;
        out.H = std::make_shared<HeisModel>(HeisModel{WeilConvention::G2Style, &S.k, &S.E});
        out.J = std::make_shared<Sl2Jacobi>(Sl2Jacobi{&S.G, out.H.get()});
        out.w = std::make_shared<WeilRep>(build_weil(S, WeilConvention::G2Style, *out.J));
        return out;
    }
    CMat eval(const FMat<7>& j) const {
        auto [g, r] = G->fj_coords(j);
        return w->rep.eval({g, G->pr(r)});
    }
};

using G2Paired = PairedRepT<G2Model>;

// sigma_pi = pi (x) omega on J in the G2 convention; pairing B_pi (x) B_omega
// with B_omega the Eq (5.9) form <delta_a, delta_b> = delta_{a,-b}.
inline G2Paired build_g2_paired(const G2Model& G, const Sl2Setup& S, const Sl2Irrep& pi,
                                const G2WeilFactor& wf) {
    if (pi.kind == Sl2Kind::Principal)
        throw std::domain_error("UnsupportedPi: the paired bases exist for the non-principal pi");
    G2Paired out;
    out.G = &G;
    int q = S.k.q;
    out.dim = pi.rep.dim * q;
    CMat bw(q, q);
    for (int s = 0; s < q; ++s) bw(s, S.k.neg(s)) = CycloNum(1);
    out.pairing = pi.pairing.kron(bw);
    out.pairing_inv = out.pairing.inverse();
    const G2Model* Gp = &G;
    const Rep<Sl2Model>* prep = &pi.rep;
    const G2WeilFactor* wp = &wf;
    out.eval_raw = [Gp, prep, wp](const FMat<7>& j) {
        auto [g, r] = Gp->fj_coords(j);
        return prep->eval(g).kron(wp->w->rep.eval({g, Gp->pr(r)}));
    };
    return out;
}

}  // namespace fjmod
