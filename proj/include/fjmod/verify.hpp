#pragma once
// Named verification suites over the whole library: character tables, tensor
// decompositions, the unitary side, structural certifications, and the
// multiplicity-freeness theorems. Each suite returns structured results that
// serialize to deterministic JSON; the CLI and the acceptance runner share
// these entry points.

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "fjmod/g2.hpp"
#include "fjmod/hecke.hpp"
#include "fjmod/sp4u4.hpp"

namespace fjmod {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Suite {
    std::string name;
    std::vector<Check> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add(const std::string& n, bool p, const std::string& d = "") {
        checks.push_back({n, p, d});
    }
};

// ---- SL2 character tables (Tables 1-3) ----

inline Suite verify_sl2_tables(int q) {
    Suite s{"sl2-tables q=" + std::to_string(q), {}};
    Sl2Setup S(q);
    s.add("table1-class-count", (int)S.cd.reps.size() == q + 4,
          std::to_string(S.cd.reps.size()) + " classes");
    s.add("table1-sizes-sum", S.cd.order() == S.G.order());
    auto irreps = sl2_irrep_list(S);
    long long dimsq = 0;
    for (auto& ir : irreps) dimsq += (long long)ir.rep.dim * ir.rep.dim;
    s.add("completeness-sum-dim-sq", dimsq == S.G.order());
    for (auto& ir : irreps) ir.rep.certify(30, 2024, S.elements);
    s.add("models-certified", true, std::to_string(irreps.size()) + " irreducibles");
    TableCheck tc = sl2_verify_tables(S, irreps);
    s.add("tables-2-3-cell-for-cell", tc.ok,
          tc.ok ? (std::string("branch sqrt(eps0 q) = ") +
                   (tc.branch == 1 ? "+" : "-") + "sum_x psi(x^2)")
                : tc.mismatch);
    std::vector<ClassFunction> chs;
    for (auto& ir : irreps) chs.push_back(character_of(ir.rep, S.cd));
    bool ortho = true;
    for (size_t i = 0; i < chs.size() && ortho; ++i)
        for (size_t j = 0; j < chs.size() && ortho; ++j)
            ortho = inner_product(S.cd, chs[i], chs[j]) == CycloNum(i == j ? 1 : 0);
    s.add("orthonormal-characters", ortho);
    return s;
}

// ---- tensor decompositions of pi (x) omega_{psi_u} ----

inline Suite verify_prop21(int q) {
    Suite s{"prop2.1 q=" + std::to_string(q), {}};
    Sl2Setup S(q);
    auto irreps = sl2_irrep_list(S);
    std::vector<ClassFunction> chs;
    for (auto& ir : irreps) chs.push_back(character_of(ir.rep, S.cd));
    for (int u : {1, S.k.kappa}) {
        ClassFunction chw;
        {
            auto amb = weil_sl2_action(S, u);
            chw = character_of(amb, S.cd);
        }
        for (size_t i = 0; i < irreps.size(); ++i) {
            auto prod = pointwise_product(chs[i], chw);
            auto dec = decompose(S.cd, prod, chs);
            auto want = prop21_expected(S, irreps[i], u);
            bool ok = dec.residual == 0 && dec.mult == want;
            bool mfree = true;
            if (irreps[i].kind != Sl2Kind::Principal)
                for (long long m : dec.mult) mfree = mfree && m <= 1;
            s.add(irreps[i].name + " (x) omega[u=" + std::to_string(u) + "]", ok && mfree,
                  ok ? "" : "multiplicity vector mismatch");
        }
    }
    if (q >= 5) {  // the multiplicity-two witness inside I(chi1) (x) omega_psi
        auto pi = build_principal(S, 1);
        auto amb = weil_sl2_action(S, 1);
        auto prod =
            pointwise_product(character_of(pi.rep, S.cd), character_of(amb, S.cd));
        long long target = [&] {
            long long e = 1 + (q - 1) / 2, d = q - 1;
            e %= d;
            return std::min(e, d - e);
        }();
        auto eps_chi = build_principal(S, target);
        CycloNum m = inner_product(S.cd, prod, character_of(eps_chi.rep, S.cd));
        s.add("multiplicity-two-witness", m == CycloNum(2),
              "<I(chi1) (x) omega, I(eps chi1)> = " + m.str());
    }
    return s;
}

// ---- the unitary side: U2 data, Weil restriction, tensor decompositions ----

inline Suite verify_u2_suite(int q) {
    Suite s{"u2-suite q=" + std::to_string(q), {}};
    Sl2Setup SS(q);
    U2Setup U(SS);
    s.add("class-count", U.cd.reps.size() == (size_t)(q + 1) * (q + 1));
    s.add("class-sizes-sum", U.cd.order() == U.G.order());
    {
        std::unordered_set<FMat<2>, FMat<2>::Hash> seen;
        std::vector<long long> sizes;
        for (const auto& g : U.elements) {
            if (seen.count(g)) continue;
            std::vector<FMat<2>> stack{g};
            seen.insert(g);
            long long n = 0;
            while (!stack.empty()) {
                auto x = stack.back();
                stack.pop_back();
                ++n;
                for (const auto& h : U.G.generators()) {
                    auto y = U.G.mul(U.G.inv(h), U.G.mul(x, h));
                    if (seen.insert(y).second) stack.push_back(y);
                }
            }
            sizes.push_back(n);
        }
        std::sort(sizes.begin(), sizes.end());
        auto want = U.cd.sizes;
        std::sort(want.begin(), want.end());
        s.add("classes-match-orbit-oracle", sizes == want);
    }
    auto irreps = u2_irrep_list(U);
    long long dimsq = 0;
    for (auto& ir : irreps) dimsq += (long long)ir.rep.dim * ir.rep.dim;
    s.add("completeness-sum-dim-sq", dimsq == U.G.order());
    std::vector<ClassFunction> chs;
    for (auto& ir : irreps) chs.push_back(character_of(ir.rep, U.cd));
    {
        bool ortho = true;
        for (size_t i = 0; i < chs.size() && ortho; ++i)
            for (size_t j = i; j < chs.size() && ortho; ++j)
                ortho = inner_product(U.cd, chs[i], chs[j]) == CycloNum(i == j ? 1 : 0);
        s.add("orthonormal-characters", ortho);
    }
    // the cuspidal character table (the displayed 4-row table)
    {
        const FqExtField& E = SS.E;
        bool ok = true;
        for (long long mu_e = 1; mu_e <= q && ok; ++mu_e)
            for (long long eta_e = 0; eta_e <= q && ok; ++eta_e) {
                auto ir = build_u2_cuspidal(U, mu_e, eta_e);
                MultChar mui = U.eta(mu_e).inverse(), eta = U.eta(eta_e);
                size_t idx = 0;
                for (int x : E.e1)
                    ok = ok && ir.rep.trace(U.cd.reps[idx++]) ==
                                   CycloNum(q - 1) * eta.value(E.mul(x, x), U.N) *
                                       mui.value(x, U.N);
                for (int x : E.e1)
                    ok = ok && ir.rep.trace(U.cd.reps[idx++]) ==
                                   -(eta.value(E.mul(x, x), U.N) * mui.value(x, U.N));
                for (size_t i = 0; i < U.torus_reps.size(); ++i)
                    ok = ok && ir.rep.trace(U.cd.reps[idx++]) == CycloNum(0);
                for (auto [u1, u2] : U.pair_reps)
                    ok = ok && ir.rep.trace(U.cd.reps[idx++]) ==
                                   -(eta.value(E.mul(u1, u2), U.N) *
                                     (mui.value(u1, U.N) + mui.value(u2, U.N)));
            }
        s.add("cuspidal-character-table", ok);
    }
    HeisModel HE{WeilConvention::UnitaryStyle, &SS.k, &SS.E};
    U2Jacobi J{&U.G, &HE};
    auto w = build_u2_weil(U, J);
    certify_weil(w.rep, J, SS.k, SS.k.p, SS.psi, q == 3 ? 400 : 80, 11);
    s.add("weil-certified", true);
    ClassFunction chw;
    for (const auto& r : U.cd.reps) chw.values.push_back(w.rep.trace({r, HE.id()}));
    {
        // the displayed 7-row restriction table
        const FqExtField& E = SS.E;
        bool ok = w.rep.trace({U.G.id(), HE.id()}) == CycloNum(q * q);
        ok = ok && w.rep.trace({U.G.make(1, 1, 0, 1), HE.id()}) == CycloNum(-q);
        for (int x : E.e1)
            if (x != 1) {
                ok = ok && w.rep.trace({U.G.make(x, 0, 0, x), HE.id()}) == CycloNum(1);
                ok = ok && w.rep.trace({U.G.make(x, x, 0, x), HE.id()}) == CycloNum(1);
            }
        for (int x : U.torus_reps)
            ok = ok && w.rep.trace({U.G.diagE(x), HE.id()}) == CycloNum(1);
        for (auto [u1, u2] : U.pair_reps) {
            bool unip = u1 == 1 || u2 == 1;
            int xx = E.mul(E.from_base(SS.k.inv(SS.k.from_int(2))), E.add(u1, u2));
            int yy = E.mul(E.from_base(SS.k.inv(SS.k.from_int(2))),
                           E.mul(E.inv(E.enc(0, 1)), E.sub(u1, u2)));
            FMat<2> rep = U.G.make(xx, yy, E.mul(E.from_base(SS.k.kappa), yy), xx);
            ok = ok && w.rep.trace({rep, HE.id()}) == CycloNum(unip ? -q : 1);
        }
        s.add("weil-restriction-table", ok);
    }
    {
        auto dec = decompose(U.cd, chw, chs);
        bool ok = dec.residual == 0;
        for (size_t i = 0; i < irreps.size(); ++i) {
            long long want = 0;
            if (irreps[i].kind == U2Kind::StTwist && irreps[i].eta_e == 0) want = 1;
            if (irreps[i].kind == U2Kind::Cuspidal &&
                (irreps[i].eta_e == 0 || irreps[i].eta_e == irreps[i].mu_e))
                want = 1;
            ok = ok && dec.mult[i] == want;
        }
        s.add("weil-restriction-decomposition", ok, "St + sum_{mu != 1} omega_{psi,mu,1}");
    }
    {
        bool ok = true;
        std::string bad;
        for (size_t i = 0; i < irreps.size() && ok; ++i) {
            auto prod = pointwise_product(chs[i], chw);
            auto dec = decompose(U.cd, prod, chs);
            auto want = prop72_expected(U, irreps[i]);
            if (dec.residual != 0 || dec.mult != want) {
                ok = false;
                bad = irreps[i].name;
            }
        }
        s.add("prop7.2-all-parameters", ok, bad);
    }
    return s;
}

// ---- structural certifications ----

inline Suite verify_structures(int q, bool exhaustive, uint64_t seed) {
    Suite s{"structures q=" + std::to_string(q), {}};
    Sl2Setup S(q);
    auto sp4 = Sp4Model::make(S.k);
    {
        long long want = (long long)q * q * q * q * ((long long)q * q - 1) *
                         ((long long)q * q * q * q - 1);
        s.add("sp4-order", sp4->order() == want, std::to_string(sp4->order()));
    }
    if (exhaustive) {
        long long cnt = 0;
        bool gram = true, factor_ok = true;
        sp4->for_each([&](const FMat<4>& g) {
            ++cnt;
            gram = gram && sp4->member(g);
            auto f = sp4->factorizer->factorize(g);
            factor_ok = factor_ok &&
                        sp4->mul(sp4->mul(f.j1, sp4->hooks.listed[f.rep]), f.j2) == g;
        });
        s.add("sp4-gram-exhaustive", gram, std::to_string(cnt) + " elements");
        s.add("sp4-coset-coverage", factor_ok);
    }
    // Sp4 J-embedding: exhaustive isomorphism at q = 3
    {
        HeisModel H{WeilConvention::Sp4Style, &S.k, &S.E};
        Sl2Jacobi J{&S.G, &H};
        std::vector<Sl2Jacobi::Elem> je;
        J.for_each([&](const Sl2Jacobi::Elem& e) { je.push_back(e); });
        std::unordered_set<FMat<4>, FMat<4>::Hash> image;
        bool ok = true;
        for (const auto& e : je) {
            auto m = sp4->embed(e.g, e.h);
            ok = ok && sp4->member(m) && sp4->in_j(m);
            image.insert(m);
        }
        ok = ok && image.size() == je.size();
        if (exhaustive) {
            for (size_t i = 0; i < je.size() && ok; ++i)
                for (size_t j = 0; j < je.size(); ++j) {
                    auto prod = J.mul(je[i], je[j]);
                    if (sp4->mul(sp4->embed(je[i].g, je[i].h), sp4->embed(je[j].g, je[j].h)) !=
                        sp4->embed(prod.g, prod.h)) {
                        ok = false;
                        break;
                    }
                }
        } else {
            std::mt19937_64 rng(seed);
            for (int t = 0; t < 2000 && ok; ++t) {
                const auto& a = je[rng() % je.size()];
                const auto& b = je[rng() % je.size()];
                auto prod = J.mul(a, b);
                ok = sp4->mul(sp4->embed(a.g, a.h), sp4->embed(b.g, b.h)) ==
                     sp4->embed(prod.g, prod.h);
            }
        }
        s.add("sp4-j-embedding", ok, "|J| = " + std::to_string(je.size()));
    }
    // proof-pack relations around eta(a), xi(a)
    {
        bool ok = true;
        for (int a = 1; a < q; ++a) {
            ok = ok && sp4->tau(sp4->eta_rep(a)) == sp4->eta_rep(a);
            ok = ok && sp4->tau(sp4->xi_rep(a)) == sp4->xi_rep(a);
            for (int y = 0; y < q; ++y) {
                int a2y = S.k.mul(S.k.mul(a, a), y);
                ok = ok && sp4->mul(sp4->eta_rep(a), sp4->xroot(1, y)) ==
                               sp4->mul(sp4->embed(S.G.id(), {0, 0, a2y}), sp4->eta_rep(a));
                ok = ok && sp4->mul(sp4->eta_rep(a), sp4->embed(S.G.id(), {0, y, 0})) ==
                               sp4->mul(sp4->embed(S.G.id(), {0, y, 0}), sp4->eta_rep(a));
            }
        }
        s.add("sp4-relation-pack", ok);
    }
    // U4: order streamed + embedding
    {
        auto u4 = U4Model::make(S.E);
        long long q2 = (long long)q * q;
        long long want = q2 * q2 * q2 * (q + 1) * (q2 - 1) * ((long long)q * q * q + 1) *
                         (q2 * q2 - 1) / ((long long)q * q * q * q * q * q);
        // |U4| = q^6 (q+1)(q^2-1)(q^3+1)(q^4-1); spell it directly
        want = 1;
        {
            long long Q = q;
            want = Q * Q * Q * Q * Q * Q;
            want *= (Q + 1);
            want *= (Q * Q - 1);
            want *= (Q * Q * Q + 1);
            want *= (Q * Q * Q * Q - 1);
        }
        s.add("u4-order", u4->order() == want, std::to_string(u4->order()));
        U2Setup U(S);
        HeisModel HE{WeilConvention::UnitaryStyle, &S.k, &S.E};
        U2Jacobi JU{&U.G, &HE};
        std::vector<U2Jacobi::Elem> je;
        JU.for_each([&](const U2Jacobi::Elem& e) { je.push_back(e); });
        std::unordered_set<FMat<4>, FMat<4>::Hash> image;
        bool ok = true;
        for (const auto& e : je) {
            auto m = u4->embed(e.g, e.h);
            ok = ok && u4->member(m) && u4->in_j(m);
            image.insert(m);
            auto [g2, h2] = u4->coords(m);
            ok = ok && g2 == e.g && h2 == e.h;
        }
        ok = ok && image.size() == je.size();
        long long pairs = exhaustive ? (long long)je.size() * (long long)je.size() : 20000;
        if (exhaustive) {
            parallel_for(0, (long long)je.size(), [&](long long i) {
                if (!ok) return;
                for (size_t j = 0; j < je.size(); ++j) {
                    auto prod = JU.mul(je[i], je[j]);
                    if (u4->mul(u4->embed(je[i].g, je[i].h), u4->embed(je[j].g, je[j].h)) !=
                        u4->embed(prod.g, prod.h)) {
                        ok = false;
                        return;
                    }
                }
            });
        } else {
            std::mt19937_64 rng(seed + 1);
            for (int t = 0; t < 20000 && ok; ++t) {
                const auto& a = je[rng() % je.size()];
                const auto& b = je[rng() % je.size()];
                auto prod = JU.mul(a, b);
                ok = u4->mul(u4->embed(a.g, a.h), u4->embed(b.g, b.h)) ==
                     u4->embed(prod.g, prod.h);
            }
        }
        s.add("u4-j-embedding", ok,
              "|J| = " + std::to_string(je.size()) + ", pairs checked = " +
                  std::to_string(pairs));
    }
    // G2: relations, order, pr
    {
        auto g2 = G2Model::make(S.k);
        auto rel = g2_check_relations(*g2, exhaustive, seed);
        std::string collapsed;
        for (const auto& c : rel.collapsed_mod_p) collapsed += c + "; ";
        s.add("g2-relations-5.1-5.4", rel.ok, rel.ok ? collapsed : rel.failure);
        long long Q = q, q6 = Q * Q * Q * Q * Q * Q;
        s.add("g2-order", g2->order() == q6 * (q6 - 1) * (Q * Q - 1),
              std::to_string(g2->order()));
        HeisModel H{WeilConvention::G2Style, &S.k, &S.E};
        bool prok = true;
        if (exhaustive) {
            std::vector<std::array<int, 5>> vs;
            for (int r1 = 0; r1 < q; ++r1)
                for (int r2 = 0; r2 < q; ++r2)
                    for (int r3 = 0; r3 < q; ++r3)
                        for (int r4 = 0; r4 < q; ++r4)
                            for (int r5 = 0; r5 < q; ++r5) vs.push_back({r1, r2, r3, r4, r5});
            for (const auto& a : vs)
                for (const auto& b : vs) {
                    auto prod = g2->mul(g2->velem(a[0], a[1], a[2], a[3], a[4]),
                                        g2->velem(b[0], b[1], b[2], b[3], b[4]));
                    if (!(g2->pr(g2->vcoords(prod)) == H.add(g2->pr(a), g2->pr(b)))) {
                        prok = false;
                        break;
                    }
                }
        } else {
            std::mt19937_64 rng(seed + 2);
            for (int t = 0; t < 3000 && prok; ++t) {
                std::array<int, 5> a, b;
                for (int i = 0; i < 5; ++i) {
                    a[i] = (int)(rng() % q);
                    b[i] = (int)(rng() % q);
                }
                auto prod = g2->mul(g2->velem(a[0], a[1], a[2], a[3], a[4]),
                                    g2->velem(b[0], b[1], b[2], b[3], b[4]));
                prok = g2->pr(g2->vcoords(prod)) == H.add(g2->pr(a), g2->pr(b));
            }
        }
        s.add("g2-pr-homomorphism", prok, exhaustive ? "all |V|^2 pairs" : "sampled");
    }
    // pairing identities: Eqs (3.1)-(3.7), (5.9), and the I(1)-level Lemma 3.6
    {
        bool ok = true;
        // Lemma 3.6 in the I(1) coset model
        auto iota_img = [&](int c) {
            FMat<2> d1 = S.G.make(S.k.neg(1), 0, 0, 1);
            auto x = S.G.mul(d1, S.G.mul(detail::coset_rep(S.G, c), d1));
            return detail::coset_classify(S.k, x).first;
        };
        auto pairI1 = [&](int a, int b) { return iota_img(a) == b ? 1 : 0; };
        long long f1f1 = 0;
        for (int a2 = 0; a2 <= q; ++a2)
            for (int b = 0; b <= q; ++b) f1f1 += pairI1(a2, b);
        ok = ok && f1f1 == q + 1;
        for (int r = 0; r < q; ++r) {
            long long f1fw = 0;
            for (int a2 = 0; a2 <= q; ++a2) f1fw += pairI1(a2, 1 + r);
            ok = ok && f1fw == 1;
            for (int t = 0; t < q; ++t)
                ok = ok && pairI1(1 + r, 1 + t) == (t == S.k.neg(r) ? 1 : 0);
        }
        // Eq (3.4) on the F_r representatives inside I(1)
        for (int r = 0; r < q && ok; ++r)
            for (int t = 0; t < q; ++t) {
                long long v = f1f1;
                for (int a2 = 0; a2 <= q; ++a2) v -= pairI1(a2, 1 + t);
                for (int b = 0; b <= q; ++b) v -= pairI1(1 + r, b);
                v += pairI1(1 + r, 1 + t);
                ok = ok && v == q - 1 + (t == S.k.neg(r) ? 1 : 0);
            }
        s.add("lemma3.6-and-eq3.4", ok);
        // invariance of every SL2 model pairing over generators, both iotas
        auto irreps = sl2_irrep_list(S);
        FMat<2> d1 = S.G.make(S.k.neg(1), 0, 0, 1);
        bool inv = true;
        for (auto& ir : irreps)
            for (const auto& g : S.G.generators()) {
                auto ig = S.G.mul(d1, S.G.mul(g, d1));
                inv = inv &&
                      ir.rep.eval(g).transpose() * ir.pairing * ir.rep.eval(ig) == ir.pairing;
            }
        s.add("sl2-pairings-invariant", inv);
        // Weil pairs: Eq (3.1) identity form and Eq (5.9) antidiagonal form
        HeisModel H1{WeilConvention::Sp4Style, &S.k, &S.E};
        HeisModel H2{WeilConvention::G2Style, &S.k, &S.E};
        Sl2Jacobi J1{&S.G, &H1}, J2{&S.G, &H2};
        auto w1 = build_weil(S, WeilConvention::Sp4Style, J1);
        auto w2 = build_weil(S, WeilConvention::G2Style, J2);
        CMat b1 = CMat::identity(q);
        CMat b2(q, q);
        for (int i = 0; i < q; ++i) b2(i, S.k.neg(i)) = CycloNum(1);
        bool wok = true;
        auto iota1 = [&](const Sl2Jacobi::Elem& e) {
            FMat<2> gi = S.G.mul(d1, S.G.mul(e.g, d1));
            return Sl2Jacobi::Elem{gi, {e.h.x, S.k.neg(e.h.y), S.k.neg(e.h.z)}};
        };
        auto iota2 = [&](const Sl2Jacobi::Elem& e) {
            FMat<2> gi = S.G.mul(d1, S.G.mul(e.g, d1));
            return Sl2Jacobi::Elem{gi, {S.k.neg(e.h.x), e.h.y, S.k.neg(e.h.z)}};
        };
        for (const auto& e : J1.generators())
            wok = wok && w1.rep.eval(e).transpose() * b1 * w1.rep.eval(iota1(e)) == b1;
        for (const auto& e : J2.generators())
            wok = wok && w2.rep.eval(e).transpose() * b2 * w2.rep.eval(iota2(e)) == b2;
        s.add("weil-pairings-3.1-and-5.9", wok);
    }
    return s;
}

// ---- the Hecke verdict runs ----

struct TheoremCase {
    std::string pi;
    int dim_sigma = 0;
    int dim_a = 0;
    std::vector<long long> dim_per_class;
    std::vector<bool> tau_fixed;
    bool tau_compatible = false;
    Commutativity verdict = Commutativity::Inconclusive;
    bool convolution_checked = false;
    bool convolution_commutes = false;
    bool mackey_identity = false;  // only computed where class data exists
    std::string witness;
};

struct TheoremReport {
    std::string name;
    std::vector<TheoremCase> cases;
    bool all_proven() const {
        for (const auto& c : cases)
            if (c.verdict != Commutativity::Proven &&
                c.verdict != Commutativity::ProvenByConvolution)
                return false;
        return !cases.empty();
    }
};

inline std::vector<Sl2Irrep> theorem_pi_list(const Sl2Setup& S, const std::string& which) {
    std::vector<Sl2Irrep> pis;
    auto want = [&](const std::string& n) { return which == "all" || which == n; };
    if (want("trivial") || want("1")) pis.push_back(build_trivial(S));
    if (want("st") || want("steinberg")) pis.push_back(build_steinberg(S));
    for (long long m : S.b_set())
        if (want("cuspidal") || which == "all" || which == "cuspidal:mu=" + std::to_string(m))
            pis.push_back(build_cuspidal(S, m));
    if (want("weil+") || want("weilplus")) {}
    if (which == "all" || which == "weil+" || which == "omega+") {
        pis.push_back(build_weil_pm(S, 1, true));
        pis.push_back(build_weil_pm(S, S.k.kappa, true));
    }
    if (which == "all" || which == "weil-" || which == "omega-") {
        pis.push_back(build_weil_pm(S, 1, false));
        pis.push_back(build_weil_pm(S, S.k.kappa, false));
    }
    return pis;
}

inline TheoremReport verify_thm41(int q, const std::string& pi_filter, bool with_convolution,
                                  bool with_mackey) {
    TheoremReport rep;
    rep.name = "thm4.1 q=" + std::to_string(q);
    Sl2Setup S(q);
    auto G = Sp4Model::make(S.k);
    HeisModel H{WeilConvention::Sp4Style, &S.k, &S.E};
    Sl2Jacobi J{&S.G, &H};
    auto w = build_weil(S, WeilConvention::Sp4Style, J);
    certify_weil(w.rep, J, S.k, 2 * S.k.p, S.psi, 200, 3);

    std::vector<FMat<4>> jelems;
    J.for_each([&](const Sl2Jacobi::Elem& e) { jelems.push_back(G->embed(e.g, e.h)); });
    std::vector<FMat<4>> cosets;
    ClassData<Sp4Model> cd;
    if (with_convolution || with_mackey) {
        std::set<std::array<int, 4>> seen;
        std::unordered_set<FMat<4>, FMat<4>::Hash> cseen;
        auto gens = G->generators();
        G->for_each([&](const FMat<4>& g) {
            auto gi = G->inv(g);
            std::array<int, 4> key{gi(0, 0), gi(1, 0), gi(2, 0), gi(3, 0)};
            if (seen.insert(key).second) cosets.push_back(g);
            if (with_mackey && !cseen.count(g)) {
                std::vector<FMat<4>> stack{g};
                cseen.insert(g);
                long long n = 0;
                while (!stack.empty()) {
                    FMat<4> x = stack.back();
                    stack.pop_back();
                    ++n;
                    for (const auto& h : gens) {
                        FMat<4> y = G->mul(G->inv(h), G->mul(x, h));
                        if (cseen.insert(y).second) stack.push_back(y);
                    }
                }
                cd.reps.push_back(g);
                cd.sizes.push_back(n);
            }
        });
    }

    for (auto& pi : theorem_pi_list(S, pi_filter)) {
        TheoremCase tc;
        tc.pi = pi.name;
        auto sp = build_sp4_paired(*G, S, pi, w);
        tc.dim_sigma = sp.dim;
        HeckeProblem<FMat<4>> P;
        const Sp4Model* Gp = G.get();
        P.mul = [Gp](const FMat<4>& a, const FMat<4>& b) { return Gp->mul(a, b); };
        P.inv = [Gp](const FMat<4>& a) { return Gp->inv(a); };
        P.jelems = jelems;
        P.listed = G->hooks.listed;
        P.factorize = [Gp](const FMat<4>& g, FMat<4>& j1, int& r, FMat<4>& j2) {
            auto f = Gp->factorizer->factorize(g);
            j1 = f.j1;
            r = f.rep;
            j2 = f.j2;
        };
        P.tau = [Gp](const FMat<4>& g) { return Gp->tau(g); };
        const Sp4Paired* spp = &sp;
        P.sigma = [spp](const FMat<4>& j) { return spp->eval(j); };
        P.transpose_op = [spp](const CMat& a) { return spp->transpose_op(a); };
        P.dim = sp.dim;
        auto A = HeckeAlgebra<FMat<4>>::build(std::move(P));
        tc.dim_a = A.dim_a;
        tc.dim_per_class.assign(A.space_per_class.size(), 0);
        for (size_t c = 0; c < A.space_per_class.size(); ++c)
            tc.dim_per_class[c] = (long long)A.space_per_class[c].size();
        tc.tau_compatible = A.tau_compatible;
        auto verdict = multiplicity_free_verdict(A, false);
        tc.verdict = verdict.verdict;
        tc.tau_fixed = verdict.tau_fixed;
        if (with_convolution) {
            tc.convolution_checked = true;
            tc.convolution_commutes = true;
            long long jorder = (long long)jelems.size();
            for (size_t i = 0; i < A.basis_index.size() && tc.convolution_commutes; ++i)
                for (size_t j = i + 1; j < A.basis_index.size() && tc.convolution_commutes;
                     ++j) {
                    HeckeElem Ki = A.basis_element(i), Kj = A.basis_element(j);
                    for (size_t c = 0; c < A.canonical.size(); ++c) {
                        const auto& r = A.P.listed[A.canonical[c]];
                        if (A.convolve_at(Ki, Kj, r, cosets, jorder) !=
                            A.convolve_at(Kj, Ki, r, cosets, jorder)) {
                            tc.convolution_commutes = false;
                            tc.witness = "commutator at basis pair " + std::to_string(i) +
                                         "," + std::to_string(j);
                            break;
                        }
                    }
                }
        }
        if (with_mackey) {
            std::unordered_map<FMat<4>, CycloNum, FMat<4>::Hash> chsig;
            for (const auto& j : jelems) chsig.emplace(j, sp.eval(j).trace());
            ClassFunction ind;
            ind.values.assign(cd.reps.size(), CycloNum(0));
            G->for_each([&](const FMat<4>& x) {
                auto xi = G->inv(x);
                for (size_t i = 0; i < cd.reps.size(); ++i) {
                    auto c = G->mul(xi, G->mul(cd.reps[i], x));
                    auto it = chsig.find(c);
                    if (it != chsig.end()) ind.values[i] += it->second;
                }
            });
            for (auto& v : ind.values)
                v = CycloNum(Rat(1, (long long)jelems.size())) * v;
            tc.mackey_identity = inner_product(cd, ind, ind) == CycloNum(A.dim_a);
        }
        rep.cases.push_back(std::move(tc));
    }
    return rep;
}

struct G2CoverageReport {
    bool ran = false;
    bool ok = false;
    long long elements = 0;
    std::vector<long long> hits_per_listed;
    std::vector<int> class_of_listed;
    std::vector<long long> class_orbit_mass;  // |J r J| per class via vector orbits
};

// Full-enumeration certification of the double-coset decomposition: every
// element refactors exactly through a listed representative, and the per-rep
// masses agree with the exact orbit sizes classwise.
inline G2CoverageReport g2_certify_coverage(const G2Model& G, const Sl2Setup& S) {
    G2CoverageReport rep;
    rep.ran = true;
    auto part = coset_partition(S.k, G.hooks.listed, G.j_generators());
    rep.class_of_listed = part.class_of;
    long long jorder = (long long)S.G.order() * S.k.q * S.k.q * S.k.q * S.k.q * S.k.q;
    for (long long o : part.orbit_size) rep.class_orbit_mass.push_back(o * jorder);
    size_t nw = G.bruhat.wdot.size();
    std::vector<std::vector<long long>> hits(nw,
                                             std::vector<long long>(G.hooks.listed.size(), 0));
    std::vector<long long> counts(nw, 0);
    std::vector<char> oks(nw, 1);
    // resumable at Weyl-cell granularity when FJMOD_CACHE_DIR is set
    std::string cache;
    if (const char* env = std::getenv("FJMOD_CACHE_DIR"))
        cache = std::string(env) + "/g2_coverage_q" + std::to_string(S.k.q) + ".cells";
    std::vector<char> done(nw, 0);
    if (!cache.empty()) {
        std::ifstream in(cache);
        long long w, cnt, ok;
        while (in >> w >> cnt >> ok) {
            if (w < 0 || w >= (long long)nw) continue;
            done[w] = 1;
            counts[w] = cnt;
            oks[w] = (char)ok;
            for (auto& h : hits[w]) in >> h;
        }
    }
    std::mutex ck_mu;
    // parallel over Weyl cells: workers stream disjoint cells and the
    // per-cell tallies reduce in index order afterwards
    parallel_for(0, (long long)nw, [&](long long w) {
        if (done[w]) return;
        G.bruhat.enumerate_cell((int)w, [&](const FMat<7>& g) {
            ++counts[w];
            auto f = G.factorizer->factorize(g);
            if (G.mul(G.mul(f.j1, G.hooks.listed[f.rep]), f.j2) != g) oks[w] = 0;
            ++hits[w][f.rep];
        });
        if (!cache.empty()) {
            std::lock_guard<std::mutex> lk(ck_mu);
            std::ofstream out(cache, std::ios::app);
            out << w << " " << counts[w] << " " << (int)oks[w];
            for (long long h : hits[w]) out << " " << h;
            out << "\n";
        }
    });
    rep.ok = true;
    rep.hits_per_listed.assign(G.hooks.listed.size(), 0);
    for (size_t w = 0; w < nw; ++w) {
        rep.elements += counts[w];
        rep.ok = rep.ok && oks[w];
        for (size_t i = 0; i < hits[w].size(); ++i) rep.hits_per_listed[i] += hits[w][i];
    }
    rep.ok = rep.ok && rep.elements == G.order();
    // classwise: hits sum to the exact orbit masses
    std::vector<long long> mass(rep.class_orbit_mass.size(), 0);
    for (size_t i = 0; i < rep.hits_per_listed.size(); ++i)
        mass[part.class_of[i]] += rep.hits_per_listed[i];
    for (size_t c = 0; c < mass.size(); ++c)
        rep.ok = rep.ok && mass[c] == rep.class_orbit_mass[c];
    return rep;
}

inline TheoremReport verify_thm61(int q, const std::string& pi_filter, bool allow_convolution) {
    TheoremReport rep;
    rep.name = "thm6.1 q=" + std::to_string(q);
    Sl2Setup S(q);
    auto G = G2Model::make(S.k);
    auto wf = G2WeilFactor::make(*G, S);

    std::vector<FMat<7>> jelems;
    for (const auto& g : S.elements)
        for (int r1 = 0; r1 < q; ++r1)
            for (int r2 = 0; r2 < q; ++r2)
                for (int r3 = 0; r3 < q; ++r3)
                    for (int r4 = 0; r4 < q; ++r4)
                        for (int r5 = 0; r5 < q; ++r5)
                            jelems.push_back(G->embed(g, {r1, r2, r3, r4, r5}));

    // coset representatives of J\G are only materialized if a case needs the
    // convolution fallback (the tau route needs no pass over G at all)
    std::vector<FMat<7>> cosets;
    auto ensure_cosets = [&]() {
        if (!cosets.empty()) return;
        std::set<std::array<int, 7>> seen;
        G->for_each([&](const FMat<7>& g) {
            auto gi = G->inv(g);
            std::array<int, 7> key;
            for (int i = 0; i < 7; ++i) key[i] = gi(i, 0);
            if (seen.insert(key).second) cosets.push_back(g);
        });
    };

    for (auto& pi : theorem_pi_list(S, pi_filter)) {
        TheoremCase tc;
        tc.pi = pi.name;
        auto sp = build_g2_paired(*G, S, pi, wf);
        tc.dim_sigma = sp.dim;
        HeckeProblem<FMat<7>> P;
        const G2Model* Gp = G.get();
        P.mul = [Gp](const FMat<7>& a, const FMat<7>& b) { return Gp->mul(a, b); };
        P.inv = [Gp](const FMat<7>& a) { return Gp->inv(a); };
        P.jelems = jelems;
        P.listed = G->hooks.listed;
        P.factorize = [Gp](const FMat<7>& g, FMat<7>& j1, int& r, FMat<7>& j2) {
            auto f = Gp->factorizer->factorize(g);
            j1 = f.j1;
            r = f.rep;
            j2 = f.j2;
        };
        P.tau = [Gp](const FMat<7>& g) { return Gp->tau(g); };
        const G2Paired* spp = &sp;
        P.sigma = [spp](const FMat<7>& j) { return spp->eval(j); };
        P.transpose_op = [spp](const CMat& a) { return spp->transpose_op(a); };
        P.dim = sp.dim;
        auto A = HeckeAlgebra<FMat<7>>::build(std::move(P));
        tc.dim_a = A.dim_a;
        for (size_t c = 0; c < A.space_per_class.size(); ++c)
            tc.dim_per_class.push_back((long long)A.space_per_class[c].size());
        tc.tau_compatible = A.tau_compatible;
        auto verdict = multiplicity_free_verdict(A, false);
        tc.verdict = verdict.verdict;
        tc.tau_fixed = verdict.tau_fixed;
        if (tc.verdict != Commutativity::Proven && allow_convolution) {
            ensure_cosets();
            tc.convolution_checked = true;
            tc.convolution_commutes = true;
            for (size_t i = 0; i < A.basis_index.size() && tc.convolution_commutes; ++i)
                for (size_t j = i + 1; j < A.basis_index.size() && tc.convolution_commutes;
                     ++j) {
                    HeckeElem Ki = A.basis_element(i), Kj = A.basis_element(j);
                    for (size_t c = 0; c < A.canonical.size(); ++c) {
                        const auto& r = A.P.listed[A.canonical[c]];
                        if (A.convolve_at(Ki, Kj, r, cosets, (long long)jelems.size()) !=
                            A.convolve_at(Kj, Ki, r, cosets, (long long)jelems.size())) {
                            tc.convolution_commutes = false;
                            tc.witness = "noncommuting convolution of basis " +
                                         std::to_string(i) + "," + std::to_string(j) +
                                         " at representative class " + std::to_string(c);
                            break;
                        }
                    }
                }
            tc.verdict = tc.convolution_commutes ? Commutativity::ProvenByConvolution
                                                 : Commutativity::Refuted;
        }
        rep.cases.push_back(std::move(tc));
    }
    return rep;
}

// Lemma 6.4: for every supported pi and every a, the normalized intertwiner
// exists when Hom(pi, pi^a) is nonzero and has d-constant 1.
inline Suite verify_lemma64(int q) {
    Suite s{"lemma6.4 q=" + std::to_string(q), {}};
    Sl2Setup S(q);
    auto irreps = sl2_irrep_list(S);
    for (auto& pi : irreps) {
        bool ok = true;
        std::string detail;
        for (int a = 1; a < q; ++a) {
            auto res = normalized_intertwiner(S, pi, a);
            bool weil = pi.kind == Sl2Kind::WeilEven || pi.kind == Sl2Kind::WeilOdd;
            bool square = S.k.legendre(a) == 1;
            if (weil && !square) {
                ok = ok && !res.present;
                continue;
            }
            ok = ok && res.present && res.d_const == CycloNum(1) &&
                 res.lambda.transpose() * pi.pairing * res.lambda == pi.pairing;
        }
        s.add(pi.name, ok, detail);
    }
    return s;
}

// ---- the U4 run (extended): pi an irreducible of U2 not of the form I(chi) ----

inline std::vector<U2Irrep> u4_pi_list(const U2Setup& U, const std::string& which) {
    int q = U.S->E.q;
    std::vector<U2Irrep> pis;
    auto starts = [&](const std::string& p) { return which.rfind(p, 0) == 0; };
    if (which == "all" || which == "trivial" || which == "1") pis.push_back(build_u2_det(U, 0));
    if (which == "all" || which == "st" || which == "steinberg")
        pis.push_back(build_u2_steinberg(U, 0));
    if (starts("det:eta=")) pis.push_back(build_u2_det(U, std::stoll(which.substr(8))));
    if (starts("st:eta=")) pis.push_back(build_u2_steinberg(U, std::stoll(which.substr(7))));
    if (starts("cuspidal:mu=")) {
        auto rest = which.substr(12);
        auto comma = rest.find(",eta=");
        long long mu = std::stoll(rest.substr(0, comma));
        long long eta = comma == std::string::npos ? 0 : std::stoll(rest.substr(comma + 5));
        pis.push_back(build_u2_cuspidal(U, mu, eta));
    }
    if (which == "all" || which == "cuspidal")
        for (auto [m, h] : U.b_set())
            if (which == "all" ? (m == 1 && h == 0) : true)
                pis.push_back(build_u2_cuspidal(U, m, h));
    if (which == "all")
        for (long long h = 1; h <= q; ++h) pis.push_back(build_u2_det(U, h));
    return pis;
}

inline TheoremReport verify_thm_u4(int q, const std::string& pi_filter,
                                   long long max_elements = 300000) {
    TheoremReport rep;
    rep.name = "thm-u4 q=" + std::to_string(q);
    Sl2Setup S(q);
    U2Setup U(S);
    auto G = U4Model::make(S.E);
    HeisModel HE{WeilConvention::UnitaryStyle, &S.k, &S.E};
    U2Jacobi J{&U.G, &HE};
    auto w = build_u2_weil(U, J);

    std::vector<FMat<4>> jelems;
    J.for_each([&](const U2Jacobi::Elem& e) { jelems.push_back(G->embed(e.g, e.h)); });
    std::vector<FMat<4>> cosets;  // built on demand for the fallback
    auto ensure_cosets = [&]() {
        if (!cosets.empty()) return;
        std::set<std::array<int, 4>> seen;
        G->for_each([&](const FMat<4>& g) {
            auto gi = G->inv(g);
            std::array<int, 4> key{gi(0, 0), gi(1, 0), gi(2, 0), gi(3, 0)};
            if (seen.insert(key).second) cosets.push_back(g);
        });
    };

    // the iota-invariant pairing on the U2 Weil factor, solved once
    auto iota_jac = [&](const U2Jacobi::Elem& e) {
        auto m = G->iota(G->embed(e.g, e.h));
        auto [g2, h2] = G->coords(m);
        return U2Jacobi::Elem{g2, h2};
    };
    CMat b_omega = solve_invariant_pairing(w.rep, J.generators(), iota_jac);

    FMat<2> d1 = U.G.make(S.E.neg(1), 0, 0, 1);
    auto iota_u2 = [&](const FMat<2>& g) {
        return U.G.mul(d1, U.G.mul(fm_conj(S.E, g), d1));
    };

    for (auto& pi : u4_pi_list(U, pi_filter)) {
        TheoremCase tc;
        tc.pi = pi.name;
        CMat b_pi = solve_invariant_pairing(pi.rep, U.G.generators(), iota_u2);
        auto sp = build_u4_paired(*G, U, pi, w, b_pi, b_omega);
        sp.memo_cap = 1500;
        tc.dim_sigma = sp.dim;
        HeckeProblem<FMat<4>> P;
        const U4Model* Gp = G.get();
        P.mul = [Gp](const FMat<4>& a, const FMat<4>& b) { return Gp->mul(a, b); };
        P.inv = [Gp](const FMat<4>& a) { return Gp->inv(a); };
        P.jelems = jelems;
        P.listed = G->hooks.listed;
        P.factorize = [Gp](const FMat<4>& g, FMat<4>& j1, int& r, FMat<4>& j2) {
            auto f = Gp->factorizer->factorize(g);
            j1 = f.j1;
            r = f.rep;
            j2 = f.j2;
        };
        P.tau = [Gp](const FMat<4>& g) { return Gp->tau(g); };
        const U4Paired* spp = &sp;
        P.sigma = [spp](const FMat<4>& j) { return spp->eval(j); };
        P.transpose_op = [spp](const CMat& a) { return spp->transpose_op(a); };
        P.dim = sp.dim;
        auto A = HeckeAlgebra<FMat<4>>::build(std::move(P));
        tc.dim_a = A.dim_a;
        for (size_t c = 0; c < A.space_per_class.size(); ++c)
            tc.dim_per_class.push_back((long long)A.space_per_class[c].size());
        tc.tau_compatible = A.tau_compatible;
        auto verdict = multiplicity_free_verdict(A, false);
        tc.verdict = verdict.verdict;
        tc.tau_fixed = verdict.tau_fixed;
        if (tc.verdict != Commutativity::Proven) {
            // tau permutes the t(a)-cosets of U4 nontrivially (tau t(a) =
            // t(a^-1)), so the transpose route cannot close every case; the
            // convolution fallback settles it within the element budget,
            // otherwise the case stays honestly Inconclusive
            long long pairs = (long long)A.basis_index.size() *
                              ((long long)A.basis_index.size() - 1) / 2;
            long long est = pairs * (long long)A.canonical.size() * 64;
            if (est <= max_elements) {
                ensure_cosets();
                bool commutes = true;
                std::string witness;
                for (size_t i = 0; i < A.basis_index.size() && commutes; ++i)
                    for (size_t j = i + 1; j < A.basis_index.size() && commutes; ++j) {
                        HeckeElem Ki = A.basis_element(i), Kj = A.basis_element(j);
                        for (size_t c = 0; c < A.canonical.size(); ++c) {
                            const auto& r = A.P.listed[A.canonical[c]];
                            if (A.convolve_at(Ki, Kj, r, cosets, (long long)jelems.size()) !=
                                A.convolve_at(Kj, Ki, r, cosets, (long long)jelems.size())) {
                                commutes = false;
                                witness = "basis pair " + std::to_string(i) + "," +
                                          std::to_string(j);
                                break;
                            }
                        }
                    }
                tc.convolution_checked = true;
                tc.convolution_commutes = commutes;
                tc.witness = witness;
                tc.verdict = commutes ? Commutativity::ProvenByConvolution
                                      : Commutativity::Refuted;
            } else {
                tc.witness = "convolution fallback exceeds the element budget (" +
                             std::to_string(est) + " > " + std::to_string(max_elements) +
                             "); raise --max-elements to run it";
            }
        }
        rep.cases.push_back(std::move(tc));
    }
    return rep;
}

}  // namespace fjmod
