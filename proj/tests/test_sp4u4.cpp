#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unordered_set>

#include "fjmod/sp4u4.hpp"

using namespace fjmod;

TEST_CASE("Sp4: order, Gram relations, Bruhat factorization") {
    Sl2Setup S(3);
    auto G = Sp4Model::make(S.k);
    CHECK(G->order() == 51840);

    long long count = 0;
    bool all_member = true;
    std::unordered_set<FMat<4>, FMat<4>::Hash> seen;
    G->for_each([&](const FMat<4>& g) {
        ++count;
        all_member = all_member && G->member(g);
        seen.insert(g);
    });
    CHECK(count == 51840);
    CHECK((long long)seen.size() == count);  // injective enumeration
    CHECK(all_member);

    // structural factorization g = u . wdot . b certified by remultiplication
    std::mt19937_64 rng(1);
    long long idx = 0;
    std::vector<FMat<4>> sample;
    G->for_each([&](const FMat<4>& g) {
        if (idx++ % 617 == 0) sample.push_back(g);
    });
    for (const auto& g : sample) {
        auto uwb = G->bruhat.factor_uwb(g);
        CHECK(G->mul(G->mul(uwb.u, G->bruhat.wdot[uwb.w]), uwb.b) == g);
    }
}

TEST_CASE("Sp4: J = Stab(e1) matches the embedded Jacobi group exactly") {
    Sl2Setup S(3);
    auto G = Sp4Model::make(S.k);
    HeisModel H{WeilConvention::Sp4Style, &S.k, &S.E};
    Sl2Jacobi J{&S.G, &H};
    CHECK(J.order() == 648);

    // embedding lands in Sp4, is injective, and is an exhaustive homomorphism
    std::unordered_set<FMat<4>, FMat<4>::Hash> image;
    std::vector<Sl2Jacobi::Elem> jelems;
    J.for_each([&](const Sl2Jacobi::Elem& e) { jelems.push_back(e); });
    for (const auto& e : jelems) {
        FMat<4> m = G->embed(e.g, e.h);
        CHECK(G->member(m));
        CHECK(G->in_j(m));
        image.insert(m);
        auto [g2, h2] = G->coords(m);
        CHECK(g2 == e.g);
        CHECK((h2 == e.h));
    }
    CHECK(image.size() == 648);
    for (const auto& a : jelems)
        for (const auto& b : jelems) {
            auto prod = J.mul(a, b);
            if (G->mul(G->embed(a.g, a.h), G->embed(b.g, b.h)) != G->embed(prod.g, prod.h)) {
                FAIL("embedding is not a homomorphism");
            }
        }
    // J as a subset of Sp4 has exactly 648 elements
    long long jcount = 0;
    G->for_each([&](const FMat<4>& g) { jcount += G->in_j(g) ? 1 : 0; });
    CHECK(jcount == 648);
}

TEST_CASE("Sp4: iota and tau") {
    Sl2Setup S(3);
    auto G = Sp4Model::make(S.k);
    HeisModel H{WeilConvention::Sp4Style, &S.k, &S.E};
    // iota [x,y,z] = [x,-y,-z]; iota on the SL2 block is the MVW involution
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        int x = rng() % 3, y = rng() % 3, z = rng() % 3;
        const auto& g = S.elements[rng() % S.elements.size()];
        FMat<4> m = G->iota(G->embed(g, {x, y, z}));
        FMat<2> d1 = S.G.make(S.k.neg(1), 0, 0, 1);
        FMat<2> gi = S.G.mul(d1, S.G.mul(g, d1));
        CHECK(m == G->embed(gi, {x, S.k.neg(y), S.k.neg(z)}));
        CHECK(G->iota(G->iota(m)) == m);
    }
    // tau fixes the representatives: t(+-1), eta(a), xi(a)
    for (int a = 1; a < 3; ++a) {
        CHECK(G->tau(G->eta_rep(a)) == G->eta_rep(a));
        CHECK(G->tau(G->xi_rep(a)) == G->xi_rep(a));
        CHECK(G->tau(G->t_rep(a)) == G->t_rep(S.k.inv(a)));
    }
    // proof-pack relations: eta(a) x_beta(y) = [0,0,a^2 y] eta(a), etc.
    for (int a = 1; a < 3; ++a)
        for (int y = 0; y < 3; ++y) {
            int a2y = S.k.mul(S.k.mul(a, a), y);
            CHECK(G->mul(G->eta_rep(a), G->xroot(1, y)) ==
                  G->mul(G->embed(S.G.id(), {0, 0, a2y}), G->eta_rep(a)));
            CHECK(G->mul(G->eta_rep(a), G->embed(S.G.id(), {0, 0, a2y})) ==
                  G->mul(G->xroot(1, y), G->eta_rep(a)));
            CHECK(G->mul(G->eta_rep(a), G->embed(S.G.id(), {0, y, 0})) ==
                  G->mul(G->embed(S.G.id(), {0, y, 0}), G->eta_rep(a)));
            // xi(a) commutes with the SL2 block
            const auto& g = S.elements[(a * 7 + y) % S.elements.size()];
            CHECK(G->mul(G->xi_rep(a), G->embed(g, {0, 0, 0})) ==
                  G->mul(G->embed(g, {0, 0, 0}), G->xi_rep(a)));
        }
}

TEST_CASE("Sp4: double cosets cover the group; factorizer certified elementwise") {
    Sl2Setup S(3);
    auto G = Sp4Model::make(S.k);
    std::vector<long long> hits(G->hooks.listed.size(), 0);
    long long bad = 0;
    G->for_each([&](const FMat<4>& g) {
        auto f = G->factorizer->factorize(g);
        if (G->mul(G->mul(f.j1, G->hooks.listed[f.rep]), f.j2) != g) ++bad;
        if (!G->in_j(f.j1) || !G->in_j(f.j2)) ++bad;
        ++hits[f.rep];
    });
    CHECK(bad == 0);
    long long total = 0;
    for (long long h : hits) total += h;
    CHECK(total == 51840);
    MESSAGE("orbit mass per listed representative:");
    for (size_t i = 0; i < hits.size(); ++i)
        MESSAGE("  rep " << i << " (family " << G->hooks.listed_family[i] << "): " << hits[i]);
    // the true coset partition via J-orbits of r^-1 e1
    HeisModel H{WeilConvention::Sp4Style, &S.k, &S.E};
    std::vector<FMat<4>> jgens;
    for (const auto& g : S.G.generators()) jgens.push_back(G->embed(g, {0, 0, 0}));
    jgens.push_back(G->embed(S.G.id(), {1, 0, 0}));
    jgens.push_back(G->embed(S.G.id(), {0, 1, 0}));
    jgens.push_back(G->embed(S.G.id(), {0, 0, 1}));
    auto part = coset_partition(S.k, G->hooks.listed, jgens);
    // t(a) cosets are distinct (J is normal in P); the eta family is a single
    // coset (the J-torus conjugates eta(a) to eta(ab)); xi(a) are distinct
    // (the (4,1) entry is pinned under J on both sides)
    CHECK(part.class_of[0] != part.class_of[1]);
    CHECK(part.class_of[2] == part.class_of[3]);
    CHECK(part.class_of[4] != part.class_of[5]);
    long long mass = 0;
    for (long long s : part.orbit_size) mass += s * 648;
    CHECK(mass == 51840);
    // per-element hits agree with the orbit masses classwise
    std::vector<long long> class_mass(part.orbit_size.size(), 0);
    for (size_t i = 0; i < hits.size(); ++i) class_mass[part.class_of[i]] += hits[i];
    for (size_t c = 0; c < class_mass.size(); ++c)
        CHECK(class_mass[c] == part.orbit_size[c] * 648);
}

TEST_CASE("Sp4: paired representation invariants (exhaustive over J at q=3)") {
    Sl2Setup S(3);
    auto G = Sp4Model::make(S.k);
    HeisModel H{WeilConvention::Sp4Style, &S.k, &S.E};
    Sl2Jacobi J{&S.G, &H};
    auto w = build_weil(S, WeilConvention::Sp4Style, J);
    std::vector<FMat<4>> jelems;
    G->for_each([&](const FMat<4>& g) {
        if (G->in_j(g)) jelems.push_back(g);
    });
    REQUIRE(jelems.size() == 648);

    for (auto kind : {Sl2Kind::Trivial, Sl2Kind::Steinberg, Sl2Kind::Cuspidal}) {
        Sl2Irrep pi = kind == Sl2Kind::Trivial    ? build_trivial(S)
                      : kind == Sl2Kind::Steinberg ? build_steinberg(S)
                                                   : build_cuspidal(S, 1);
        auto sp = build_sp4_paired(*G, S, pi, w);
        CHECK(sp.pairing.transpose() == sp.pairing);
        for (const auto& j : jelems) {
            CMat lhs = sp.eval(j).transpose() * sp.pairing * sp.eval(G->iota(j));
            if (lhs != sp.pairing) { FAIL("pairing invariance fails on J"); break; }
        }
        // t(sigma(j)) = sigma(tau j) on a sample
        std::mt19937_64 rng(8);
        for (int t = 0; t < 40; ++t) {
            const auto& j = jelems[rng() % jelems.size()];
            CHECK(sp.transpose_op(sp.eval(j)) == sp.eval(G->tau(j)));
        }
        // spot value from the spec: <F_0 (x) delta_1, F_0 (x) delta_1> = 3 for pi = St
        if (kind == Sl2Kind::Steinberg) {
            int idx = 0 * 3 + 1;  // F_0 (x) delta_1 in the kron basis
            CHECK(sp.pairing(idx, idx) == CycloNum(3));
        }
    }
}

TEST_CASE("Lemma 3.9: isotypic idempotents are transpose-fixed") {
    Sl2Setup S(3);
    auto G = Sp4Model::make(S.k);
    HeisModel H{WeilConvention::Sp4Style, &S.k, &S.E};
    Sl2Jacobi J{&S.G, &H};
    auto w = build_weil(S, WeilConvention::Sp4Style, J);
    auto irreps = sl2_irrep_list(S);
    auto pi = build_steinberg(S);
    auto sp = build_sp4_paired(*G, S, pi, w);
    // id_{V_i} = (dim V_i / |SL2|) sum_g conj(ch_i(g)) sigma(embed(g, 0))
    for (auto& ir : irreps) {
        CMat proj(sp.dim, sp.dim);
        for (const auto& g : S.elements) {
            CycloNum c = ir.rep.trace(g).conj();
            if (c.is_zero()) continue;
            proj = proj + c * sp.eval(G->embed(g, {0, 0, 0}));
        }
        proj = CycloNum(Rat(ir.rep.dim, S.G.order())) * proj;
        CHECK(proj * proj == proj);
        CHECK(sp.transpose_op(proj) == proj);
    }
}

TEST_CASE("U4: order streamed, Gram, J-embedding") {
    Sl2Setup S(3);
    U2Setup U(S);
    auto G = U4Model::make(S.E);
    CHECK(G->order() == 52254720);

    // J-embedding from U2 x| H_E: injective homomorphism onto Stab(e1)
    HeisModel HE{WeilConvention::UnitaryStyle, &S.k, &S.E};
    U2Jacobi J{&U.G, &HE};
    CHECK(J.order() == 23328);
    std::vector<U2Jacobi::Elem> jelems;
    J.for_each([&](const U2Jacobi::Elem& e) { jelems.push_back(e); });
    std::unordered_set<FMat<4>, FMat<4>::Hash> image;
    for (const auto& e : jelems) {
        FMat<4> m = G->embed(e.g, e.h);
        if (!G->member(m) || !G->in_j(m)) FAIL("embedded element outside J");
        image.insert(m);
        auto [g2, h2] = G->coords(m);
        if (!(g2 == e.g) || !(h2 == e.h)) FAIL("coordinate round-trip failed");
    }
    CHECK(image.size() == jelems.size());
    // homomorphism: the full pair check is the acceptance suite's job; here a
    // dense random sample
    std::mt19937_64 rng(10);
    for (int t = 0; t < 4000; ++t) {
        const auto& a = jelems[rng() % jelems.size()];
        const auto& b = jelems[rng() % jelems.size()];
        auto prod = J.mul(a, b);
        if (G->mul(G->embed(a.g, a.h), G->embed(b.g, b.h)) != G->embed(prod.g, prod.h))
            FAIL("U4 embedding is not a homomorphism");
    }
    // factorizer spot-check on structured elements
    for (int t = 0; t < 50; ++t) {
        const auto& a = jelems[rng() % jelems.size()];
        FMat<4> g = G->mul(G->embed(a.g, a.h),
                           G->mul(G->hooks.listed[rng() % G->hooks.listed.size()],
                                  G->embed(jelems[rng() % jelems.size()].g,
                                           jelems[rng() % jelems.size()].h)));
        auto f = G->factorizer->factorize(g);
        CHECK(G->mul(G->mul(f.j1, G->hooks.listed[f.rep]), f.j2) == g);
    }
}
