#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unordered_set>

#include "fjmod/sl2.hpp"

using namespace fjmod;

// independent oracle: conjugacy classes by orbit BFS under generator conjugation
static std::vector<long long> bfs_class_sizes(const Sl2Setup& S) {
    std::unordered_set<FMat<2>, FMat<2>::Hash> seen;
    std::vector<long long> sizes;
    auto gens = S.G.generators();
    for (const auto& g : S.elements) {
        if (seen.count(g)) continue;
        std::vector<FMat<2>> stack{g};
        seen.insert(g);
        long long n = 0;
        while (!stack.empty()) {
            FMat<2> x = stack.back();
            stack.pop_back();
            ++n;
            for (const auto& h : gens) {
                FMat<2> y = S.G.mul(S.G.inv(h), S.G.mul(x, h));
                if (seen.insert(y).second) stack.push_back(y);
            }
        }
        sizes.push_back(n);
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

TEST_CASE("Table 1: conjugacy data, cross-checked against BFS") {
    Sl2Setup S3(3);
    CHECK(S3.cd.reps.size() == 7);
    std::vector<long long> want3 = {1, 1, 4, 4, 4, 4, 6};
    std::vector<long long> got3 = S3.cd.sizes;
    std::sort(got3.begin(), got3.end());
    CHECK(got3 == want3);
    CHECK(bfs_class_sizes(S3) == want3);

    Sl2Setup S5(5);
    CHECK(S5.cd.reps.size() == 9);
    CHECK(S5.cd.sizes[2] == 12);  // unipotent class size (q^2-1)/2
    auto got5 = S5.cd.sizes;
    std::sort(got5.begin(), got5.end());
    CHECK(bfs_class_sizes(S5) == got5);

    // representatives are pairwise non-conjugate: check by exhausting one orbit
    for (int q : {3, 5}) {
        Sl2Setup S(q);
        for (size_t i = 0; i < S.cd.reps.size(); ++i) {
            std::unordered_set<FMat<2>, FMat<2>::Hash> orbit;
            for (const auto& x : S.elements)
                orbit.insert(S.G.mul(S.G.inv(x), S.G.mul(S.cd.reps[i], x)));
            CHECK((long long)orbit.size() == S.cd.sizes[i]);
            for (size_t j = 0; j < S.cd.reps.size(); ++j)
                if (j != i) CHECK(!orbit.count(S.cd.reps[j]));
        }
    }
}

TEST_CASE("irreducible models: dimensions, homomorphism, orthonormal characters") {
    for (int q : {3, 5}) {
        Sl2Setup S(q);
        auto irreps = sl2_irrep_list(S);
        CHECK((int)irreps.size() == q + 4);
        long long dimsq = 0;
        for (auto& ir : irreps) {
            ir.rep.certify(40, 99, S.elements);
            dimsq += (long long)ir.rep.dim * ir.rep.dim;
        }
        CHECK(dimsq == S.G.order());
        std::vector<ClassFunction> chs;
        for (auto& ir : irreps) chs.push_back(character_of(ir.rep, S.cd));
        for (size_t i = 0; i < chs.size(); ++i)
            for (size_t j = 0; j < chs.size(); ++j)
                CHECK(inner_product(S.cd, chs[i], chs[j]) == CycloNum(i == j ? 1 : 0));
        // characters are constant on classes
        std::mt19937_64 rng(5);
        for (auto& ir : irreps)
            for (size_t c = 0; c < S.cd.reps.size(); ++c)
                for (int t = 0; t < 3; ++t) {
                    const auto& x = S.elements[rng() % S.elements.size()];
                    auto conj = S.G.mul(S.G.inv(x), S.G.mul(S.cd.reps[c], x));
                    CHECK(ir.rep.trace(conj) == ir.rep.trace(S.cd.reps[c]));
                }
    }
}

TEST_CASE("element-wise inner product oracle at q=3") {
    Sl2Setup S(3);
    auto st = build_steinberg(S);
    CycloNum s(0);
    for (const auto& g : S.elements) {
        CycloNum t = st.rep.trace(g);
        s += t * t.conj();
    }
    CHECK(s == CycloNum(24));  // <ch_St, ch_St> = 1 over 24 elements
    CHECK(inner_product(S.cd, character_of(st.rep, S.cd), character_of(st.rep, S.cd)) ==
          CycloNum(1));
}

TEST_CASE("character tables match Tables 2 and 3 cell-for-cell") {
    for (int q : {3, 5, 7}) {
        Sl2Setup S(q);
        auto irreps = sl2_irrep_list(S);
        TableCheck tc = sl2_verify_tables(S, irreps);
        INFO("q = " << q << " mismatch: " << tc.mismatch);
        CHECK(tc.ok);
        MESSAGE("q=" << q << ": sqrt(eps0 q) realized with branch " << tc.branch
                      << " (g = sum_x psi(x^2))");
        // spot values from the paper
        auto st = character_of(irreps[1].rep, S.cd);
        for (size_t i = 6; i < 6 + S.split_reps.size(); ++i)
            CHECK(st.values[i] == CycloNum(1));  // St at diag(x,x^-1) is 1
    }
    // q=3: ch_{omega_psi^-}(u(1)) = -1/2 + 1/2 sqrt(-3) in Q(zeta_12)
    Sl2Setup S(3);
    auto wm = build_weil_pm(S, 1, false);
    CycloNum g0(0);
    for (int x = 0; x < 3; ++x) g0 += S.psi.value(S.k.mul(x, x), S.N);
    CHECK(g0 * g0 == CycloNum(-3));
    CHECK(wm.rep.trace(S.G.upper(1)) == CycloNum(Rat(-1, 2)) + CycloNum(Rat(1, 2)) * g0);
}

TEST_CASE("I(eps) and omega_{psi,mu0} split into Weil pieces at character level") {
    for (int q : {3, 5}) {
        Sl2Setup S(q);
        // I(eps) is reducible, so build the induced character directly
        MultChar eps = S.eps();
        auto wp = build_weil_pm(S, 1, true), wkp = build_weil_pm(S, S.k.kappa, true);
        auto wm = build_weil_pm(S, 1, false), wkm = build_weil_pm(S, S.k.kappa, false);
        for (size_t c = 0; c < S.cd.reps.size(); ++c) {
            // Ind_B^G eps at class c via the coset model trace
            CycloNum tr(0);
            for (int idx = 0; idx <= q; ++idx) {
                auto [img, t] =
                    detail::coset_classify(S.k, S.G.mul(detail::coset_rep(S.G, idx), S.cd.reps[c]));
                if (img == idx) tr += eps.value(t, S.N);
            }
            CHECK(tr == wp.rep.trace(S.cd.reps[c]) + wkp.rep.trace(S.cd.reps[c]));
        }
        auto mu0rep = build_cuspidal_model(S, (q + 1) / 2);  // omega_{psi,mu_0}, reducible
        mu0rep.rep.certify(30, 17, S.elements);
        for (size_t c = 0; c < S.cd.reps.size(); ++c)
            CHECK(mu0rep.rep.trace(S.cd.reps[c]) ==
                  wm.rep.trace(S.cd.reps[c]) + wkm.rep.trace(S.cd.reps[c]));
    }
}

TEST_CASE("Prop 2.1: all tensor decompositions, all parameters, u in {1,kappa}") {
    for (int q : {3, 5}) {
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
                CHECK(dec.residual == 0);
                auto want = prop21_expected(S, irreps[i], u);
                INFO("pi = " << irreps[i].name << ", u = " << u);
                CHECK(dec.mult == want);
                // Cor 2.2: multiplicity free for non-principal pi
                if (irreps[i].kind != Sl2Kind::Principal)
                    for (long long m : dec.mult) CHECK(m <= 1);
            }
        }
    }
    // Remark 2.3 witness: <I(chi1) ox omega_psi, I(eps chi1)> = 2 at q = 5
    Sl2Setup S5(5);
    auto irreps = sl2_irrep_list(S5);
    auto pi = build_principal(S5, 1);  // chi1 of order 4
    auto amb = weil_sl2_action(S5, 1);
    auto prod = pointwise_product(character_of(pi.rep, S5.cd), character_of(amb, S5.cd));
    long long etarget = 1 + (S5.k.q - 1) / 2;  // eps chi1 exponent 3 ~ class 1... canonical
    (void)etarget;
    auto target = build_principal(S5, 1);  // eps chi1 = chi^3 ~ chi^1: same class at q=5
    CHECK(inner_product(S5.cd, prod, character_of(target.rep, S5.cd)) == CycloNum(2));
}

TEST_CASE("MVW involution: twist has the conjugate character; iota is an involution") {
    for (int q : {3, 5}) {
        Sl2Setup S(q);
        auto irreps = sl2_irrep_list(S);
        for (auto& ir : irreps) {
            auto tw = mvw_twist(S, ir.rep);
            for (size_t c = 0; c < S.cd.reps.size(); ++c)
                CHECK(tw.trace(S.cd.reps[c]) == ir.rep.trace(S.cd.reps[c]).conj());
        }
        FMat<2> d1 = S.G.make(S.k.neg(1), 0, 0, 1);
        std::mt19937_64 rng(2);
        for (int t = 0; t < 20; ++t) {
            const auto& g = S.elements[rng() % S.elements.size()];
            auto ig = S.G.mul(d1, S.G.mul(g, d1));
            CHECK(S.G.mul(d1, S.G.mul(ig, d1)) == g);
        }
    }
}

TEST_CASE("commutant dimensions") {
    Sl2Setup S(3);
    auto st = build_steinberg(S);
    CHECK(commutant_dimension(st.rep, S.G.generators()) == 1);  // Schur
    auto amb = weil_sl2_action(S, 1);
    CHECK(commutant_dimension(amb, S.G.generators()) == 2);  // omega_psi = + oplus -
    // St (x) omega_psi at q=3 has 4 irreducible summands
    Rep<Sl2Model> tensor;
    tensor.G = &S.G;
    tensor.dim = st.rep.dim * amb.dim;
    auto st_ptr = std::make_shared<Rep<Sl2Model>>(st.rep);
    auto amb_ptr = std::make_shared<Rep<Sl2Model>>(amb);
    tensor.eval_raw = [st_ptr, amb_ptr](const FMat<2>& g) {
        return st_ptr->eval(g).kron(amb_ptr->eval(g));
    };
    CHECK(commutant_dimension(tensor, S.G.generators()) == 4);
}

TEST_CASE("pairing invariance <rho(g)v, rho(iota g)w> = <v,w> for every model") {
    for (int q : {3, 5}) {
        Sl2Setup S(q);
        auto irreps = sl2_irrep_list(S);
        FMat<2> d1 = S.G.make(S.k.neg(1), 0, 0, 1);
        std::mt19937_64 rng(11);
        for (auto& ir : irreps) {
            for (int t = 0; t < 12; ++t) {
                const auto& g = S.elements[rng() % S.elements.size()];
                auto ig = S.G.mul(d1, S.G.mul(g, d1));
                CHECK(ir.rep.eval(g).transpose() * ir.pairing * ir.rep.eval(ig) == ir.pairing);
            }
            CHECK(ir.pairing.transpose() == ir.pairing);  // symmetric
        }
    }
}

TEST_CASE("Lemma 6.4: normalized intertwiners with d = 1") {
    for (int q : {3, 5}) {
        Sl2Setup S(q);
        auto irreps = sl2_irrep_list(S);
        for (auto& ir : irreps) {
            for (int a = 1; a < q; ++a) {
                auto res = normalized_intertwiner(S, ir, a);
                bool square = S.k.legendre(a) == 1;
                bool weil = ir.kind == Sl2Kind::WeilEven || ir.kind == Sl2Kind::WeilOdd;
                if (weil && !square) {
                    CHECK(!res.present);  // pi^a lands in the other psi-family
                    continue;
                }
                REQUIRE(res.present);
                CHECK(res.d_const == CycloNum(1));
                CHECK(res.lambda.transpose() * ir.pairing * res.lambda == ir.pairing);
                if (a == 1) {
                    bool pm = res.lambda == CMat::identity(ir.rep.dim) ||
                              res.lambda == CycloNum(-1) * CMat::identity(ir.rep.dim);
                    CHECK(pm);
                }
            }
        }
        // the paper's explicit cuspidal formula lambda^a f(xi) = sqrt(mu^-1(x_a^{q-1})) f(x_a xi)
        // gives a valid normalized intertwiner; uniqueness is up to sign
        auto cus = build_cuspidal(S, 1);
        MultChar mui = S.mu(1).inverse();
        for (int a = 2; a < q; ++a) {
            auto res = normalized_intertwiner(S, cus, a);
            REQUIRE(res.present);
            int xa = S.E.norm_section(a);
            CycloNum ratio = mui.value(S.E.mul(S.E.frob(xa), S.E.inv(xa)), S.N);
            auto sq = ratio.try_sqrt();
            REQUIRE(sq.has_value());
            CMat L(q - 1, q - 1);  // (lambda^a f_b) = sqrt * mu^-1(x_a x_{b/a} x_b^-1) f_{b/a}
            for (int b = 1; b < q; ++b) {
                int c0 = S.k.div(b, a);
                int u = S.E.mul(xa, S.E.mul(S.E.norm_section(c0), S.E.inv(S.E.norm_section(b))));
                L(c0 - 1, b - 1) = (*sq) * mui.value(u, S.N);
            }
            bool pm = res.lambda == L || res.lambda == CycloNum(-1) * L;
            CHECK(pm);
        }
    }
}

TEST_CASE("Frobenius reciprocity for Ind_B^G through induced_character") {
    Sl2Setup S(3);
    long long border = (long long)(S.k.q - 1) * S.k.q;
    auto in_b = [&](const FMat<2>& g) { return g(1, 0) == 0; };
    auto one = [&](const FMat<2>&) { return CycloNum(1); };
    auto ind = induced_character(S.G, S.cd, border, in_b, one);
    CHECK(ind.values[0] == CycloNum(S.k.q + 1));  // dim I(1) = q + 1
    auto irreps = sl2_irrep_list(S);
    for (auto& ir : irreps) {
        // <Ind 1, ch_pi>_G = <1, Res ch_pi>_B
        CycloNum lhs = inner_product(S.cd, ind, character_of(ir.rep, S.cd));
        CycloNum rhs(0);
        for (const auto& g : S.elements)
            if (in_b(g)) rhs += ir.rep.trace(g).conj();
        rhs = CycloNum(Rat(1, border)) * rhs;
        CHECK(lhs == rhs.conj());
        if (ir.kind == Sl2Kind::Trivial || ir.kind == Sl2Kind::Steinberg)
            CHECK(lhs == CycloNum(1));  // I(1) = 1 + St
    }
}
