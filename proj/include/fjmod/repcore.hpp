#pragma once
// Generic machinery over any group model: characters, exact inner products,
// decomposition against an irreducible list, induced characters, and the
// commutant-dimension oracle. A model supplies
//   using Elem = ...;   Elem mul(a,b), inv(a), id();  long long order();
//   template <class F> void for_each(F f);  std::vector<Elem> generators();
// and Elem must be hashable via Elem::Hash.

#include <functional>
#include <random>
#include <unordered_map>

#include <memory>

#include "fjmod/linalg.hpp"

namespace fjmod {

template <class Model>
struct ClassData {
    std::vector<typename Model::Elem> reps;
    std::vector<long long> sizes;

    long long order() const {
        long long s = 0;
        for (long long x : sizes) s += x;
        return s;
    }
};

struct ClassFunction {
    std::vector<CycloNum> values;  // one per conjugacy class representative
};

// A finite-dimensional representation: dimension, basis labels mirroring the
// paper's explicit models, and a memoizing evaluator into CycloNum matrices.
template <class Model>
class Rep {
public:
    using Elem = typename Model::Elem;

    const Model* G = nullptr;
    int dim = 0;
    std::vector<std::string> labels;
    std::function<CMat(const Elem&)> eval_raw;

    CMat eval(const Elem& g) const {
        auto it = memo_.find(g);
        if (it != memo_.end()) return it->second;
        CMat m = eval_raw(g);
        memo_.emplace(g, m);
        return m;
    }
    void clear_memo() const { memo_.clear(); }

    CycloNum trace(const Elem& g) const { return eval(g).trace(); }

    // Homomorphism certificate: identity plus random product pairs.
    void certify(int pairs, uint64_t seed, const std::vector<Elem>& pool) const {
        if (eval(G->id()) != CMat::identity(dim))
            throw std::logic_error("rep fails at identity");
        std::mt19937_64 rng(seed);
        for (int i = 0; i < pairs; ++i) {
            const Elem& a = pool[rng() % pool.size()];
            const Elem& b = pool[rng() % pool.size()];
            if (eval(G->mul(a, b)) != eval(a) * eval(b))
                throw std::logic_error("rep fails homomorphism on a sampled pair");
        }
    }

private:
    mutable std::unordered_map<Elem, CMat, typename Elem::Hash> memo_;
};

template <class Model>
ClassFunction character_of(const Rep<Model>& rho, const ClassData<Model>& cd) {
    ClassFunction ch;
    ch.values.reserve(cd.reps.size());
    for (const auto& r : cd.reps) ch.values.push_back(rho.trace(r));
    return ch;
}

inline ClassFunction pointwise_product(const ClassFunction& a, const ClassFunction& b) {
    ClassFunction c;
    c.values.reserve(a.values.size());
    for (size_t i = 0; i < a.values.size(); ++i) c.values.push_back(a.values[i] * b.values[i]);
    return c;
}

// (1/|G|) sum ch_a conj(ch_b), exact, class-wise.
template <class Model>
CycloNum inner_product(const ClassData<Model>& cd, const ClassFunction& a,
                       const ClassFunction& b) {
    if (a.values.size() != cd.reps.size() || b.values.size() != cd.reps.size())
        throw std::logic_error("GroupMismatch: class function size");
    CycloNum s(0);
    for (size_t i = 0; i < cd.reps.size(); ++i)
        s += CycloNum(cd.sizes[i]) * a.values[i] * b.values[i].conj();
    return s * CycloNum(Rat(1, cd.order()));
}

struct Decomposition {
    std::vector<long long> mult;
    long long residual = 0;  // <V,V> - sum m_i^2; 0 iff the list is complete for V
};

template <class Model>
Decomposition decompose(const ClassData<Model>& cd, const ClassFunction& v,
                        const std::vector<ClassFunction>& irreps) {
    Decomposition d;
    long long sumsq = 0;
    for (const auto& irr : irreps) {
        CycloNum m = inner_product(cd, v, irr);
        long long mi;
        try {
            mi = m.to_integer();
        } catch (const std::domain_error&) {
            throw std::domain_error("NonIntegralMultiplicity: " + m.str());
        }
        if (mi < 0) throw std::domain_error("NonIntegralMultiplicity: negative");
        d.mult.push_back(mi);
        sumsq += mi * mi;
    }
    d.residual = inner_product(cd, v, v).to_integer() - sumsq;
    return d;
}

// Ind_H^G chi evaluated at the class representatives of G:
//   (Ind chi)(g) = (1/|H|) sum_{x in G, x^-1 g x in H} chi(x^-1 g x).
template <class Model, class InH, class Chi>
ClassFunction induced_character(const Model& G, const ClassData<Model>& cd, long long subgroup_order,
                                InH in_h, Chi chi) {
    ClassFunction out;
    out.values.assign(cd.reps.size(), CycloNum(0));
    G.for_each([&](const typename Model::Elem& x) {
        auto xi = G.inv(x);
        for (size_t i = 0; i < cd.reps.size(); ++i) {
            auto c = G.mul(xi, G.mul(cd.reps[i], x));
            if (in_h(c)) out.values[i] += chi(c);
        }
    });
    CycloNum scale{Rat(1, subgroup_order)};
    for (auto& v : out.values) v = scale * v;
    return out;
}

// Given a basis of a subspace of End(V) and a linear constraint K -> R(K),
// return a basis of the kernel of R within the span.
inline std::vector<CMat> refine_space(const std::vector<CMat>& basis,
                                      const std::function<CMat(const CMat&)>& residual) {
    if (basis.empty()) return {};
    int d2 = basis[0].n * basis[0].m;
    std::vector<CMat> res;
    res.reserve(basis.size());
    bool all_zero = true;
    for (const auto& K : basis) {
        res.push_back(residual(K));
        all_zero = all_zero && res.back().is_zero();
    }
    if (all_zero) return basis;
    CMat stacked(d2, (int)basis.size());
    for (int j = 0; j < (int)basis.size(); ++j)
        for (int i = 0; i < d2; ++i) stacked(i, j) = res[j].a[i];
    auto combos = nullspace(stacked);
    std::vector<CMat> out;
    for (const auto& c : combos) {
        CMat K(basis[0].n, basis[0].m);
        for (size_t j = 0; j < basis.size(); ++j) {
            if (c[j].is_zero()) continue;
            for (int i = 0; i < d2; ++i) K.a[i] += c[j] * basis[j].a[i];
        }
        out.push_back(std::move(K));
    }
    return out;
}

inline std::vector<CMat> full_endomorphism_basis(int d) {
    std::vector<CMat> basis;
    basis.reserve((size_t)d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            CMat E(d, d);
            E(i, j) = CycloNum(1);
            basis.push_back(std::move(E));
        }
    return basis;
}

// dim { X : X rho(g) = rho(g) X for all generators }, by exact nullspace.
template <class Model>
int commutant_dimension(const Rep<Model>& rho, const std::vector<typename Model::Elem>& gens) {
    std::vector<CMat> space = full_endomorphism_basis(rho.dim);
    for (const auto& g : gens) {
        CMat M = rho.eval(g);
        space = refine_space(space, [&](const CMat& K) { return M * K - K * M; });
        if (space.empty()) break;
    }
    return (int)space.size();
}

// Solve Hom(rho, sigma) = { X : X rho(g) = sigma(g) X for generators }.
template <class Model>
std::vector<CMat> hom_space(const Rep<Model>& rho, const Rep<Model>& sigma,
                            const std::vector<typename Model::Elem>& gens) {
    std::vector<CMat> space;
    for (int i = 0; i < sigma.dim; ++i)
        for (int j = 0; j < rho.dim; ++j) {
            CMat E(sigma.dim, rho.dim);
            E(i, j) = CycloNum(1);
            space.push_back(std::move(E));
        }
    for (const auto& g : gens) {
        CMat A = sigma.eval(g), B = rho.eval(g);
        space = refine_space(space, [&](const CMat& X) { return A * X - X * B; });
        if (space.empty()) break;
    }
    return space;
}

// Matrix of an invariant subspace action: columns of basis span the subspace,
// action is the ambient matrix; solves basis * out = action * basis exactly.
inline CMat subrep_matrix(const CMat& ambient_action, const CMat& basis_cols) {
    int d = basis_cols.m;
    CMat rhs = ambient_action * basis_cols;
    // least-structure exact solve: row reduce [basis | rhs]
    CMat A = basis_cols, B = rhs;
    int n = A.n;
    std::vector<int> pivot_rows;
    int col = 0;
    CMat out(d, d);
    // gaussian elimination on A with the same row ops on B
    std::vector<int> perm;
    int r = 0;
    for (int c = 0; c < d && r < n; ++c) {
        int piv = -1;
        for (int i = r; i < n; ++i)
            if (!A(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) throw std::logic_error("subrep basis not independent");
        if (piv != r) {
            for (int j = 0; j < d; ++j) std::swap(A(r, j), A(piv, j));
            for (int j = 0; j < B.m; ++j) std::swap(B(r, j), B(piv, j));
        }
        CycloNum dinv = A(r, c).inverse();
        for (int j = 0; j < d; ++j) A(r, j) = dinv * A(r, j);
        for (int j = 0; j < B.m; ++j) B(r, j) = dinv * B(r, j);
        for (int i = 0; i < n; ++i) {
            if (i == r || A(i, c).is_zero()) continue;
            CycloNum f = A(i, c);
            for (int j = 0; j < d; ++j) A(i, j) -= f * A(r, j);
            for (int j = 0; j < B.m; ++j) B(i, j) -= f * B(r, j);
        }
        perm.push_back(r);
        ++r;
        (void)col; (void)pivot_rows;
    }
    if ((int)perm.size() != d) throw std::logic_error("subrep basis rank-deficient");
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out(i, j) = B(perm[i], j);
    // consistency: rows of B outside the pivot rows must be zero
    std::vector<bool> is_piv(n, false);
    for (int i : perm) is_piv[i] = true;
    for (int i = 0; i < n; ++i) {
        if (is_piv[i]) continue;
        for (int j = 0; j < B.m; ++j)
            if (!B(i, j).is_zero())
                throw std::logic_error("subspace is not invariant under the action");
    }
    return out;
}

}  // namespace fjmod
