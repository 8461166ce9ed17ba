#pragma once
// Small fixed-size matrices over a finite field (FqField or FqExtField, both
// expose add/mul/neg/inv on integer element indices), plus the two pieces of
// Bruhat machinery every group model here shares:
//   - pivot pattern:  the permutation w with g in B w B, B upper triangular
//   - LU splitting:   w^-1 g = L R with L lower unitriangular, R upper,
// which turns "g = u . wdot . b" into two O(n^3) passes with no group-specific
// coordinate peeling.

#include <array>
#include <cstdint>

#include "fjmod/gf.hpp"

namespace fjmod {

template <int N>
struct FMat {
    std::array<int16_t, N * N> a{};

    int operator()(int i, int j) const { return a[i * N + j]; }
    void set(int i, int j, int v) { a[i * N + j] = (int16_t)v; }

    friend bool operator==(const FMat& x, const FMat& y) { return x.a == y.a; }
    friend bool operator!=(const FMat& x, const FMat& y) { return !(x.a == y.a); }
    friend bool operator<(const FMat& x, const FMat& y) { return x.a < y.a; }

    struct Hash {
        size_t operator()(const FMat& m) const {
            uint64_t h = 1469598103934665603ull;
            for (int16_t v : m.a) { h ^= (uint64_t)(uint16_t)v; h *= 1099511628211ull; }
            return (size_t)h;
        }
    };
};

template <class Field, int N>
FMat<N> fm_identity(const Field&) {
    FMat<N> m;
    for (int i = 0; i < N; ++i) m.set(i, i, 1);
    return m;
}

template <class Field, int N>
FMat<N> fm_mul(const Field& F, const FMat<N>& A, const FMat<N>& B) {
    FMat<N> C;
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < N; ++k) {
            int x = A(i, k);
            if (!x) continue;
            for (int j = 0; j < N; ++j) {
                int y = B(k, j);
                if (y) C.a[i * N + j] = (int16_t)F.add(C(i, j), F.mul(x, y));
            }
        }
    return C;
}

template <class Field, int N>
FMat<N> fm_inv(const Field& F, const FMat<N>& M) {
    FMat<N> A = M, I = fm_identity<Field, N>(F);
    for (int c = 0; c < N; ++c) {
        int piv = -1;
        for (int r = c; r < N; ++r)
            if (A(r, c)) { piv = r; break; }
        if (piv < 0) throw std::domain_error("singular matrix over F_q");
        if (piv != c)
            for (int j = 0; j < N; ++j) {
                int t = A(c, j); A.set(c, j, A(piv, j)); A.set(piv, j, t);
                t = I(c, j); I.set(c, j, I(piv, j)); I.set(piv, j, t);
            }
        int d = F.inv(A(c, c));
        for (int j = 0; j < N; ++j) { A.set(c, j, F.mul(d, A(c, j))); I.set(c, j, F.mul(d, I(c, j))); }
        for (int r = 0; r < N; ++r) {
            if (r == c || !A(r, c)) continue;
            int f = A(r, c);
            for (int j = 0; j < N; ++j) {
                A.set(r, j, F.sub(A(r, j), F.mul(f, A(c, j))));
                I.set(r, j, F.sub(I(r, j), F.mul(f, I(c, j))));
            }
        }
    }
    return I;
}

template <class Field, int N>
FMat<N> fm_transpose(const Field&, const FMat<N>& M) {
    FMat<N> T;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) T.set(j, i, M(i, j));
    return T;
}

template <int N>
FMat<N> fm_conj(const FqExtField& E, const FMat<N>& M) {
    FMat<N> C = M;
    for (auto& v : C.a) v = (int16_t)E.frob(v);
    return C;
}

// Permutation pattern of the Bruhat cell relative to the upper triangular
// Borel: sweep columns left to right, pick the lowest not-yet-used nonzero row
// after clearing by earlier pivots. perm[col] = pivot row.
template <class Field, int N>
std::array<int, N> bruhat_pattern(const Field& F, FMat<N> M) {
    std::array<int, N> perm{};
    std::array<bool, N> used{};
    for (int c = 0; c < N; ++c) {
        int piv = -1;
        for (int r = N - 1; r >= 0; --r)
            if (!used[r] && M(r, c)) { piv = r; break; }
        if (piv < 0) throw std::logic_error("bruhat_pattern: singular input");
        perm[c] = piv;
        used[piv] = true;
        int d = F.inv(M(piv, c));
        for (int c2 = c + 1; c2 < N; ++c2) {
            int f = M(piv, c2);
            if (!f) continue;
            int fd = F.mul(f, d);
            for (int r = 0; r < N; ++r)
                if (M(r, c)) M.set(r, c2, F.sub(M(r, c2), F.mul(fd, M(r, c))));
        }
    }
    return perm;
}

// A = L R with L lower unitriangular and R upper triangular; exists exactly
// when all leading principal minors are nonzero, which holds for w^-1 g with
// g in the w-cell. Throws otherwise.
template <class Field, int N>
void lu_split(const Field& F, const FMat<N>& A, FMat<N>& L, FMat<N>& R) {
    R = A;
    L = fm_identity<Field, N>(F);
    for (int c = 0; c < N; ++c) {
        if (!R(c, c)) throw std::domain_error("lu_split: zero leading minor");
        int d = F.inv(R(c, c));
        for (int r = c + 1; r < N; ++r) {
            int f = R(r, c);
            if (!f) continue;
            int fd = F.mul(f, d);
            L.set(r, c, fd);
            for (int j = c; j < N; ++j) R.set(r, j, F.sub(R(r, j), F.mul(fd, R(c, j))));
        }
    }
}

}  // namespace fjmod
