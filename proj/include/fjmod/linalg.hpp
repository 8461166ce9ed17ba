#pragma once
// Dense matrices over Q(zeta_N) with exact Gaussian elimination. Sizes stay
// small (representation dimensions), so everything is straightforward
// row-reduction without pivot heuristics beyond nonzero search.

#include "fjmod/cyclo.hpp"

namespace fjmod {

class CMat {
public:
    int n = 0, m = 0;
    std::vector<CycloNum> a;

    CMat() = default;
    CMat(int rows, int cols) : n(rows), m(cols), a((size_t)rows * cols) {}

    static CMat identity(int k) {
        CMat I(k, k);
        for (int i = 0; i < k; ++i) I(i, i) = CycloNum(1);
        return I;
    }
    static CMat zero(int rows, int cols) { return CMat(rows, cols); }

    CycloNum& operator()(int i, int j) { return a[(size_t)i * m + j]; }
    const CycloNum& operator()(int i, int j) const { return a[(size_t)i * m + j]; }

    friend CMat operator*(const CMat& A, const CMat& B) {
        if (A.m != B.n) throw std::logic_error("CMat shape mismatch in mul");
        CMat C(A.n, B.m);
        for (int i = 0; i < A.n; ++i)
            for (int k = 0; k < A.m; ++k) {
                const CycloNum& x = A(i, k);
                if (x.is_zero()) continue;
                for (int j = 0; j < B.m; ++j) {
                    const CycloNum& y = B(k, j);
                    if (!y.is_zero()) C(i, j) += x * y;
                }
            }
        return C;
    }
    friend CMat operator+(const CMat& A, const CMat& B) {
        CMat C = A;
        for (size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
        return C;
    }
    friend CMat operator-(const CMat& A, const CMat& B) {
        CMat C = A;
        for (size_t i = 0; i < C.a.size(); ++i) C.a[i] -= B.a[i];
        return C;
    }
    friend CMat operator*(const CycloNum& c, const CMat& A) {
        CMat C = A;
        for (auto& x : C.a) x = c * x;
        return C;
    }
    friend bool operator==(const CMat& A, const CMat& B) {
        return A.n == B.n && A.m == B.m && A.a == B.a;
    }
    friend bool operator!=(const CMat& A, const CMat& B) { return !(A == B); }

    bool is_zero() const {
        for (const auto& x : a) if (!x.is_zero()) return false;
        return true;
    }
    CMat transpose() const {
        CMat T(m, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) T(j, i) = (*this)(i, j);
        return T;
    }
    CMat conj() const {
        CMat C = *this;
        for (auto& x : C.a) x = x.conj();
        return C;
    }
    CycloNum trace() const {
        CycloNum t(0);
        for (int i = 0; i < n; ++i) t += (*this)(i, i);
        return t;
    }
    CMat kron(const CMat& B) const {
        CMat C(n * B.n, m * B.m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) {
                const CycloNum& x = (*this)(i, j);
                if (x.is_zero()) continue;
                for (int k = 0; k < B.n; ++k)
                    for (int l = 0; l < B.m; ++l)
                        C(i * B.n + k, j * B.m + l) = x * B(k, l);
            }
        return C;
    }

    CMat inverse() const {
        if (n != m) throw std::logic_error("CMat inverse of non-square");
        CMat A = *this, I = identity(n);
        for (int c = 0; c < n; ++c) {
            int piv = -1;
            for (int r = c; r < n; ++r)
                if (!A(r, c).is_zero()) { piv = r; break; }
            if (piv < 0) throw std::domain_error("CMat singular");
            if (piv != c)
                for (int j = 0; j < n; ++j) {
                    std::swap(A(c, j), A(piv, j));
                    std::swap(I(c, j), I(piv, j));
                }
            CycloNum d = A(c, c).inverse();
            for (int j = 0; j < n; ++j) { A(c, j) = d * A(c, j); I(c, j) = d * I(c, j); }
            for (int r = 0; r < n; ++r) {
                if (r == c || A(r, c).is_zero()) continue;
                CycloNum f = A(r, c);
                for (int j = 0; j < n; ++j) {
                    A(r, j) -= f * A(c, j);
                    I(r, j) -= f * I(c, j);
                }
            }
        }
        return I;
    }
};

// Basis of the right nullspace {v : M v = 0}, columns returned as vectors.
inline std::vector<std::vector<CycloNum>> nullspace(CMat M) {
    int n = M.n, m = M.m;
    std::vector<int> pivot_col;
    int row = 0;
    for (int c = 0; c < m && row < n; ++c) {
        int piv = -1;
        for (int r = row; r < n; ++r)
            if (!M(r, c).is_zero()) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < m; ++j) std::swap(M(row, j), M(piv, j));
        CycloNum d = M(row, c).inverse();
        for (int j = 0; j < m; ++j) M(row, j) = d * M(row, j);
        for (int r = 0; r < n; ++r) {
            if (r == row || M(r, c).is_zero()) continue;
            CycloNum f = M(r, c);
            for (int j = 0; j < m; ++j) M(r, j) -= f * M(row, j);
        }
        pivot_col.push_back(c);
        ++row;
    }
    std::vector<bool> is_pivot(m, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<CycloNum>> basis;
    for (int c = 0; c < m; ++c) {
        if (is_pivot[c]) continue;
        std::vector<CycloNum> v(m, CycloNum(0));
        v[c] = CycloNum(1);
        for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -M((int)r, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace fjmod
