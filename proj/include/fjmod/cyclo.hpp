#pragma once
// Exact arithmetic in cyclotomic fields Q(zeta_N). Elements are stored on the
// power basis 1, z, ..., z^(phi(N)-1) reduced modulo the N-th cyclotomic
// polynomial, so equality is coefficient equality and serialization is
// canonical. Mixed-conductor arithmetic lifts both operands to the lcm.

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>

#include "fjmod/rational.hpp"

namespace fjmod {

namespace detail {

inline int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) { r -= r / p; while (n % p == 0) n /= p; }
    if (n > 1) r -= r / n;
    return r;
}

inline int mobius(int n) {
    int r = 1;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            r = -r;
        }
    if (n > 1) r = -r;
    return r;
}

// Data attached to one conductor: Phi_N and reduction rows for z^d, d >= phi.
struct CycloTable {
    int N = 1;
    int phi = 1;
    std::vector<Rat> poly;                    // Phi_N, monic, degree phi
    std::vector<std::vector<Rat>> red;        // red[d-phi] = z^d mod Phi_N

    explicit CycloTable(int n) : N(n), phi(euler_phi(n)) {
        poly = cyclotomic_poly(n);
        red.resize(phi < 1 ? 0 : (size_t)phi);  // degrees phi .. 2*phi-1
        std::vector<Rat> cur(phi, Rat(0));      // z^phi = -(lower terms)
        for (int i = 0; i < phi; ++i) cur[i] = -poly[i];
        for (int d = phi; d <= 2 * phi - 1; ++d) {
            red[d - phi] = cur;
            // multiply by z and reduce once
            std::vector<Rat> nxt(phi, Rat(0));
            Rat top = cur[phi - 1];
            for (int i = phi - 1; i > 0; --i) nxt[i] = cur[i - 1];
            if (!top.is_zero())
                for (int i = 0; i < phi; ++i) nxt[i] += top * (-poly[i]);
            cur = std::move(nxt);
        }
    }

    static std::vector<Rat> cyclotomic_poly(int n) {
        // (x^n - 1) / prod_{d|n, d<n} Phi_d, by repeated exact division
        std::vector<Rat> num(n + 1, Rat(0));
        num[0] = Rat(-1); num[n] = Rat(1);
        for (int d = 1; d < n; ++d)
            if (n % d == 0) {
                std::vector<Rat> phid = cyclotomic_poly(d);
                num = poly_div_exact(num, phid);
            }
        return num;
    }

    static std::vector<Rat> poly_div_exact(std::vector<Rat> a, const std::vector<Rat>& b) {
        int db = (int)b.size() - 1;
        int da = (int)a.size() - 1;
        std::vector<Rat> q(da - db + 1, Rat(0));
        for (int d = da; d >= db; --d) {
            Rat c = a[d] / b[db];
            q[d - db] = c;
            if (c.is_zero()) continue;
            for (int i = 0; i <= db; ++i) a[d - db + i] -= c * b[i];
        }
        for (const Rat& c : a)
            if (!c.is_zero()) throw std::logic_error("non-exact polynomial division");
        return q;
    }
};

inline const CycloTable& cyclo_table(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CycloTable>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<CycloTable>(n)).first;
    return *it->second;
}

}  // namespace detail

class CycloNum {
public:
    CycloNum() : N_(1), c_(1, Rat(0)) {}
    CycloNum(const Rat& r) : N_(1), c_(1, r) {}
    CycloNum(long long v) : N_(1), c_(1, Rat(v)) {}
    CycloNum(int v) : N_(1), c_(1, Rat(v)) {}

    // zeta_N^k, reduced
    static CycloNum root_of_unity(int N, long long k) {
        if (N < 1) throw std::domain_error("conductor must be positive");
        const auto& tab = detail::cyclo_table(N);
        long long e = ((k % N) + N) % N;
        CycloNum z;
        z.N_ = N;
        z.c_.assign(tab.phi, Rat(0));
        // z^e with e < N: reduce through the rows repeatedly
        std::vector<Rat> mono(e + 1, Rat(0));
        mono[e] = Rat(1);
        z.c_ = reduce(mono, tab);
        return z;
    }

    static CycloNum from_coeffs(int N, std::vector<Rat> coeffs) {
        const auto& tab = detail::cyclo_table(N);
        if ((int)coeffs.size() != tab.phi)
            throw std::domain_error("coefficient count must equal phi(N)");
        CycloNum z; z.N_ = N; z.c_ = std::move(coeffs);
        return z;
    }

    int conductor() const { return N_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const Rat& x : c_) if (!x.is_zero()) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i) if (!c_[i].is_zero()) return false;
        return true;
    }
    Rat rational_part() const {
        if (!is_rational()) throw std::domain_error("CycloNum is not rational: " + str());
        return c_[0];
    }
    long long to_integer() const {
        Rat r = rational_part();
        if (!r.is_integer()) throw std::domain_error("CycloNum is not an integer: " + str());
        return r.to_ll();
    }

    CycloNum lifted(int M) const {
        if (M == N_) return *this;
        if (M % N_ != 0) throw std::domain_error("conductor lift must be divisible");
        const auto& tab = detail::cyclo_table(M);
        int s = M / N_;
        std::vector<Rat> acc(tab.phi, Rat(0));
        for (size_t k = 0; k < c_.size(); ++k) {
            if (c_[k].is_zero()) continue;
            CycloNum m = root_of_unity(M, (long long)k * s);
            for (int i = 0; i < tab.phi; ++i) acc[i] += c_[k] * m.c_[i];
        }
        CycloNum z; z.N_ = M; z.c_ = std::move(acc);
        return z;
    }

    friend CycloNum operator+(const CycloNum& a, const CycloNum& b) {
        auto [x, y] = align(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend CycloNum operator-(const CycloNum& a, const CycloNum& b) {
        auto [x, y] = align(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }
    friend CycloNum operator-(const CycloNum& a) {
        CycloNum r = a;
        for (Rat& x : r.c_) x = -x;
        return r;
    }
    friend CycloNum operator*(const CycloNum& a, const CycloNum& b) {
        auto [x, y] = align(a, b);
        const auto& tab = detail::cyclo_table(x.N_);
        int phi = tab.phi;
        std::vector<Rat> conv(2 * phi - 1, Rat(0));
        for (int i = 0; i < phi; ++i) {
            if (x.c_[i].is_zero()) continue;
            for (int j = 0; j < phi; ++j)
                if (!y.c_[j].is_zero()) conv[i + j] += x.c_[i] * y.c_[j];
        }
        CycloNum z; z.N_ = x.N_; z.c_ = reduce(conv, tab);
        return z;
    }
    friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inverse(); }
    CycloNum& operator+=(const CycloNum& b) { *this = *this + b; return *this; }
    CycloNum& operator-=(const CycloNum& b) { *this = *this - b; return *this; }
    CycloNum& operator*=(const CycloNum& b) { *this = *this * b; return *this; }

    CycloNum inverse() const {
        if (is_zero()) throw std::domain_error("CycloNum division by zero");
        if (is_rational()) return CycloNum(Rat(1) / c_[0]);
        // extended Euclid in Q[x] against Phi_N
        const auto& tab = detail::cyclo_table(N_);
        std::vector<Rat> r0 = tab.poly, r1 = c_;
        trimpoly(r1);
        std::vector<Rat> s0 = {Rat(0)}, s1 = {Rat(1)};
        while (degree(r1) > 0) {
            auto [q, rem] = poly_divmod(r0, r1);
            r0 = std::move(r1); r1 = std::move(rem);
            std::vector<Rat> s2 = poly_sub(s0, poly_mul(q, s1));
            s0 = std::move(s1); s1 = std::move(s2);
        }
        if (degree(r1) < 0) throw std::logic_error("CycloNum inverse: gcd degenerate");
        Rat lead = r1[0];
        std::vector<Rat> inv(tab.phi, Rat(0));
        for (size_t i = 0; i < s1.size() && i < inv.size(); ++i) inv[i] = s1[i] / lead;
        // s1 may have degree >= phi in principle; reduce to be safe
        if (s1.size() > (size_t)tab.phi) {
            std::vector<Rat> big(s1.size(), Rat(0));
            for (size_t i = 0; i < s1.size(); ++i) big[i] = s1[i] / lead;
            inv = reduce(big, tab);
        }
        CycloNum z; z.N_ = N_; z.c_ = std::move(inv);
        return z;
    }

    // Galois automorphism zeta -> zeta^-1 (complex conjugation on character values).
    CycloNum conj() const { return galois(N_ - 1); }

    // zeta -> zeta^k for gcd(k, N) = 1
    CycloNum galois(long long k) const {
        if (N_ == 1) return *this;
        if (std::gcd((long long)N_, ((k % N_) + N_) % N_) != 1)
            throw std::domain_error("galois exponent not coprime to conductor");
        const auto& tab = detail::cyclo_table(N_);
        std::vector<Rat> acc(tab.phi, Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            CycloNum m = root_of_unity(N_, (long long)i * k);
            for (int j = 0; j < tab.phi; ++j) acc[j] += c_[i] * m.c_[j];
        }
        CycloNum z; z.N_ = N_; z.c_ = std::move(acc);
        return z;
    }

    friend bool operator==(const CycloNum& a, const CycloNum& b) {
        if (a.N_ == b.N_) return a.c_ == b.c_;
        auto [x, y] = align(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

    // Deterministic coefficient ordering, used to pick canonical square roots.
    friend bool operator<(const CycloNum& a, const CycloNum& b) {
        auto [x, y] = align(a, b);
        for (size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] != y.c_[i]) return x.c_[i] < y.c_[i];
        }
        return false;
    }

    // Solve y^2 = this when this = rational-square * root of unity; the scan is
    // over zeta_{2N}^j twists, first hit wins. Returns nullopt otherwise.
    std::optional<CycloNum> try_sqrt() const {
        if (is_zero()) return CycloNum(0);
        int twoN = 2 * N_;
        CycloNum lift = lifted(std::lcm(N_, twoN));
        for (int j = 0; j < twoN; ++j) {
            CycloNum t = lift * root_of_unity(twoN, -j);
            if (!t.is_rational()) continue;
            Rat r = t.rational_part();
            bool neg = r < Rat(0);
            if (neg) continue;  // fold -1 into the root-of-unity scan
            auto sq = rat_sqrt(r);
            if (!sq) continue;
            return root_of_unity(2 * twoN, j) * CycloNum(*sq);
        }
        return std::nullopt;
    }

    // "c0 + c1*z + ...  (N=12)"
    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!first) os << " + ";
            os << c_[i].str();
            if (i >= 1) os << "*z" << (i > 1 ? "^" + std::to_string(i) : "");
            first = false;
        }
        if (first) os << "0";
        os << "  (N=" << N_ << ")";
        return os.str();
    }

private:
    int N_;
    std::vector<Rat> c_;

    static std::pair<CycloNum, CycloNum> align(const CycloNum& a, const CycloNum& b) {
        if (a.N_ == b.N_) return {a, b};
        int m = std::lcm(a.N_, b.N_);
        return {a.lifted(m), b.lifted(m)};
    }

    static std::vector<Rat> reduce(const std::vector<Rat>& poly, const detail::CycloTable& tab) {
        std::vector<Rat> acc(tab.phi, Rat(0));
        std::vector<Rat> carry;  // handle degrees above 2*phi-1 by repeated passes
        std::vector<Rat> cur = poly;
        while (true) {
            bool high = false;
            std::vector<Rat> next(std::max<size_t>(cur.size() > (size_t)(2 * tab.phi - 1)
                                                       ? cur.size() - tab.phi
                                                       : 0,
                                                   0),
                                  Rat(0));
            for (size_t d = 0; d < cur.size(); ++d) {
                if (cur[d].is_zero()) continue;
                if ((int)d < tab.phi) {
                    acc[d] += cur[d];
                } else if ((int)d <= 2 * tab.phi - 1) {
                    const auto& row = tab.red[d - tab.phi];
                    for (int i = 0; i < tab.phi; ++i) acc[i] += cur[d] * row[i];
                } else {
                    // z^d = z^(d-phi) * z^phi; push down one phi at a time
                    const auto& row = tab.red[0];  // z^phi
                    size_t base = d - tab.phi;
                    if (next.size() < base + (size_t)tab.phi)
                        next.resize(base + tab.phi, Rat(0));
                    for (int i = 0; i < tab.phi; ++i) next[base + i] += cur[d] * row[i];
                    high = true;
                }
            }
            if (!high) break;
            cur = std::move(next);
        }
        return acc;
    }

    static int degree(const std::vector<Rat>& p) {
        for (size_t i = p.size(); i-- > 0;)
            if (!p[i].is_zero()) return (int)i;
        return -1;
    }
    static void trimpoly(std::vector<Rat>& p) {
        while (!p.empty() && p.back().is_zero()) p.pop_back();
    }
    static std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
        for (size_t i = 0; i < a.size(); ++i)
            if (!a[i].is_zero())
                for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        return r;
    }
    static std::vector<Rat> poly_sub(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        std::vector<Rat> r = a;
        if (r.size() < b.size()) r.resize(b.size(), Rat(0));
        for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
        trimpoly(r);
        return r;
    }
    static std::pair<std::vector<Rat>, std::vector<Rat>> poly_divmod(
        std::vector<Rat> a, const std::vector<Rat>& b) {
        int db = degree(b);
        std::vector<Rat> q(std::max(degree(a) - db + 1, 0), Rat(0));
        while (degree(a) >= db) {
            int da = degree(a);
            Rat c = a[da] / b[db];
            q[da - db] = c;
            for (int i = 0; i <= db; ++i) a[da - db + i] -= c * b[i];
        }
        trimpoly(a);
        return {q, a};
    }
    static std::optional<Rat> rat_sqrt(const Rat& r) {
        auto isqrt = [](const BigInt& n) -> std::optional<BigInt> {
            if (n.is_zero()) return BigInt(0);
            BigInt lo(1), hi = n;
            while (lo < hi) {
                BigInt mid = (lo + hi + BigInt(1)) / BigInt(2);
                if (mid * mid < n || mid * mid == n) lo = mid; else hi = mid - BigInt(1);
            }
            if (lo * lo == n) return lo;
            return std::nullopt;
        };
        auto sn = isqrt(r.num());
        auto sd = isqrt(r.den());
        if (sn && sd) return Rat(*sn, *sd);
        return std::nullopt;
    }
};

inline CycloNum cyclo_root_of_unity(int N, long long k) { return CycloNum::root_of_unity(N, k); }

}  // namespace fjmod
