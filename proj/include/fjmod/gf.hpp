#pragma once
// Finite fields F_q (odd q), the quadratic extension E = F_q[sqrt(kappa)],
// and their character groups. Field elements are small integer indices into
// precomputed tables; characters evaluate to exact CycloNum roots of unity.
//
// Fixed conventions, chosen once so golden files are reproducible:
//   psi(x)   = zeta_p^{Tr_{F_q/F_p}(x)}          (the fixed additive character)
//   kappa    = least generator of F_q^x in index order
//   x_a      = first norm preimage of a in E^x generator-power order, x_1 = 1

#include <array>
#include <cassert>

#include "fjmod/cyclo.hpp"

namespace fjmod {

class FqField {
public:
    int q = 0, p = 0, r = 0;
    int gen = 0;    // generator of F_q^x, least in index order
    int kappa = 0;  // same as gen by convention

    static FqField make(int q) {
        int p = smallest_prime_factor(q);
        if (p == 2) throw std::domain_error("EvenCharacteristic: q must be odd");
        int r = 0, m = q;
        while (m > 1) {
            if (m % p != 0) throw std::domain_error("NotPrimePower: q = " + std::to_string(q));
            m /= p; ++r;
        }
        FqField F;
        F.q = q; F.p = p; F.r = r;
        F.build_tables();
        return F;
    }

    int add(int a, int b) const { return addt_[a * q + b]; }
    int sub(int a, int b) const { return addt_[a * q + negt_[b]]; }
    int mul(int a, int b) const { return mult_[a * q + b]; }
    int neg(int a) const { return negt_[a]; }
    int inv(int a) const {
        if (a == 0) throw std::domain_error("ZeroInput: inverse of 0");
        return invt_[a];
    }
    int div(int a, int b) const { return mul(a, inv(b)); }
    int pow(int a, long long e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        long long d = ((e % (q - 1)) + (q - 1)) % (q - 1);
        int res = 1, base = a;
        while (d) { if (d & 1) res = mul(res, base); base = mul(base, base); d >>= 1; }
        return res;
    }
    int dlog(int a) const {
        if (a == 0) throw std::domain_error("ZeroInput: dlog of 0");
        return logt_[a];
    }
    int from_int(long long v) const {  // prime subfield embedding of an integer
        long long m = ((v % p) + p) % p;
        int res = 0;
        for (int i = 0; i < (int)m; ++i) res = add(res, one_);
        return res;
    }
    int trace_to_fp(int a) const { return trfp_[a]; }  // value in 0..p-1

    // +1 if square, -1 otherwise; eps in the paper
    int legendre(int x) const {
        if (x == 0) throw std::domain_error("ZeroInput: legendre(0)");
        return dlog(x) % 2 == 0 ? 1 : -1;
    }
    int eps0() const { return legendre(neg(1)); }

    const std::vector<int>& poly_modulus() const { return mod_; }

private:
    int one_ = 1;
    std::vector<int> addt_, mult_, negt_, invt_, logt_, trfp_;
    std::vector<int> mod_;  // modulus polynomial coefficients, degree r

    static int smallest_prime_factor(int n) {
        if (n < 3) throw std::domain_error("NotPrimePower: q = " + std::to_string(n));
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0) return d;
        return n;
    }

    // indices encode polynomials over F_p in base p
    std::vector<int> decode(int a) const {
        std::vector<int> c(r);
        for (int i = 0; i < r; ++i) { c[i] = a % p; a /= p; }
        return c;
    }
    int encode(const std::vector<int>& c) const {
        int a = 0;
        for (int i = r - 1; i >= 0; --i) a = a * p + c[i];
        return a;
    }

    void build_tables() {
        if (r == 1) {
            mod_ = {0, 1};
        } else {
            mod_ = find_irreducible();
        }
        addt_.resize(q * q); mult_.resize(q * q);
        negt_.resize(q); invt_.assign(q, 0); logt_.assign(q, -1); trfp_.resize(q);
        for (int a = 0; a < q; ++a) {
            auto ca = decode(a);
            for (int b = 0; b < q; ++b) {
                auto cb = decode(b);
                std::vector<int> s(r);
                for (int i = 0; i < r; ++i) s[i] = (ca[i] + cb[i]) % p;
                addt_[a * q + b] = encode(s);
                // multiply then reduce mod the modulus polynomial
                std::vector<int> prod(2 * r - 1, 0);
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
                for (int d = 2 * r - 2; d >= r; --d) {
                    int c = prod[d];
                    if (!c) continue;
                    prod[d] = 0;
                    for (int i = 0; i < r; ++i)
                        prod[d - r + i] = ((prod[d - r + i] - c * mod_[i]) % p + p) % p;
                }
                prod.resize(r);
                mult_[a * q + b] = encode(prod);
            }
            std::vector<int> n(r);
            for (int i = 0; i < r; ++i) n[i] = (p - ca[i]) % p;
            negt_[a] = encode(n);
        }
        // generator: least element of full multiplicative order
        for (int g = 1; g < q; ++g) {
            int x = g, ord = 1;
            while (x != 1) { x = mult_[x * q + g]; ++ord; }
            if (ord == q - 1) { gen = g; break; }
        }
        kappa = gen;
        int x = 1;
        logt_[1] = 0;
        for (int e = 1; e < q - 1; ++e) { x = mult_[x * q + gen]; logt_[x] = e; }
        for (int a = 1; a < q; ++a) invt_[a] = powi(a, q - 2);
        for (int a = 0; a < q; ++a) {
            int t = a, f = a;
            for (int i = 1; i < r; ++i) { f = powi(f, p); t = addt_[t * q + f]; }
            // t lies in the prime subfield: its encoding is the residue itself
            assert(t < p);
            trfp_[a] = t;
        }
    }
    int powi(int a, long long e) const {
        int res = 1, base = a;
        while (e) { if (e & 1) res = mult_[res * q + base]; base = mult_[base * q + base]; e >>= 1; }
        return res;
    }
    std::vector<int> find_irreducible() const {
        // monic degree-r polynomial with no roots and irreducible by trial division
        std::vector<int> c(r + 1, 0);
        c[r] = 1;
        long long total = 1;
        for (int i = 0; i < r; ++i) total *= p;
        for (long long code = 0; code < total; ++code) {
            long long m = code;
            for (int i = 0; i < r; ++i) { c[i] = (int)(m % p); m /= p; }
            if (is_irreducible(c)) return c;
        }
        throw std::logic_error("no irreducible polynomial found");
    }
    bool is_irreducible(const std::vector<int>& c) const {
        // x^(p^d) mod c has gcd x^(p^d)-x test; r <= 3 in practice, root test + deg-2 factor scan
        auto eval = [&](int x) {
            int acc = 0, po = 1;
            for (int i = 0; i <= r; ++i) { acc = (acc + c[i] * po) % p; po = po * x % p; }
            return acc;
        };
        for (int x = 0; x < p; ++x)
            if (eval(x) == 0) return false;
        if (r <= 3) return true;  // no linear factor suffices for r in {2,3}
        throw std::logic_error("field degree > 3 not supported");
    }
};

// Quadratic extension E = k[sqrt(kappa)], elements encoded as x + y*q.
// Owns a copy of the base field so the pair can be moved around freely.
class FqExtField {
public:
    int q = 0;

    static FqExtField make(const FqField& base) {
        FqExtField X;
        X.kf_ = base;
        X.q = base.q;
        X.build();
        return X;
    }

    const FqField& base() const { return kf_; }

    int enc(int x, int y) const { return x + y * q; }
    int re(int a) const { return a % q; }
    int im(int a) const { return a / q; }

    int add(int a, int b) const { return enc(kf_.add(re(a), re(b)), kf_.add(im(a), im(b))); }
    int sub(int a, int b) const { return enc(kf_.sub(re(a), re(b)), kf_.sub(im(a), im(b))); }
    int neg(int a) const { return enc(kf_.neg(re(a)), kf_.neg(im(a))); }
    int mul(int a, int b) const { return mult_[a * q * q + b]; }
    int inv(int a) const {
        if (a == 0) throw std::domain_error("ZeroInput: inverse of 0 in E");
        return invt_[a];
    }
    int pow(int a, long long e) const {
        int n = q * q;
        if (a == 0) return e == 0 ? 1 : 0;
        long long d = ((e % (n - 1)) + (n - 1)) % (n - 1);
        int res = 1, base = a;
        while (d) { if (d & 1) res = mul(res, base); base = mul(base, base); d >>= 1; }
        return res;
    }
    int frob(int a) const { return enc(re(a), kf_.neg(im(a))); }  // x + y sqrt(k) -> x - y sqrt(k)
    int norm(int a) const { return kf_.sub(kf_.mul(re(a), re(a)), kf_.mul(kf_.kappa, kf_.mul(im(a), im(a)))); }
    int trace(int a) const { return kf_.mul(kf_.from_int(2), re(a)); }
    int from_base(int x) const { return enc(x, 0); }
    bool in_base(int a) const { return im(a) == 0; }

    int genE = 0;                 // generator of E^x, least in index order
    int genE1 = 0;                // generator of E^1 = ker(norm), = genE^(q-1)
    std::vector<int> e1;          // the q+1 norm-one elements, genE1 powers
    int dlogE(int a) const {
        if (a == 0) throw std::domain_error("ZeroInput");
        return logE_[a];
    }
    int dlogE1(int a) const {
        int l = logE1_[a];
        if (l < 0) throw std::domain_error("element not in E^1");
        return l;
    }

    // the fixed section a -> x_a with Nm(x_a) = a; x_1 = 1
    int norm_section(int a) const {
        if (a == 0) throw std::domain_error("ZeroInput: norm_section(0)");
        return xa_[a];
    }

private:
    FqField kf_;
    std::vector<int> mult_, invt_, logE_, logE1_, xa_;

    void build() {
        int n = q * q;
        mult_.resize(n * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int x1 = re(a), y1 = im(a), x2 = re(b), y2 = im(b);
                int x = kf_.add(kf_.mul(x1, x2), kf_.mul(kf_.kappa, kf_.mul(y1, y2)));
                int y = kf_.add(kf_.mul(x1, y2), kf_.mul(x2, y1));
                mult_[a * n + b] = enc(x, y);
            }
        for (int g = 1; g < n; ++g) {
            int x = g, ord = 1;
            while (x != 1) { x = mult_[x * n + g]; ++ord; }
            if (ord == n - 1) { genE = g; break; }
        }
        logE_.assign(n, -1);
        logE1_.assign(n, -1);
        invt_.assign(n, 0);
        int x = 1;
        logE_[1] = 0;
        for (int e = 1; e < n - 1; ++e) { x = mult_[x * n + genE]; logE_[x] = e; }
        for (int a = 1; a < n; ++a) invt_[a] = pow(a, n - 2);
        genE1 = pow(genE, q - 1);
        x = 1;
        for (int e = 0; e <= q; ++e) {
            e1.push_back(x);
            logE1_[x] = e;
            x = mul(x, genE1);
        }
        // section: first norm preimage in generator-power order, except x_1 = 1
        xa_.assign(q, 0);
        xa_[1] = 1;
        int y = 1;
        for (int e = 0; e < n - 1; ++e) {
            int a = norm(y);
            if (a != 1 && xa_[a] == 0) xa_[a] = y;
            y = mult_[y * n + genE];
        }
        for (int a = 1; a < q; ++a) assert(xa_[a] != 0 && norm(xa_[a]) == a);
    }
};

inline std::pair<FqField, FqExtField> make_fields(int q) {
    FqField k = FqField::make(q);
    FqExtField E = FqExtField::make(k);
    return {std::move(k), std::move(E)};
}

// Additive character psi_a(x) = psi(a x) with psi(x) = zeta_p^{Tr(x)}.
struct AddChar {
    const FqField* F;
    int scale = 1;

    CycloNum value(int x, int conductor) const {
        long long t = F->trace_to_fp(F->mul(scale, x));
        if (conductor % F->p != 0) throw std::domain_error("conductor misses p");
        return CycloNum::root_of_unity(conductor, t * (conductor / F->p));
    }
    AddChar scaled(int a) const { return AddChar{F, F->mul(scale, a)}; }
};

// Multiplicative character on F_q^x, E^x, or E^1, indexed by an exponent on
// the fixed generator of the cyclic domain.
struct MultChar {
    enum Domain { Kx, Ex, E1 };
    Domain dom;
    const FqField* F = nullptr;
    const FqExtField* E = nullptr;
    long long e = 0;  // generator g maps to zeta_d^e, d = domain order

    long long order_of_domain() const {
        switch (dom) {
            case Kx: return F->q - 1;
            case Ex: return (long long)E->q * E->q - 1;
            case E1: return E->q + 1;
        }
        return 0;
    }
    bool is_trivial() const { return e % order_of_domain() == 0; }
    bool is_quadratic_nontrivial() const {
        long long d = order_of_domain();
        return e % d != 0 && (2 * e) % d == 0;
    }
    long long dlog(int x) const {
        switch (dom) {
            case Kx: return F->dlog(x);
            case Ex: return E->dlogE(x);
            case E1: return E->dlogE1(x);
        }
        return 0;
    }
    CycloNum value(int x, int conductor) const {
        long long d = order_of_domain();
        long long g = std::gcd(((e % d) + d) % d, d);
        long long ord = d / g;  // order of the character itself
        if (ord == 0 || conductor % ord != 0)
            throw std::domain_error("conductor misses character order");
        long long red = (((e % d) + d) % d) / g;  // e/g, a unit mod ord
        return CycloNum::root_of_unity(conductor, (conductor / ord) * ((red * dlog(x)) % ord));
    }
    MultChar inverse() const { MultChar c = *this; c.e = -c.e; return c; }
    MultChar times(const MultChar& o) const {
        if (dom != o.dom) throw std::domain_error("DomainMismatch");
        MultChar c = *this; c.e += o.e; return c;
    }
    bool same_as(const MultChar& o) const {
        return dom == o.dom &&
               ((e - o.e) % order_of_domain() + order_of_domain()) % order_of_domain() == 0;
    }
};

inline MultChar eps_char(const FqField& F) { return MultChar{MultChar::Kx, &F, nullptr, (F.q - 1) / 2}; }
inline MultChar mu0_char(const FqExtField& E) { return MultChar{MultChar::E1, &E.base(), &E, (E.q + 1) / 2}; }

// Working conductor for a run at size q: lcm(p, q-1, q+1) holds every table
// entry; square roots extend to 2N or 4N transparently.
inline int default_conductor(const FqField& F) {
    return (int)std::lcm((long long)F.p, std::lcm((long long)F.q - 1, (long long)F.q + 1));
}

// gamma(b, psi) = sum_x psi(-b x^2), evaluated literally.
inline CycloNum gauss_gamma(const FqField& F, const AddChar& psi, int b, int conductor) {
    CycloNum s(0);
    for (int x = 0; x < F.q; ++x)
        s += psi.value(F.neg(F.mul(b, F.mul(x, x))), conductor);
    return s;
}

}  // namespace fjmod
