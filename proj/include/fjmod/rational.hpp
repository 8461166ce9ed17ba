#pragma once
// Arbitrary-precision integers and rationals. All scalar arithmetic in the
// library is exact; there is no floating point anywhere in the core.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace fjmod {

namespace detail {

// Limb storage with two inline slots; almost every integer in the library
// fits in 64 bits, so heap traffic only happens in genuinely big values.
class LimbVec {
public:
    LimbVec() = default;
    LimbVec(const LimbVec& o) { assign_from(o); }
    LimbVec(LimbVec&& o) noexcept { steal(std::move(o)); }
    LimbVec& operator=(const LimbVec& o) {
        if (this != &o) { release(); assign_from(o); }
        return *this;
    }
    LimbVec& operator=(LimbVec&& o) noexcept {
        if (this != &o) { release(); steal(std::move(o)); }
        return *this;
    }
    ~LimbVec() { release(); }

    size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    uint32_t* data() { return heap_ ? heap_ : inl_; }
    const uint32_t* data() const { return heap_ ? heap_ : inl_; }
    uint32_t& operator[](size_t i) { return data()[i]; }
    uint32_t operator[](size_t i) const { return data()[i]; }
    uint32_t& back() { return data()[size_ - 1]; }
    uint32_t back() const { return data()[size_ - 1]; }

    void push_back(uint32_t v) {
        reserve(size_ + 1);
        data()[size_++] = v;
    }
    void pop_back() { --size_; }
    void clear() { size_ = 0; }
    void assign(size_t n, uint32_t v) {
        reserve(n);
        size_ = n;
        for (size_t i = 0; i < n; ++i) data()[i] = v;
    }
    friend bool operator==(const LimbVec& a, const LimbVec& b) {
        if (a.size_ != b.size_) return false;
        for (size_t i = 0; i < a.size_; ++i)
            if (a.data()[i] != b.data()[i]) return false;
        return true;
    }

private:
    uint32_t inl_[2] = {0, 0};
    uint32_t* heap_ = nullptr;
    size_t size_ = 0;
    size_t cap_ = 2;

    void reserve(size_t n) {
        if (n <= cap_) return;
        size_t nc = cap_ * 2 < n ? n : cap_ * 2;
        uint32_t* nh = new uint32_t[nc];
        for (size_t i = 0; i < size_; ++i) nh[i] = data()[i];
        release();
        heap_ = nh;
        cap_ = nc;
    }
    void release() {
        delete[] heap_;
        heap_ = nullptr;
        cap_ = 2;
    }
    void assign_from(const LimbVec& o) {
        reserve(o.size_);
        size_ = o.size_;
        for (size_t i = 0; i < size_; ++i) data()[i] = o.data()[i];
    }
    void steal(LimbVec&& o) {
        if (o.heap_) {
            heap_ = o.heap_; cap_ = o.cap_; size_ = o.size_;
            o.heap_ = nullptr; o.cap_ = 2; o.size_ = 0;
        } else {
            size_ = o.size_;
            inl_[0] = o.inl_[0]; inl_[1] = o.inl_[1];
        }
    }
};

}  // namespace detail

// Sign-magnitude big integer, base 2^32.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v) {
        if (v < 0) { neg_ = true; }
        unsigned long long a = neg_ ? -(unsigned long long)v : (unsigned long long)v;
        while (a) { limbs_.push_back((uint32_t)(a & 0xffffffffu)); a >>= 32; }
    }
    BigInt(int v) : BigInt((long long)v) {}

    bool is_zero() const { return limbs_.empty(); }
    bool negative() const { return neg_; }
    int sign() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.neg_ == b.neg_ && a.limbs_ == b.limbs_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) {
        if (a.neg_ != b.neg_) return a.neg_;
        int c = cmp_mag(a.limbs_, b.limbs_);
        return a.neg_ ? c > 0 : c < 0;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.neg_ == b.neg_) {
            BigInt r; r.neg_ = a.neg_; r.limbs_ = add_mag(a.limbs_, b.limbs_);
            r.trim(); return r;
        }
        int c = cmp_mag(a.limbs_, b.limbs_);
        BigInt r;
        if (c == 0) return r;
        if (c > 0) { r.limbs_ = sub_mag(a.limbs_, b.limbs_); r.neg_ = a.neg_; }
        else       { r.limbs_ = sub_mag(b.limbs_, a.limbs_); r.neg_ = b.neg_; }
        r.trim(); return r;
    }
    friend BigInt operator-(const BigInt& a) {
        BigInt r = a; if (!r.is_zero()) r.neg_ = !r.neg_; return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }
    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        BigInt r;
        if (a.is_zero() || b.is_zero()) return r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (size_t i = 0; i < a.limbs_.size(); ++i) {
            uint64_t carry = 0, ai = a.limbs_[i];
            for (size_t j = 0; j < b.limbs_.size(); ++j) {
                uint64_t cur = r.limbs_[i + j] + ai * b.limbs_[j] + carry;
                r.limbs_[i + j] = (uint32_t)cur;
                carry = cur >> 32;
            }
            size_t k = i + b.limbs_.size();
            while (carry) {
                uint64_t cur = r.limbs_[k] + carry;
                r.limbs_[k] = (uint32_t)cur; carry = cur >> 32; ++k;
            }
        }
        r.neg_ = a.neg_ != b.neg_;
        r.trim(); return r;
    }

    // Truncating division; remainder has the sign of the dividend.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.is_zero()) throw std::domain_error("BigInt division by zero");
        divmod_mag(a.limbs_, b.limbs_, q.limbs_, r.limbs_);
        q.neg_ = a.neg_ != b.neg_; r.neg_ = a.neg_;
        q.trim(); r.trim();
    }
    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r; divmod(a, b, q, r); return q;
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r; divmod(a, b, q, r); return r;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.neg_ = false; b.neg_ = false;
        while (!b.is_zero()) { BigInt t = a % b; a = b; b = t; }
        return a;
    }

    bool fits_ll() const {
        if (limbs_.size() > 2) return false;
        unsigned long long v = mag_ll();
        return v <= (neg_ ? 0x8000000000000000ull : 0x7fffffffffffffffull);
    }
    long long to_ll() const {
        if (!fits_ll()) throw std::overflow_error("BigInt too large for long long");
        unsigned long long v = mag_ll();
        return neg_ ? -(long long)v : (long long)v;
    }

    std::string str() const {
        if (is_zero()) return "0";
        detail::LimbVec m = limbs_;
        std::string digits;
        while (!m.empty()) {
            uint64_t rem = 0;
            for (size_t i = m.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | m[i];
                m[i] = (uint32_t)(cur / 1000000000u);
                rem = cur % 1000000000u;
            }
            while (!m.empty() && m.back() == 0) m.pop_back();
            for (int k = 0; k < 9; ++k) { digits.push_back(char('0' + rem % 10)); rem /= 10; }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        std::string out = neg_ ? "-" : "";
        out.append(digits.rbegin(), digits.rend());
        return out;
    }

private:
    bool neg_ = false;
    detail::LimbVec limbs_;  // little endian, no trailing zeros

    unsigned long long mag_ll() const {
        unsigned long long v = 0;
        if (limbs_.size() > 1) v = (unsigned long long)limbs_[1] << 32;
        if (!limbs_.empty()) v |= limbs_[0];
        return v;
    }
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
        if (limbs_.empty()) neg_ = false;
    }
    static int cmp_mag(const detail::LimbVec& a, const detail::LimbVec& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    static detail::LimbVec add_mag(const detail::LimbVec& a,
                                   const detail::LimbVec& b) {
        const detail::LimbVec& x = a.size() >= b.size() ? a : b;
        const detail::LimbVec& y = a.size() >= b.size() ? b : a;
        detail::LimbVec r;
        r.assign(x.size() + 1, 0);
        uint64_t carry = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            uint64_t cur = (uint64_t)x[i] + (i < y.size() ? y[i] : 0) + carry;
            r[i] = (uint32_t)cur; carry = cur >> 32;
        }
        r[x.size()] = (uint32_t)carry;
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    // requires |a| >= |b|
    static detail::LimbVec sub_mag(const detail::LimbVec& a,
                                   const detail::LimbVec& b) {
        detail::LimbVec r = a;
        int64_t borrow = 0;
        for (size_t i = 0; i < r.size(); ++i) {
            int64_t cur = (int64_t)r[i] - (i < b.size() ? b[i] : 0) - borrow;
            borrow = cur < 0;
            r[i] = (uint32_t)(cur + (borrow << 32));
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    static void divmod_mag(const detail::LimbVec& a, const detail::LimbVec& b,
                           detail::LimbVec& q, detail::LimbVec& r) {
        q.clear(); r.clear();
        if (cmp_mag(a, b) < 0) { r = a; return; }
        if (b.size() == 1) {
            uint64_t d = b[0], rem = 0;
            q.assign(a.size(), 0);
            for (size_t i = a.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | a[i];
                q[i] = (uint32_t)(cur / d);
                rem = cur % d;
            }
            while (!q.empty() && q.back() == 0) q.pop_back();
            if (rem) r.push_back((uint32_t)rem);
            return;
        }
        // bitwise long division; operand sizes here are small
        detail::LimbVec rem;
        size_t bits = a.size() * 32;
        q.assign(a.size(), 0);
        for (size_t i = bits; i-- > 0;) {
            // rem = rem*2 + bit i of a
            uint32_t carry = (a[i / 32] >> (i % 32)) & 1u;
            for (size_t j = 0; j < rem.size(); ++j) {
                uint32_t nc = rem[j] >> 31;
                rem[j] = (rem[j] << 1) | carry;
                carry = nc;
            }
            if (carry) rem.push_back(carry);
            if (cmp_mag(rem, b) >= 0) {
                rem = sub_mag(rem, b);
                q[i / 32] |= 1u << (i % 32);
            }
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        r = rem;
    }
};

// Exact rational, always normalized with positive denominator.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long v) : num_(v), den_(1) {}
    Rat(int v) : num_(v), den_(1) {}
    Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == BigInt(1); }
    bool is_one() const { return num_ == BigInt(1) && is_integer(); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a) { Rat r = a; r.num_ = -r.num_; return r; }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw std::domain_error("Rat division by zero");
        return Rat(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rat& operator+=(const Rat& b) { *this = *this + b; return *this; }
    Rat& operator-=(const Rat& b) { *this = *this - b; return *this; }
    Rat& operator*=(const Rat& b) { *this = *this * b; return *this; }
    Rat& operator/=(const Rat& b) { *this = *this / b; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return (a.num_ * b.den_) < (b.num_ * a.den_);
    }

    long long to_ll() const {
        if (!is_integer()) throw std::domain_error("Rat not an integer: " + str());
        return num_.to_ll();
    }

    std::string str() const {
        if (is_integer()) return num_.str();
        return num_.str() + "/" + den_.str();
    }

private:
    BigInt num_, den_;
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Rat zero denominator");
        if (num_.is_zero()) { den_ = BigInt(1); return; }
        BigInt g = BigInt::gcd(num_, den_);
        num_ = num_ / g; den_ = den_ / g;
        if (den_.negative()) { num_ = -num_; den_ = -den_; }
    }
};

}  // namespace fjmod
