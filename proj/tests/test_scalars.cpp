#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fjmod/cyclo.hpp"

using namespace fjmod;

TEST_CASE("roots of unity basic values") {
    CHECK(cyclo_root_of_unity(1, 0) == CycloNum(1));
    CHECK(cyclo_root_of_unity(4, 2) == CycloNum(-1));
    CHECK(cyclo_root_of_unity(2, 1) == CycloNum(-1));
    CHECK(cyclo_root_of_unity(6, 3) == CycloNum(-1));

    // multiplicative order of zeta_N^k is N/gcd(N,k)
    for (int N : {1, 2, 3, 4, 6, 8, 12, 24}) {
        for (int k = 0; k < N; ++k) {
            CycloNum z = cyclo_root_of_unity(N, k);
            int ord = N / std::gcd(N, k == 0 ? N : k);
            CycloNum p(1);
            for (int i = 1; i <= ord; ++i) p = p * z;
            CHECK(p == CycloNum(1));
            if (ord > 1) {
                CycloNum q(1);
                for (int i = 1; i < ord; ++i) q = q * z;
                CHECK(q != CycloNum(1));
            }
        }
    }
}

TEST_CASE("zeta_12^4 is a primitive cube root: x^2 + x + 1 = 0") {
    CycloNum w = cyclo_root_of_unity(12, 4);
    CHECK(w * w + w + CycloNum(1) == CycloNum(0));
    CHECK(w != CycloNum(1));
}

TEST_CASE("vanishing sums and exact squaring") {
    CycloNum z3 = cyclo_root_of_unity(3, 1);
    CHECK(z3 + z3 * z3 + CycloNum(1) == CycloNum(0));

    CycloNum z8 = cyclo_root_of_unity(8, 1);
    CycloNum s = z8 + z8.inverse();
    CHECK(s * s == CycloNum(2));  // (zeta_8 + zeta_8^-1)^2 = 2
}

TEST_CASE("field axioms on random samples") {
    std::mt19937 rng(12345);
    auto rnd = [&](int N) {
        std::vector<Rat> c(detail::euler_phi(N));
        for (auto& x : c) x = Rat((long long)(rng() % 11) - 5, 1 + rng() % 3);
        return CycloNum::from_coeffs(N, c);
    };
    for (int rep = 0; rep < 25; ++rep) {
        int N = 12;
        CycloNum a = rnd(N), b = rnd(N), c = rnd(N);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == CycloNum(1));
            CHECK(a / a == CycloNum(1));
        }
    }
}

TEST_CASE("mixed conductors lift to the lcm") {
    CycloNum z3 = cyclo_root_of_unity(3, 1);
    CycloNum z4 = cyclo_root_of_unity(4, 1);
    CycloNum p = z3 * z4;
    CHECK(p == cyclo_root_of_unity(12, 7));  // zeta_3 zeta_4 = zeta_12^{4+3}
    CHECK((z3 + z4) - z4 == z3.lifted(12));
}

TEST_CASE("rational embedding round-trips") {
    Rat r(-22, 7);
    CycloNum x{r};
    CHECK(x.is_rational());
    CHECK(x.rational_part() == r);
    CHECK(CycloNum(0).to_integer() == 0);
    CHECK((CycloNum(3) * CycloNum(Rat(1, 3))).to_integer() == 1);
    CHECK_THROWS(cyclo_root_of_unity(3, 1).to_integer());
    CHECK_THROWS(CycloNum(Rat(1, 2)).to_integer());
}

TEST_CASE("conjugation") {
    CHECK(CycloNum(1).conj() == CycloNum(1));
    for (int N : {5, 8, 12}) {
        for (int k = 0; k < N; ++k)
            CHECK(cyclo_root_of_unity(N, k).conj() == cyclo_root_of_unity(N, -k));
    }
    // conj is an automorphism
    CycloNum a = cyclo_root_of_unity(12, 1) + CycloNum(2);
    CycloNum b = cyclo_root_of_unity(12, 5) - CycloNum(Rat(1, 2));
    CHECK((a * b).conj() == a.conj() * b.conj());
}

TEST_CASE("Galois sum over primitive roots equals the Moebius function") {
    for (int N = 1; N <= 24; ++N) {
        CycloNum s(0);
        for (int k = 1; k <= N; ++k)
            if (std::gcd(k, N) == 1) s += cyclo_root_of_unity(N, k);
        CHECK(s == CycloNum(detail::mobius(N)));
    }
}

TEST_CASE("square roots of root-of-unity times rational square") {
    CycloNum z5 = cyclo_root_of_unity(5, 2);
    CycloNum c = z5 * CycloNum(Rat(9, 4));
    auto s = c.try_sqrt();
    REQUIRE(s.has_value());
    CHECK((*s) * (*s) == c);

    auto m = CycloNum(-4).try_sqrt();
    REQUIRE(m.has_value());
    CHECK((*m) * (*m) == CycloNum(-4));

    CHECK(!CycloNum(2).try_sqrt().has_value());  // sqrt(2) needs a bigger field
}

TEST_CASE("canonical serialization") {
    CycloNum x = CycloNum(Rat(1, 2)) + cyclo_root_of_unity(12, 1);
    CHECK(x.str() == "1/2 + 1*z  (N=12)");
    CHECK(CycloNum(0).lifted(12).str() == "0  (N=12)");
}

TEST_CASE("bigint stress against long long") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        long long a = (long long)(rng() % 2000001) - 1000000;
        long long b = (long long)(rng() % 2000001) - 1000000;
        CHECK((BigInt(a) + BigInt(b)).to_ll() == a + b);
        CHECK((BigInt(a) * BigInt(b)).to_ll() == a * b);
        if (b != 0) {
            CHECK((BigInt(a) / BigInt(b)).to_ll() == a / b);
            CHECK((BigInt(a) % BigInt(b)).to_ll() == a % b);
        }
    }
    // multi-limb: (2^96 + 5) fits and round-trips through decimal
    BigInt big(1);
    for (int i = 0; i < 96; ++i) big = big * BigInt(2);
    CHECK((big + BigInt(5)).str() == "79228162514264337593543950341");
    CHECK(BigInt::gcd(big, BigInt(12)).to_ll() == 4);
}
