#include "weilzeta/cyclo.hpp"
#include "weilzeta/errors.hpp"
#include "weilzeta/poly.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace wz;

namespace {

CycloNum random_cyclo(std::mt19937& rng, int M) {
    std::uniform_int_distribution<int> c(-5, 5);
    std::vector<mpq_class> raw(M);
    for (auto& x : raw) {
        x = mpq_class(c(rng), 1 + (c(rng) + 5) % 3);
        x.canonicalize();
    }
    return CycloNum::from_powers(M, raw);
}

}  // namespace

TEST_CASE("poly: division identity and modular inverse") {
    PolyQ a({1, 2, 0, mpq_class(3, 2)}), b({-1, 0, 1});
    PolyQ q, r;
    PolyQ::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
    PolyQ m({1, 1, 1});  // Phi_3
    PolyQ x({0, 1});
    PolyQ inv = PolyQ::inverse_mod(x, m);
    CHECK((x * inv).mod(m) == PolyQ::constant(1));
    CHECK(a.eval(2) == 1 + 4 + 12);
}

TEST_CASE("cyclo: worked examples") {
    CHECK(std::abs(root_of_unity(1, 4).to_cd() - std::complex<double>(0, 1)) < 1e-15);
    CHECK(root_of_unity(1, 4) * root_of_unity(1, 4) == CycloNum(-1));
    CHECK((root_of_unity(1, 3) + root_of_unity(2, 3) + root_of_unity(0, 1)).is_zero());
    CHECK(root_of_unity(1, 8) * root_of_unity(1, 8) == root_of_unity(1, 4));
    CHECK(galois_twist(root_of_unity(1, 3), 2) == root_of_unity(2, 3));
    CycloNum g = CycloNum(1) + CycloNum(2) * root_of_unity(1, 3);
    CHECK(galois_twist(g, 1) == g);
    CHECK(galois_twist(g, 2) == CycloNum(1) + CycloNum(2) * root_of_unity(2, 3));
    CHECK(std::abs(g.to_cd() - std::complex<double>(0, std::sqrt(3.0))) < 1e-14);
    CHECK(CycloNum(0).to_cd() == std::complex<double>(0, 0));
}

TEST_CASE("cyclo: conductor descends to the smallest field") {
    CycloNum x = root_of_unity(1, 12) * root_of_unity(1, 12) * root_of_unity(1, 12);
    CHECK(x.conductor() == 4);
    CHECK((root_of_unity(1, 6) * root_of_unity(1, 6) * root_of_unity(1, 6)).is_rational());
    CycloNum r3 = sqrt_of_integer(3);
    CHECK(r3 * r3 == CycloNum(3));
    CHECK(sqrt_of_integer(12) * sqrt_of_integer(12) == CycloNum(12));
}

TEST_CASE("cyclo: field axioms on random elements") {
    std::mt19937 rng(7);
    for (int M : {3, 4, 8, 12, 15, 24}) {
        for (int t = 0; t < 10; ++t) {
            CycloNum a = random_cyclo(rng, M), b = random_cyclo(rng, M), c = random_cyclo(rng, M);
            CHECK((a + b) * c == a * c + b * c);
            CHECK(a * b == b * a);
            CHECK((a - a).is_zero());
            CHECK(a.conj().conj() == a);
            CHECK((a * b).conj() == a.conj() * b.conj());
            if (!a.is_zero()) {
                CHECK(a * a.inverse() == CycloNum(1));
                CHECK((b / a) * a == b);
            }
            CHECK(std::abs((a * b).to_cd() - a.to_cd() * b.to_cd()) < 1e-9);
            CHECK(std::abs(a.conj().to_cd() - std::conj(a.to_cd())) < 1e-12);
            for (long d : {5L, 7L, 11L})
                if (std::gcd(d, static_cast<long>(M)) == 1) CHECK(galois_twist(a * b, d) == galois_twist(a, d) * galois_twist(b, d));
        }
    }
}

TEST_CASE("cyclo: errors") {
    CHECK_THROWS_AS(CycloNum(0).inverse(), DivisionByZero);
    CHECK_THROWS_AS(galois_twist(root_of_unity(1, 3), 3), NonCoprimeTwist);
}

TEST_CASE("cyclo: high precision embedding within its bound") {
    CycloNum g = CycloNum(1) + CycloNum(2) * root_of_unity(1, 3);
    BigComplex z = to_complex(g, 200);
    mpfr_t ref;
    mpfr_init2(ref, 200);
    mpfr_set_ui(ref, 3, MPFR_RNDN);
    mpfr_sqrt(ref, ref, MPFR_RNDN);
    mpfr_sub(ref, ref, z.im, MPFR_RNDN);
    CHECK(std::abs(mpfr_get_d(ref, MPFR_RNDN)) <= to_complex_error_bound(g, 200));
    CHECK(std::abs(mpfr_get_d(z.re, MPFR_RNDN)) <= to_complex_error_bound(g, 200));
    mpfr_clear(ref);
}
