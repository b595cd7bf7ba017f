#include "weilzeta/errors.hpp"
#include "weilzeta/numeric.hpp"

#include <doctest.h>

#include <cmath>

using namespace wz;

TEST_CASE("numeric: Gamma") {
    for (double x : {0.3, 1.0, 2.5, 7.25, 20.0, -0.5, -3.7})
        CHECK(std::abs(cgamma(x) - std::tgamma(x)) < 1e-13 * std::abs(std::tgamma(x)));
    for (cd z : {cd(0.3, 1.2), cd(-2.4, 0.7), cd(5, -3)}) {
        cd refl = cgamma(z) * cgamma(1.0 - z) * std::sin(kPi * z);
        CHECK(std::abs(refl - kPi) < 1e-12);
        CHECK(std::abs(cgamma(z + 1.0) - z * cgamma(z)) < 1e-12 * std::abs(cgamma(z + 1.0)));
        CHECK(std::abs(std::exp(clog_gamma(z)) - cgamma(z)) < 1e-12 * std::abs(cgamma(z)));
    }
    CHECK_THROWS_AS(cgamma(0.0), GammaPole);
    CHECK_THROWS_AS(cgamma(-3.0), GammaPole);
}

TEST_CASE("numeric: Kronecker symbol") {
    for (long p : primes_up_to(60)) {
        if (p == 2) continue;
        for (long a = -20; a <= 20; ++a) {
            long r = ((a % p) + p) % p, e = 1, b = r;
            for (long k = (p - 1) / 2; k > 0; k >>= 1) {
                if (k & 1) e = e * b % p;
                b = b * b % p;
            }
            int euler = r == 0 ? 0 : (e == 1 ? 1 : -1);
            CHECK(kronecker(a, p) == euler);
        }
    }
    CHECK(kronecker(5, 8) == -1);
    CHECK(kronecker(7, 8) == 1);
    CHECK(kronecker(3, 1) == 1);
    CHECK(primes_up_to(30) == std::vector<long>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
}

TEST_CASE("numeric: powers and exponentials") {
    CHECK(std::abs(rpow(2.0, cd(0, 1)) - std::exp(cd(0, std::log(2.0)))) < 1e-15);
    CHECK(std::abs(e_of(0.25) - cd(0, 1)) < 1e-15);
    CHECK(std::abs(minus_one_pow(0.5) - cd(0, 1)) < 1e-15);
    CHECK(std::abs(minus_one_pow(2.0) - 1.0) < 1e-15);
}
