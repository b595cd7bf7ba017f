#include "weilzeta/numeric.hpp"

#include "weilzeta/errors.hpp"

#include <cmath>

namespace wz {

namespace {

const double kLanczosG = 7.0;
const double kLanczos[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                            771.32342877765313,   -176.61502916214059,   12.507343278686905,
                            -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool near_pole(cd z) {
    double r = std::round(z.real());
    return r <= 0 && std::abs(z.imag()) < 1e-14 && std::abs(z.real() - r) < 1e-14;
}

}  // namespace

cd cgamma(cd z) {
    if (near_pole(z)) throw GammaPole("Gamma has a pole at " + std::to_string(z.real()));
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * cgamma(1.0 - z));
    z -= 1.0;
    cd x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    cd t = z + kLanczosG + 0.5;
    return std::sqrt(2 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cd clog_gamma(cd z) {
    if (near_pole(z)) throw GammaPole("Gamma has a pole at " + std::to_string(z.real()));
    if (z.real() < 0.5) return std::log(kPi / std::sin(kPi * z)) - clog_gamma(1.0 - z);
    z -= 1.0;
    cd x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    cd t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

std::vector<long> primes_up_to(long n) {
    std::vector<long> out;
    if (n < 2) return out;
    std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
    for (long i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (long j = i * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

int kronecker(long a, long n) {
    if (n <= 0) throw Error("kronecker requires n > 0");
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        long r = ((a % 8) + 8) % 8;
        if (r == 3 || r == 5) result = -result;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

cd rpow(double x, cd s) { return std::exp(s * std::log(x)); }

cd e_of(double x) { return std::polar(1.0, 2 * kPi * x); }

cd minus_one_pow(cd s) { return std::exp(cd(0, kPi) * s); }

}  // namespace wz
