#pragma once
#include <complex>
#include <vector>

namespace wz {

using cd = std::complex<double>;

// Lanczos approximation with reflection; throws GammaPole at non-positive integers.
cd cgamma(cd z);
cd clog_gamma(cd z);
std::vector<long> primes_up_to(long n);
// Kronecker symbol (a/n) for n > 0
int kronecker(long a, long n);
// x^s for real x > 0
cd rpow(double x, cd s);
// e(x) = exp(2 pi i x)
cd e_of(double x);
// (-1)^s := exp(i pi s)
cd minus_one_pow(cd s);
constexpr double kPi = 3.14159265358979323846;

}  // namespace wz
