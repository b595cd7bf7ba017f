#pragma once
#include <gmpxx.h>
#include <mpfr.h>

#include <complex>
#include <string>
#include <vector>

namespace wz {

using cd = std::complex<double>;

// Exact element of Q(zeta_M). Coefficients are taken in the power basis
// 1, z, ..., z^{phi(M)-1} modulo the M-th cyclotomic polynomial, and M is
// always the smallest conductor of a cyclotomic field containing the value.
class CycloNum {
public:
    CycloNum();
    CycloNum(long n);
    CycloNum(const mpq_class& q);

    // Sum raw[k] * zeta_M^k for k in [0, M).
    static CycloNum from_powers(int M, const std::vector<mpq_class>& raw);
    // Power-basis coefficients of length <= phi(M).
    static CycloNum from_basis(int M, std::vector<mpq_class> coeffs);

    int conductor() const { return M_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    // Coefficients after lifting to conductor L (M must divide L).
    std::vector<mpq_class> lifted(int L) const;

    bool is_zero() const;
    bool is_rational() const { return M_ == 1; }
    mpq_class rational_value() const;

    CycloNum operator+(const CycloNum& o) const;
    CycloNum operator-(const CycloNum& o) const;
    CycloNum operator-() const;
    CycloNum operator*(const CycloNum& o) const;
    CycloNum operator/(const CycloNum& o) const;
    CycloNum& operator+=(const CycloNum& o) { return *this = *this + o; }
    CycloNum& operator*=(const CycloNum& o) { return *this = *this * o; }
    bool operator==(const CycloNum& o) const { return M_ == o.M_ && c_ == o.c_; }
    bool operator!=(const CycloNum& o) const { return !(*this == o); }

    CycloNum conj() const;
    CycloNum inverse() const;
    CycloNum pow(long e) const;

    cd to_cd() const;
    std::string str() const;

private:
    int M_ = 1;
    std::vector<mpq_class> c_;  // length phi(M_), may be all zero
    void descend();
};

CycloNum root_of_unity(long a, long b);
CycloNum galois_twist(const CycloNum& x, long d);
CycloNum sqrt_of_integer(long n);

// Arbitrary precision complex value backed by MPFR.
class BigComplex {
public:
    explicit BigComplex(int precision);
    BigComplex(const BigComplex& o);
    BigComplex& operator=(const BigComplex& o);
    ~BigComplex();
    mpfr_t re, im;
    int precision() const { return static_cast<int>(mpfr_get_prec(re)); }
    cd to_cd() const;
    std::string str(int digits = 20) const;
};

BigComplex to_complex(const CycloNum& x, int precision);
// Bound 2^{1-precision} (1 + sum |c_j|) guaranteed by to_complex.
double to_complex_error_bound(const CycloNum& x, int precision);

// Internal helpers shared with the matrix kernel.
namespace cyclo_detail {
int euler_phi(int M);
// x^k mod Phi_M as integer coefficient vector of length phi(M), 0 <= k < M.
const std::vector<std::vector<long>>& reduction_table(int M);
const std::vector<long>& cyclotomic_poly(int M);
std::vector<int> primes_of(int n);
}  // namespace cyclo_detail

}  // namespace wz
