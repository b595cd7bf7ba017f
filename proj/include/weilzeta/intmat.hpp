#pragma once
#include <gmpxx.h>

#include <array>
#include <string>
#include <vector>

namespace wz {

// returns g = gcd(a,b) >= 0 with x*a + y*b = g
long ext_gcd(long a, long b, long& x, long& y);
long mod_pos(long a, long m);

struct Mat2 {
    long a = 1, b = 0, c = 0, d = 1;
    static Mat2 identity() { return {}; }
    static Mat2 S() { return {0, -1, 1, 0}; }
    static Mat2 T(long n = 1) { return {1, n, 0, 1}; }
    long det() const { return a * d - b * c; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }
    bool operator==(const Mat2& o) const = default;
    auto operator<=>(const Mat2& o) const = default;
    // inverse of a determinant +-1 matrix
    Mat2 inv_unimodular() const;
    Mat2 transpose() const { return {a, c, b, d}; }
    std::string str() const;
};

using IMat = std::vector<std::vector<long>>;

IMat imat_identity(int n);
IMat imat_mul(const IMat& x, const IMat& y);
IMat imat_transpose(const IMat& x);
bool imat_is_zero(const IMat& x);
std::string imat_str(const IMat& x);
// 4x4 helpers for genus-2 symplectic matrices in block form [[A,B],[C,D]]
IMat block4(const Mat2& A, const Mat2& B, const Mat2& C, const Mat2& D);
IMat sym_J(int n);
bool is_symplectic(const IMat& g);
IMat imat_inverse_symplectic(const IMat& g);

using ZMat = std::vector<std::vector<mpz_class>>;

// Smith normal form: U * G * V = diag(e), U and V unimodular, e_i | e_{i+1}, e_i >= 0.
struct SmithForm {
    ZMat U, V;
    std::vector<mpz_class> diag;
};
SmithForm smith_normal_form(const ZMat& G);
mpz_class zmat_det(const ZMat& G);

// Row Hermite normal form of an integer matrix under left GL(r,Z).
IMat row_hnf(const IMat& A);

}  // namespace wz
