#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

namespace wz {

// Dense univariate polynomial over Q, coefficients low to high, no trailing zeros.
class PolyQ {
public:
    PolyQ() = default;
    explicit PolyQ(std::vector<mpq_class> c);
    static PolyQ constant(const mpq_class& a);
    static PolyQ monomial(const mpq_class& a, int k);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    mpq_class coeff(int k) const;
    mpq_class leading() const { return c_.back(); }

    PolyQ operator+(const PolyQ& o) const;
    PolyQ operator-(const PolyQ& o) const;
    PolyQ operator-() const;
    PolyQ operator*(const PolyQ& o) const;
    PolyQ operator*(const mpq_class& a) const;
    bool operator==(const PolyQ& o) const { return c_ == o.c_; }
    bool operator!=(const PolyQ& o) const { return !(*this == o); }

    // quotient and remainder with b != 0
    static void divmod(const PolyQ& a, const PolyQ& b, PolyQ& q, PolyQ& r);
    PolyQ mod(const PolyQ& m) const;
    // s with s*a = 1 mod m, requires gcd(a, m) = 1
    static PolyQ inverse_mod(const PolyQ& a, const PolyQ& m);

    mpq_class eval(const mpq_class& x) const;
    std::string str(const std::string& var = "x") const;

private:
    void trim();
    std::vector<mpq_class> c_;
};

}  // namespace wz
