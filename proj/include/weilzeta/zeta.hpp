#pragma once
#include "weilzeta/fqm.hpp"
#include "weilzeta/numeric.hpp"
#include "weilzeta/poly.hpp"

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace wz {

// Rational function X^shift * num(X) / den(X) in X = p^{-s} with rational coefficients.
class RatX {
public:
    RatX() : num_(PolyQ::constant(0)), den_(PolyQ::constant(1)) {}
    RatX(const mpq_class& c) : num_(PolyQ::constant(c)), den_(PolyQ::constant(1)) {}
    static RatX monomial(const mpq_class& c, int e);
    // zeta_p(a s + b) = 1 / (1 - p^{-b} X^a)
    static RatX local_zeta(long p, int a, const mpq_class& b);

    RatX operator+(const RatX& o) const;
    RatX operator-(const RatX& o) const;
    RatX operator*(const RatX& o) const;
    RatX operator/(const RatX& o) const;
    bool equals(const RatX& o) const;  // identity of rational functions
    bool is_zero() const { return num_.is_zero(); }

    cd eval(cd X) const;
    mpq_class eval(const mpq_class& X) const;
    std::string str() const;

    int shift() const { return shift_; }
    const PolyQ& num() const { return num_; }
    const PolyQ& den() const { return den_; }

private:
    int shift_ = 0;
    PolyQ num_, den_;
};

// Exact element of Q(w) with w^b = p; used to evaluate RatX at rational s = a/b, where X = w^{-a}.
class RadicalField {
public:
    RadicalField(long p, long b);
    PolyQ power_of_w(long k) const;  // w^k reduced, k may be negative
    PolyQ reduce(const PolyQ& x) const { return x.mod(modulus_); }
    PolyQ mul(const PolyQ& x, const PolyQ& y) const { return (x * y).mod(modulus_); }
    PolyQ inverse(const PolyQ& x) const;
    PolyQ eval(const RatX& f, long a) const;  // value at X = w^{-a}
    long p() const { return p_; }
    long b() const { return b_; }

private:
    long p_, b_;
    PolyQ modulus_;
};

enum class Perm { Id, Swap };
enum class Partition { I0, I0I1 };  // {1,2} or {1} u {2}
std::string label_str(Perm sigma, Partition part, int k);

struct LocalFactorLabel {
    Perm sigma;
    Partition part;
    int k;
};
// all sigma-stable labels with 0 <= k <= s + 1
std::vector<LocalFactorLabel> local_factor_labels();

// p-part data: p, lattice rank m, and the rank r of the p-part (1 for Z/p, 2 for (Z/p)^2)
struct LocalData {
    long p;
    int m;
    int prank;
};
LocalData local_data(const FQM& D, long p);  // throws UnsupportedRank unless the p-part is Z/p or (Z/p)^2

struct Combinatorics {
    int s;                       // number of blocks minus one
    int c1, c2, t, tau;
    std::vector<int> n, c1r, c2r, c1_from;  // n(r), c_{1,r}, c_{2,r}, c_1^{(r)} for r = 0..s+1
    std::vector<mpq_class> A;              // A_i for i = 0..s+1
    std::vector<mpq_class> B;              // B_i for i = 0..s+1
};
Combinatorics combinatorics(Perm sigma, Partition part, int m);

mpq_class kappa_p(long p, Perm sigma, Partition part, int k, int m);
RatX Delta_p(const LocalData& L, Perm sigma, Partition part, int k);
// D_{p,j}(2s - 3/2) as a function of X = p^{-s}
RatX D_pj(const LocalData& L, Perm sigma, Partition part, int j);
RatX K_p_general(const LocalData& L, Perm sigma, Partition part, int k);
RatX K_p_explicit(const LocalData& L, Perm sigma, Partition part, int k);

struct LocalFactorCheck {
    LocalFactorLabel label;
    long p;
    bool identity = false;       // rational functions agree
    int sample_mismatches = 0;   // among the sampled rational s
    int samples = 0;
    std::string general, explicit_form;
};
// Compares both paths symbolically and at `samples` random rational s = a/b.
std::vector<LocalFactorCheck> check_local_factors(const LocalData& L, int samples, unsigned seed);

// Siegel Gamma function of genus 2
cd siegel_gamma2(cd s);
int chi_V(const FQM& D, long p);
// xi(s, 2, l, P) with P the primes not dividing |D| up to prime_bound
cd xi_constant(int l, cd s, long prime_bound, const FQM& D);
double xi_stability(int l, cd s, long prime_bound, const FQM& D);  // relative change under doubling

struct FunctionalScalar {
    cd xi;
    std::map<long, cd> local;  // p -> C_p(id,I0) + C_p(id,I0 u I1) + C_p(sigma,I0)
    cd value;
    bool hypotheses_hold = false;  // anisotropic and |D| odd
};
// Scalar relating E^2(tau, s - l/2) to E^2(tau, 3/2 - s - l/2); explicit = true uses the closed-form K_p.
FunctionalScalar functional_scalar(int l, cd s, const FQM& D, long prime_bound, bool explicit_path = true);

struct ZetaValue {
    cd value;
    double tail_estimate = 0;
    double growth_exponent = 0;
    long dmax = 0;
};
using EigenvalueSeries = std::map<long, cd>;
EigenvalueSeries read_eigenvalue_file(const std::string& path);
ZetaValue standard_zeta(const EigenvalueSeries& eigs, cd s);
// C(l, s) = (-1)^{l/2} 2^{2-2s-l} pi Gamma(s+1)/Gamma(s+2)
cd C_const(int l, cd s);
// K(l, s) = e(sig/8)|D|^{-1/2} (-1)^{-s} C(l, s)
cd K_const(int l, cd s, const FQM& D);
cd completed_zeta(const EigenvalueSeries& eigs, int l, cd s, const FQM& D);

}  // namespace wz
