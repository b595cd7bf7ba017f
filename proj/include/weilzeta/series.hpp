#pragma once
#include "weilzeta/cosets.hpp"
#include "weilzeta/fqm.hpp"
#include "weilzeta/numeric.hpp"
#include "weilzeta/weil.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace wz {

using CVec = std::vector<cd>;

// Symmetric 2x2 complex matrix [[t11, t12], [t12, t22]].
struct Tau2 {
    cd t11, t12, t22;
    static Tau2 diag(cd a, cd b) { return {a, 0.0, b}; }
};

// Throws WeightParityViolation unless l >= n+1 and 2l + sig = 0 mod 4.
void check_weight(const FQM& D, int n, int l);
// Re(s) > (n+1-l)/2
bool in_convergence_region(int n, int l, cd s);

// rho^{-1}(gamma) for gamma in SL_2(Z), computed exactly once per residue class mod N and embedded.
class WeilCache1 {
public:
    explicit WeilCache1(const FQM& D) : D_(D) {}
    const CVec& inverse(const Mat2& g);  // row-major dim x dim
    // rho^{-1}(delta) for an integral primitive delta of square determinant (extended action)
    const CVec& extended_inverse(const Mat2& delta);
    int dim() const { return static_cast<int>(D_.order()); }
    const FQM& module() const { return D_; }

private:
    const FQM& D_;
    std::mutex mutex_;
    std::map<std::array<long, 4>, CVec> cache_, ext_cache_;
};

// rho_2^{-1}(gamma) e_0 propagated in floating point through the word of gamma;
// generator matrices are computed exactly and embedded once.
class WeilCache2 {
public:
    explicit WeilCache2(const FQM& D) : D_(D) {}
    CVec inverse_e0(const GroupWord& w);
    int dim() const { return static_cast<int>(D_.order() * D_.order()); }

private:
    struct Sparse {
        std::vector<int> row, col;
        std::vector<cd> val;
    };
    const Sparse& generator_inverse(const Letter& l);
    const FQM& D_;
    std::map<std::string, Sparse> gens_;
};

CVec eisenstein1(const FQM& D, int l, cd s, cd tau, long height, bool dual = false);
CVec eisenstein1(WeilCache1& W, int l, cd s, cd tau, long height, bool dual = false);
CVec eisenstein2(const FQM& D, int l, cd s, const Tau2& Z, long height, bool dual = false);
// generic entry point: genus 1 uses Z.t11
CVec eisenstein(const FQM& D, int n, int l, cd s, const Tau2& Z, long height, bool dual = false);

enum class NegVariant { Neg, Conj };
// Neg: value at -Z via ((-1)^n)^s E^*(Z); Conj: value at conj(Z) via ((-1)^n)^s E^*(-conj Z).
// With dual = true the roles of E and E^* are exchanged.
CVec eisenstein_negarg(const FQM& D, int n, int l, cd s, const Tau2& Z, long height, NegVariant v,
                       bool dual = false);

struct PoincareTrunc {
    long height = 8;   // bottom rows (c, d) with max(|c|,|d|) <= height; 0 means gamma = +-1
    long window = 12;  // translations T^n with |n - n_0| <= window around the nearest translate
};

// P^+_l(tau, zeta, s) as a tensor indexed by mu * |D| + lambda; tau and zeta may lie in either half plane.
CVec poincare_plus(const FQM& D, int l, cd s, cd tau, cd zeta, const PoincareTrunc& tr);
CVec poincare_plus(WeilCache1& W, int l, cd s, cd tau, cd zeta, const PoincareTrunc& tr);
// the P_l variant with (tau + zeta)
CVec poincare(WeilCache1& W, int l, cd s, cd tau, cd zeta, const PoincareTrunc& tr);

// Sum over Gamma_1\Gamma_1 D Gamma_1 of P^+ slashed in the second slot with rho^*.
// With reduce = true every representative is replaced by g M with g M zeta in the standard fundamental domain.
CVec script_P_plus(WeilCache1& W, int l, cd s, cd tau, cd zeta, long d, const PoincareTrunc& tr,
                   bool reduce = true);

// g in SL_2(Z) with g z in the standard fundamental domain
Mat2 reduce_to_fundamental_domain(cd z, cd* gz = nullptr);
cd mobius(const Mat2& g, cd z);

struct PullbackTrunc {
    long g2_height = 2;  // genus-2 coset height for the left side
    long g1_height = 40; // genus-1 coset height for E^1 tensor term
    PoincareTrunc p;     // Poincare truncation for the correction terms
};

struct PullbackResult {
    CVec lhs, tensor_term, correction, rhs;
    double residual = 0;
};

// E^{2*}(diag(tau, zeta), s) against E^{1*}(tau) (x) E^{1*}(zeta) + e(sig/8)|D|^{-1/2} sum_d g_d/g d^{-l-2s} scriptP^+(-tau, zeta, d, s)
PullbackResult pullback(const FQM& D, int l, cd s, cd tau, cd zeta, long dmax, const PullbackTrunc& tr);
double pullback_residual(const FQM& D, int l, cd s, cd tau, cd zeta, long dmax, const PullbackTrunc& tr);

double max_abs_diff(const CVec& a, const CVec& b);
double max_abs(const CVec& a);

}  // namespace wz
