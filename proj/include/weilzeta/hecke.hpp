#pragma once
#include "weilzeta/series.hpp"

#include <gmpxx.h>

#include <functional>
#include <string>
#include <vector>

namespace wz {

struct QTerm {
    mpq_class n;  // exponent, n = q(lambda) mod 1
    cd c;
};

struct QExpansion {
    std::vector<long> divisors;  // elementary divisors of the module
    int weight = 0;
    long truncation = 0;
    std::vector<std::vector<QTerm>> comp;  // indexed by module element
    int dim() const { return static_cast<int>(comp.size()); }
    QExpansion scaled(cd a) const;
    QExpansion plus(const QExpansion& o) const;
};

// Line format: header "module: d1,d2,...; weight: l; truncation: T" ("module: 1" for the trivial group),
// then lines "lambda=(r1,...,rk); n=p/q; c=RE,IM". Lines starting with '#' are ignored.
QExpansion parse_qexpansion(const std::string& text);
QExpansion read_qexpansion_file(const std::string& path);
std::string format_qexpansion(const QExpansion& f);
// Throws ParseError if the module does not match or some exponent is not in q(lambda) + Z.
void validate_qexpansion(const QExpansion& f, const FQM& D);

// Delta = q prod (1 - q^n)^24 up to q^T, coefficients exact.
std::vector<mpz_class> ramanujan_tau(long T);
QExpansion delta_qexpansion(long T);

// Truncated Fourier sum; throws TruncationTooCoarse if the estimated tail exceeds tol * max(1, |f(tau)|).
CVec eval_form(const QExpansion& f, cd tau, double tol = 1e-12);

enum class HeckeVariant { Dprime, D };

// (f|T)(zeta) = det^{l/2-1} sum_M j(M,zeta)^{-l} rho^{-1}(M) f(M zeta) over Gamma_1\Gamma_1 D' Gamma_1;
// variant D uses M/d with the scalar g_d/g. With reduce = true each M is moved so that M zeta lies in
// the standard fundamental domain.
CVec hecke_at_point(const FQM& D, const QExpansion& f, long d, cd zeta, HeckeVariant v, bool reduce = true);

struct EigenvalueResult {
    cd lambda;
    double max_deviation = 0;
    std::vector<cd> ratios;
};
extern const std::vector<cd> kProbePoints;  // i, 1/2 + i, 2i
EigenvalueResult eigenvalue(const FQM& D, const QExpansion& f, long d, double tol = 1e-8);

enum class QuadRule { Midpoint, GaussLegendre };

struct QuadratureSpec {
    int nx = 96;         // nodes in x over [-1/2, 1/2]
    int ny = 96;         // nodes in y per column over [sqrt(1 - x^2), ycut]
    QuadRule rule = QuadRule::GaussLegendre;  // Gauss-Legendre uses panels of 16 nodes
    double ycut = 8.0;
    int threads = 0;     // 0: hardware concurrency
    bool check_stability = true;  // compare against half resolution
    double tol = 1e-3;   // relative tolerance for the stability check
};

struct QuadNode {
    cd tau;
    double w;  // includes dx dy / y^2
};
std::vector<QuadNode> quadrature_nodes(const QuadratureSpec& q);
// sum of weights plus the cusp part 1/ycut, to be compared with pi/3
double quadrature_volume(const QuadratureSpec& q);

using KernelField = std::function<CVec(cd)>;

// Per lambda: integral of <f(tau) (x) e_lambda, G(tau)> Im(tau)^l dmu with G indexed by mu * |D| + lambda.
CVec petersson_integral(const QExpansion& f, const KernelField& G, int l, const QuadratureSpec& q);
// Scalar product (f, g)_1 of two genus-1 vector fields.
cd petersson_product(const KernelField& f, const KernelField& g, int l, const QuadratureSpec& q);

struct HeckeScalar {
    CycloNum g_over_gd, gd_over_g, kappa;
    bool g_over_gd_root_of_unity = false;  // (g/g_d)^8 = 1
    bool kappa_unit = false;               // |kappa| = 1
};
HeckeScalar hecke_relation_scalar(const FQM& D, long d);

}  // namespace wz
