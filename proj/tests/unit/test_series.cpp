#include "oracles.hpp"

#include "weilzeta/errors.hpp"
#include "weilzeta/series.hpp"

#include <doctest.h>

#include <numeric>

using namespace wz;

namespace {

const FQM& E8() {
    static FQM D = discriminant_form(lattice_E8());
    return D;
}

CVec mat_vec(const WeilMatrix& m, const CVec& v) {
    CVec out(v.size(), 0.0);
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) out[i] += m.entry_cd(i, j) * v[j];
    return out;
}

// trivial group, s = 0: sum over gamma in SL_2(Z) of j(gamma, tau)^{-l} (gamma tau - zeta)^{-l}
cd scalar_kernel(cd tau, cd zeta, int l, long H, long M) {
    cd acc = 0;
    for (long c = -H; c <= H; ++c)
        for (long d = -H; d <= H; ++d) {
            if (std::gcd(c, d) != 1) continue;
            long x = 0, y = 0;
            // a d - b c = 1
            for (long a = -H - 1; a <= H + 1 && !(x || y); ++a)
                for (long b = -H - 1; b <= H + 1; ++b)
                    if (a * d - b * c == 1) {
                        x = a;
                        y = b;
                        break;
                    }
            cd j = static_cast<double>(c) * tau + static_cast<double>(d);
            cd gt = (static_cast<double>(x) * tau + static_cast<double>(y)) / j;
            for (long m = -M; m <= M; ++m) acc += std::pow(j, -l) * std::pow(gt + static_cast<double>(m) - zeta, -l);
        }
    return acc;
}

}  // namespace

TEST_CASE("series: weight conditions") {
    FQM A2 = discriminant_form(lattice_A2());
    CHECK_NOTHROW(check_weight(A2, 1, 5));
    CHECK_THROWS_AS(check_weight(A2, 1, 4), WeightParityViolation);
    CHECK_NOTHROW(check_weight(E8(), 2, 12));
    CHECK_THROWS_AS(check_weight(E8(), 1, 1), WeightParityViolation);
    CHECK(in_convergence_region(2, 12, 0.0));
    CHECK_FALSE(in_convergence_region(2, 2, 0.0));
    CHECK(in_convergence_region(2, 2, 0.6));
}

TEST_CASE("series: E^1 for the trivial group is the classical E_12") {
    for (cd tau : {cd(0, 1), cd(0.3, 1.1), cd(-0.45, 0.9)}) {
        CVec e = eisenstein1(E8(), 12, 0.0, tau, 200);
        CHECK(std::abs(e[0] - oracle::eisenstein12(tau)) < 1e-6);
    }
}

TEST_CASE("series: E^1 at height 1 is the four-term sum") {
    cd tau(0.3, 1.5), s(1.0, 0.5);
    CVec e = eisenstein1(E8(), 12, s, tau, 1);
    cd want = 0;
    for (cd j : {cd(1), tau, tau + 1.0, tau - 1.0}) want += std::pow(j, -12) * std::pow(std::abs(j), -2.0 * s);
    want *= std::pow(tau.imag(), s);
    CHECK(std::abs(e[0] - want) < 1e-12);
}

TEST_CASE("series: E^1 is modular for A2 + A2, weight 4") {
    FQM D = discriminant_form(lattice_A2A2());
    cd tau(0, 2);
    CVec e = eisenstein1(D, 4, 0.0, tau, 120);
    CVec eT = eisenstein1(D, 4, 0.0, tau + 1.0, 120);
    CVec eS = eisenstein1(D, 4, 0.0, -1.0 / tau, 120);
    CVec wantT = mat_vec(rho1_matrix(D, Mat2::T()), e);
    CVec wantS = mat_vec(rho1_matrix(D, Mat2::S()), e);
    for (auto& x : wantS) x *= std::pow(tau, 4);
    CHECK(max_abs_diff(eT, wantT) < 1e-3);
    CHECK(max_abs_diff(eS, wantS) < 1e-3);
}

TEST_CASE("series: negative arguments") {
    cd tau(0, 1), s(2, 0);
    // trivial group: E(-tau, s) = (-1)^s E(tau, s) with Im(-tau)^s on the principal branch
    cd direct = 0;
    cd t = -tau;
    for (const auto& r : genus1_cosets(60).reps) {
        cd j = static_cast<double>(r.mat[1][0]) * t + static_cast<double>(r.mat[1][1]);
        direct += std::pow(j, -12) * std::pow(std::abs(j), -2.0 * s);
    }
    direct *= std::exp(s * std::log(cd(t.imag(), 0)));
    CVec v = eisenstein_negarg(E8(), 1, 12, s, Tau2{tau, 0, 0}, 60, NegVariant::Neg);
    CHECK(std::abs(v[0] - direct) < 1e-10);
    CHECK(std::abs(v[0] - minus_one_pow(s) * eisenstein1(E8(), 12, s, tau, 60)[0]) < 1e-12);
    // genus 2: ((-1)^2)^s = 1
    Tau2 Z{cd(0.1, 1.3), cd(0.05, 0.2), cd(-0.2, 1.1)};
    cd s2(0.3, 0.4);
    CVec a = eisenstein_negarg(E8(), 2, 12, s2, Z, 1, NegVariant::Neg);
    CVec b = eisenstein2(E8(), 12, s2, Z, 1, true);
    CHECK(max_abs_diff(a, b) < 1e-14);
}

TEST_CASE("series: E^2 identity coset dominates at large s") {
    Tau2 Z{cd(0.1, 1.3), cd(0.05, 0.2), cd(-0.2, 1.1)};
    double detY = 1.3 * 1.1 - 0.2 * 0.2;
    double prev = 1;
    for (double s : {12.0, 24.0, 40.0}) {
        double dev = std::abs(eisenstein2(E8(), 12, s, Z, 1)[0] / std::pow(detY, s) - 1.0);
        CHECK(dev < prev);
        prev = dev;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("series: P^+ basic structure") {
    WeilCache1 W(E8());
    PoincareTrunc h0{0, 0};
    cd tau(0.2, 1.3), zeta(-0.1, 0.7), s(0.5, 0);
    CVec p = poincare_plus(W, 12, s, tau, zeta, h0);
    cd w = tau - zeta;
    cd want = 2.0 * std::pow(w, -12) * std::pow(std::abs(w), -1.0) * std::pow(tau.imag() * zeta.imag(), s);
    CHECK(std::abs(p[0] - want) < 1e-12 * std::abs(want));
    CHECK_THROWS_AS(poincare_plus(W, 12, s, tau, tau, PoincareTrunc{}), PoleProximity);
}

TEST_CASE("series: P^+ agrees with a direct scalar sum") {
    WeilCache1 W(E8());
    PoincareTrunc tr{6, 12};
    cd tau(0, 2), zeta(0, 1);
    CVec p = poincare_plus(W, 12, 0.0, tau, -zeta, tr);
    cd ref = scalar_kernel(tau, -zeta, 12, 6, 400);
    CHECK(std::abs(p[0] - ref) < 1e-6 * std::abs(ref));
}

TEST_CASE("series: P^+ transforms in tau like a modular form") {
    FQM A2 = discriminant_form(lattice_A2());
    WeilCache1 W(A2);
    PoincareTrunc tr{10, 12};
    cd tau(0.3, 1.2), zeta(-0.2, -1.1);
    CVec p = poincare_plus(W, 5, 0.0, tau, zeta, tr);
    CVec pS = poincare_plus(W, 5, 0.0, -1.0 / tau, zeta, tr);
    WeilMatrix S = rho1_matrix(A2, Mat2::S());
    int n = 3;
    double err = 0, scale = 0;
    for (int lam = 0; lam < n; ++lam)
        for (int mu = 0; mu < n; ++mu) {
            cd want = 0;
            for (int k = 0; k < n; ++k) want += S.entry_cd(mu, k) * p[k * n + lam];
            want *= std::pow(tau, 5);
            err = std::max(err, std::abs(pS[mu * n + lam] - want));
            scale = std::max(scale, std::abs(want));
        }
    CHECK(err < 1e-4 * scale);
}

TEST_CASE("series: script P^+") {
    WeilCache1 W(E8());
    PoincareTrunc tr{4, 8};
    cd tau(0.1, 1.4), zeta(0.2, 1.1);
    CHECK(max_abs_diff(script_P_plus(W, 12, 0.0, tau, zeta, 1, tr, false), poincare_plus(W, 12, 0.0, tau, zeta, tr)) < 1e-15);
    // trivial group, d = 2: sum over the six upper triangular cosets scaled by 1/2
    cd ref = 0;
    for (long a : {1L, 2L, 4L}) {
        long c = 4 / a;
        for (long b = 0; b < c; ++b) {
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            cd Mz = (static_cast<double>(a) * zeta + static_cast<double>(b)) / static_cast<double>(c);
            ref += std::pow(c / 2.0, -12) * poincare_plus(W, 12, 0.0, tau, Mz, tr)[0];
        }
    }
    CHECK(std::abs(script_P_plus(W, 12, 0.0, tau, zeta, 2, tr, false)[0] - ref) < 1e-12 * std::abs(ref));
    // A2: invariance under x -> -x in each slot
    FQM A2 = discriminant_form(lattice_A2());
    WeilCache1 W2(A2);
    for (long d : {1L, 2L, 3L}) {
        CVec P = script_P_plus(W2, 5, 0.0, tau, -zeta, d, tr);
        double scale = max_abs(P), err = 0;
        for (int a = 0; a < 3; ++a) {
            err = std::max(err, std::abs(P[a * 3 + 1] - P[a * 3 + 2]));
            err = std::max(err, std::abs(P[1 * 3 + a] - P[2 * 3 + a]));
        }
        CHECK(scale > 0);
        CHECK(err < 1e-12 * scale);
    }
}

TEST_CASE("series: reduction to the fundamental domain") {
    for (cd z : {cd(3.7, 0.01), cd(-0.49, 0.3), cd(0.1, 5.0), cd(12.3, 0.002)}) {
        cd gz;
        Mat2 g = reduce_to_fundamental_domain(z, &gz);
        CHECK(g.det() == 1);
        CHECK(std::abs(mobius(g, z) - gz) < 1e-9 * std::max(1.0, std::abs(gz)));
        CHECK(std::abs(gz.real()) <= 0.5 + 1e-12);
        CHECK(std::norm(gz) >= 1 - 1e-12);
    }
}

TEST_CASE("series: pullback for E8 at weight 12") {
    PullbackTrunc tr;
    PullbackResult r = pullback(E8(), 12, 0.0, cd(0, 1.5), cd(0, 1.5), 8, tr);
    CHECK(r.residual < 1e-2);
    CHECK(max_abs(r.correction) > 0);
    CHECK(pullback_residual(E8(), 12, 0.0, cd(0, 1.5), cd(0, 1.5), 0, tr) > r.residual);
}
