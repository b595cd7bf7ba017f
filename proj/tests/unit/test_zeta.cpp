#include "oracles.hpp"

#include "weilzeta/errors.hpp"
#include "weilzeta/zeta.hpp"

#include <doctest.h>

#include <cmath>

using namespace wz;

namespace {

const FQM& A2A2() {
    static FQM D = discriminant_form(lattice_A2A2());
    return D;
}

mpq_class X_at(long p, long s) {
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), p, s);
    return mpq_class(1, 1) / mpq_class(d);
}

}  // namespace

TEST_CASE("zeta: rational functions in X") {
    RatX z = RatX::local_zeta(3, 2, 1);  // 1 / (1 - X^2 / 3)
    CHECK(z.eval(mpq_class(1, 3)) == mpq_class(27, 26));
    RatX one(1);
    CHECK((z * (one / z)).equals(one));
    CHECK((z - z).is_zero());
    CHECK((z + z).equals(z * RatX(2)));
    RatX m = RatX::monomial(mpq_class(5, 2), 3);
    CHECK(m.eval(mpq_class(2)) == 20);
    CHECK(std::abs(m.eval(cd(0, 1)) - cd(0, -2.5)) < 1e-15);
}

TEST_CASE("zeta: radical field") {
    RadicalField F(3, 2);  // w^2 = 3
    PolyQ w = F.power_of_w(1);
    CHECK(F.mul(w, w) == F.power_of_w(2));
    CHECK(F.power_of_w(2) == PolyQ::constant(3));
    CHECK(F.mul(w, F.inverse(w)) == PolyQ::constant(1));
    CHECK(F.power_of_w(-2) == PolyQ::constant(mpq_class(1, 3)));
    // 1/(1 - X) at X = 3^{-1/2}
    RatX g = RatX(1) / (RatX(1) - RatX::monomial(1, 1));
    PolyQ v = F.eval(g, 1);
    double vd = v.coeff(0).get_d() + v.coeff(1).get_d() * std::sqrt(3.0);
    CHECK(vd == doctest::Approx(1 / (1 - 1 / std::sqrt(3.0))));
}

TEST_CASE("zeta: local factor examples") {
    LocalData L = local_data(A2A2(), 3);
    CHECK(L.p == 3);
    CHECK(L.m == 4);
    CHECK(L.prank == 2);
    mpq_class X = X_at(3, 2);
    for (auto K : {K_p_general, K_p_explicit}) {
        CHECK(K(L, Perm::Id, Partition::I0, 0).eval(X) == mpq_class(8, 39));
        CHECK(K(L, Perm::Swap, Partition::I0, 0).eval(X) == mpq_class(2, 39));
    }
    mpz_class p26;
    mpz_ui_pow_ui(p26.get_mpz_t(), 3, 26);
    CHECK(K_p_explicit(L, Perm::Swap, Partition::I0, 1).eval(X) == mpq_class(8, 9) / mpq_class(p26 - 1));
    for (auto [sg, pt] : {std::pair{Perm::Id, Partition::I0}, {Perm::Id, Partition::I0I1}, {Perm::Swap, Partition::I0}})
        CHECK(Delta_p(L, sg, pt, 0).equals(RatX(1)));
    FQM A2 = discriminant_form(lattice_A2());
    LocalData C = local_data(A2, 3);
    CHECK(C.prank == 1);
    CHECK(Delta_p(C, Perm::Id, Partition::I0, 1).is_zero());
    CHECK(K_p_general(C, Perm::Id, Partition::I0, 1).is_zero());
    CHECK(K_p_explicit(C, Perm::Id, Partition::I0, 1).is_zero());
    CHECK_THROWS_AS(Delta_p(L, Perm::Swap, Partition::I0I1, 0), InvalidPartition);
    FQM big = discriminant_form(orthogonal_sum(lattice_A2A2(), lattice_A2()));
    CHECK_THROWS_AS(local_data(big, 3), UnsupportedRank);
}

TEST_CASE("zeta: kappa") {
    for (long p : {3L, 5L, 7L}) {
        mpq_class u = 1 - mpq_class(1, p), v = 1 - mpq_class(1, p * p * p);
        CHECK(kappa_p(p, Perm::Id, Partition::I0, 0, 4) == u * u * u * u / v);
    }
}

TEST_CASE("zeta: general and explicit local factors") {
    LocalData L = local_data(A2A2(), 3);
    auto checks = check_local_factors(L, 20, 7);
    std::map<std::string, bool> agree;
    for (const auto& c : checks) {
        CHECK(c.samples == 20);
        CHECK((c.identity == (c.sample_mismatches == 0)));
        agree[label_str(c.label.sigma, c.label.part, c.label.k)] = c.identity;
    }
    // characterization of the current formulas
    CHECK(agree.at(label_str(Perm::Id, Partition::I0, 0)));
    CHECK(agree.at(label_str(Perm::Swap, Partition::I0, 0)));
    CHECK_FALSE(agree.at(label_str(Perm::Id, Partition::I0, 1)));
    CHECK_FALSE(agree.at(label_str(Perm::Id, Partition::I0I1, 0)));
    CHECK_FALSE(agree.at(label_str(Perm::Id, Partition::I0I1, 2)));
    CHECK_FALSE(agree.at(label_str(Perm::Swap, Partition::I0, 1)));
    // the I0 u I1 k = 0 factors differ by exactly 3 at p = 3
    RatX g = K_p_general(L, Perm::Id, Partition::I0I1, 0), e = K_p_explicit(L, Perm::Id, Partition::I0I1, 0);
    CHECK((e / g).equals(RatX(3)));
}

TEST_CASE("zeta: Gamma factors and xi") {
    CHECK(std::abs(siegel_gamma2(2.0) - kPi / 2) < 1e-13);
    CHECK(std::abs(siegel_gamma2(3.0) - 2.0 * std::sqrt(kPi) * std::tgamma(2.5)) < 1e-12);
    CHECK(chi_V(discriminant_form(lattice_E8()), 7) == 1);
    CHECK(chi_V(A2A2(), 5) == 1);
    CHECK(chi_V(discriminant_form(lattice_A2()), 5) == -1);
    CHECK(xi_stability(4, 3.0, 100, A2A2()) < 1e-4);
}

TEST_CASE("zeta: functional scalar") {
    FQM E8 = discriminant_form(lattice_E8());
    FunctionalScalar f = functional_scalar(12, cd(2.3, 0.1), E8, 200);
    CHECK(f.local.empty());
    CHECK(std::abs(f.value - f.xi) < 1e-15 * std::abs(f.xi));
    FunctionalScalar a = functional_scalar(4, cd(2.3, 0.1), A2A2(), 200);
    CHECK(a.local.size() == 1);
    CHECK(a.local.count(3) == 1);
    CHECK(a.hypotheses_hold);
}

TEST_CASE("zeta: C and K constants") {
    CHECK(std::abs(C_const(12, 0.0) - kPi / 1024) < 1e-15);
    cd s(0.3, 0.7);
    CHECK(std::abs(C_const(12, s) - std::pow(2.0, -10.0 - 2.0 * s) * kPi / (s + 1.0)) < 1e-14);
    FQM E8 = discriminant_form(lattice_E8());
    CHECK(std::abs(K_const(12, s, E8) - minus_one_pow(-s) * C_const(12, s)) < 1e-15);
}

TEST_CASE("zeta: standard zeta") {
    EigenvalueSeries ones;
    for (long d = 1; d <= 20000; ++d) ones[d] = 1.0;
    ZetaValue z = standard_zeta(ones, 2.0);
    CHECK(std::abs(z.value - kPi * kPi / 6) < 1e-4);
    CHECK(std::abs(z.value - std::riemann_zeta(2.0)) < 2 * z.tail_estimate + 1e-12);
    CHECK(standard_zeta(EigenvalueSeries{{1, 1.0}}, 2.0).value == cd(1));
    EigenvalueSeries delta;
    for (long d = 1; d <= 20; ++d) delta[d] = oracle::hecke_delta(d);
    cd s(30, 0), direct = 0;
    for (long d = 20; d >= 1; --d) direct += oracle::hecke_delta(d) * std::pow(static_cast<double>(d), -30.0);
    CHECK(std::abs(standard_zeta(delta, s).value - direct) < 1e-14);
    EigenvalueSeries wild;
    for (long d = 1; d <= 50; ++d) wild[d] = std::pow(static_cast<double>(d), 6.0);
    CHECK_THROWS_AS(standard_zeta(wild, 2.0), DivergenceSuspected);
}

TEST_CASE("zeta: completed zeta is holomorphic in s") {
    EigenvalueSeries delta;
    for (long d = 1; d <= 20; ++d) delta[d] = oracle::hecke_delta(d);
    FQM E8 = discriminant_form(lattice_E8());
    auto f = [&](cd s) { return completed_zeta(delta, 12, s, E8); };
    for (cd s : {cd(10, 0.2), cd(12.5, -1)}) {
        double h = 1e-4;
        cd fx = (f(s + h) - f(s - h)) / (2 * h);
        cd fy = (f(s + cd(0, h)) - f(s - cd(0, h))) / (2 * h);
        CHECK(std::abs(fx + cd(0, 1) * fy) < 1e-6 * std::max(1.0, std::abs(fx)));
    }
}
