#include "oracles.hpp"

#include "weilzeta/errors.hpp"
#include "weilzeta/hecke.hpp"

#include <doctest.h>

using namespace wz;

namespace {

const FQM& trivial() {
    static FQM D = discriminant_form(lattice_E8());
    return D;
}

}  // namespace

TEST_CASE("hecke: tau(n)") {
    auto t = ramanujan_tau(10);
    std::vector<long> want{1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920};
    for (int n = 1; n <= 10; ++n) CHECK(t[n] == want[n - 1]);
    auto o = oracle::tau_coefficients(40);
    auto t40 = ramanujan_tau(40);
    for (int n = 1; n <= 40; ++n) CHECK(t40[n] == o[n]);
    // multiplicativity and the Hecke relation at p = 2
    CHECK(t40[6] == t40[2] * t40[3]);
    CHECK(t40[4] == t40[2] * t40[2] - mpz_class(2048));
}

TEST_CASE("hecke: q-expansion format round trip") {
    QExpansion f = delta_qexpansion(20);
    QExpansion g = parse_qexpansion(format_qexpansion(f));
    REQUIRE(g.dim() == 1);
    CHECK(g.weight == 12);
    CHECK(g.truncation == 20);
    REQUIRE(g.comp[0].size() == f.comp[0].size());
    for (size_t i = 0; i < f.comp[0].size(); ++i) {
        CHECK(g.comp[0][i].n == f.comp[0][i].n);
        CHECK(g.comp[0][i].c == f.comp[0][i].c);
    }
    CHECK_NOTHROW(validate_qexpansion(f, trivial()));
    CHECK_THROWS_AS(parse_qexpansion("weight: 12\n"), ParseError);
    QExpansion bad = parse_qexpansion("module: 1; weight: 12; truncation: 5\nlambda=(0); n=1/2; c=1,0\n");
    CHECK_THROWS_AS(validate_qexpansion(bad, trivial()), ParseError);
    FQM A2 = discriminant_form(lattice_A2());
    CHECK_THROWS_AS(validate_qexpansion(f, A2), ParseError);
}

TEST_CASE("hecke: evaluation") {
    QExpansion f = delta_qexpansion(60);
    for (cd tau : {cd(0, 1), cd(0.5, 1), cd(-0.3, 0.9), cd(0, 2)})
        CHECK(std::abs(eval_form(f, tau)[0] - oracle::delta_eta(tau)) < 1e-10 * std::abs(oracle::delta_eta(tau)));
    QExpansion one = parse_qexpansion("module: 1; weight: 12; truncation: 10\nlambda=(0); n=1; c=1,0\n");
    CHECK(std::abs(eval_form(one, cd(0, 1))[0] - std::exp(-2 * kPi)) < 1e-15);
    QExpansion zero = parse_qexpansion("module: 1; weight: 12; truncation: 10\n");
    CHECK(eval_form(zero, cd(0, 1))[0] == cd(0));
    CHECK_THROWS_AS(eval_form(delta_qexpansion(5), cd(0, 0.05)), TruncationTooCoarse);
    QExpansion h = f.scaled(2.0).plus(f);
    CHECK(std::abs(eval_form(h, cd(0, 1))[0] - 3.0 * eval_form(f, cd(0, 1))[0]) < 1e-15);
}

TEST_CASE("hecke: eigenvalues of Delta") {
    QExpansion f = delta_qexpansion(60);
    for (long d : {2L, 3L}) {
        EigenvalueResult r = eigenvalue(trivial(), f, d);
        double want = oracle::hecke_delta(d);
        CHECK(std::abs(r.lambda - want) < 1e-8 * std::abs(want));
        CHECK(std::abs(oracle::hecke_delta_direct(d, cd(0.1, 1.2)) - want) < 1e-8 * std::abs(want));
        CHECK(r.max_deviation < 1e-8);
    }
    CHECK(std::abs(eigenvalue(trivial(), f, 2).lambda - (-0.609375)) < 1e-10);
    // Hecke operators are linear
    cd z(0.1, 1.1);
    CVec a = hecke_at_point(trivial(), f.scaled(cd(0, 3)), 2, z, HeckeVariant::Dprime);
    CVec b = hecke_at_point(trivial(), f, 2, z, HeckeVariant::Dprime);
    CHECK(std::abs(a[0] - cd(0, 3) * b[0]) < 1e-12 * std::abs(a[0]));
}

TEST_CASE("hecke: non-eigenforms are rejected") {
    // Delta + E_12-like perturbation: add q^2 alone
    QExpansion f = delta_qexpansion(60);
    QExpansion g = parse_qexpansion("module: 1; weight: 12; truncation: 60\nlambda=(0); n=2; c=5,0\n");
    CHECK_THROWS_AS(eigenvalue(trivial(), f.plus(g), 2), NotAnEigenform);
}

TEST_CASE("hecke: quadrature") {
    QuadratureSpec q;
    q.check_stability = false;
    CHECK(quadrature_volume(q) == doctest::Approx(kPi / 3).epsilon(1e-6));
    QExpansion f = delta_qexpansion(60);
    KernelField F = [&](cd t) { return eval_form(f, t); };
    q.check_stability = true;
    cd n = petersson_product(F, F, 12, q);
    CHECK(std::abs(n.imag()) < 1e-15);
    CHECK(n.real() == doctest::Approx(1.0353620568e-6).epsilon(1e-6));
}

TEST_CASE("hecke: relation scalar") {
    FQM A2 = discriminant_form(lattice_A2());
    HeckeScalar h2 = hecke_relation_scalar(A2, 2);
    CHECK(std::abs(h2.g_over_gd.to_cd() - cd(-1)) < 1e-14);
    CHECK(h2.g_over_gd_root_of_unity);
    CHECK(std::abs(h2.kappa.to_cd() - cd(1)) < 1e-14);
    HeckeScalar h3 = hecke_relation_scalar(A2, 3);
    CHECK(std::abs(h3.g_over_gd.to_cd() - cd(0, 1 / std::sqrt(3.0))) < 1e-14);
    CHECK(std::abs(h3.gd_over_g.to_cd() - cd(0, -std::sqrt(3.0))) < 1e-14);
    CHECK(std::abs(h3.kappa.to_cd() - cd(-1)) < 1e-14);
    CHECK_FALSE(h3.g_over_gd_root_of_unity);
    CHECK(h3.kappa_unit);
    HeckeScalar e = hecke_relation_scalar(trivial(), 5);
    CHECK(std::abs(e.g_over_gd.to_cd() - cd(1)) < 1e-14);
}
