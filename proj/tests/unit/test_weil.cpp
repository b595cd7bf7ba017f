#include "oracles.hpp"

#include "weilzeta/errors.hpp"
#include "weilzeta/weil.hpp"

#include <doctest.h>

#include <random>

using namespace wz;

namespace {

GroupWord random_word(std::mt19937& rng, int genus, int len) {
    GroupWord w(genus);
    std::uniform_int_distribution<int> pick(0, 3), b(-3, 3);
    for (int i = 0; i < len; ++i) {
        switch (pick(rng)) {
            case 0: w.S(); break;
            case 1: w.Sinv(); break;
            case 2:
                if (genus == 1) {
                    w.T(b(rng));
                } else {
                    long x = b(rng), y = b(rng), z = b(rng);
                    w.T(IMat{{x, y}, {y, z}});
                }
                break;
            default:
                if (genus == 1)
                    w.M(IMat{{-1}});
                else
                    w.M(IMat{{1, b(rng)}, {0, 1}});
        }
    }
    return w;
}

Mat2 random_sl2(std::mt19937& rng) {
    std::uniform_int_distribution<int> b(-4, 4);
    Mat2 g;
    for (int i = 0; i < 6; ++i) g = g * (i % 2 ? Mat2::T(b(rng)) : Mat2::S());
    return g;
}

std::vector<std::vector<long>> small(const EvenLattice& L) {
    std::vector<std::vector<long>> G(L.rank(), std::vector<long>(L.rank()));
    for (int i = 0; i < L.rank(); ++i)
        for (int j = 0; j < L.rank(); ++j) G[i][j] = L.gram[i][j].get_si();
    return G;
}

const FQM& A2() {
    static FQM D = discriminant_form(lattice_A2());
    return D;
}

}  // namespace

TEST_CASE("weil: generator examples") {
    WeilMatrix T = rho_word(A2(), parse_word(1, "T"));
    CHECK(T.entry(0, 0) == CycloNum(1));
    CHECK(T.entry(1, 1) == root_of_unity(1, 3));
    CHECK(T.entry(2, 2) == root_of_unity(1, 3));
    CHECK(T.entry(0, 1).is_zero());
    FQM E8 = discriminant_form(lattice_E8());
    CHECK(rho_word(E8, parse_word(1, "S")).entry(0, 0) == CycloNum(1));
    WeilMatrix S = rho_word(A2(), parse_word(1, "S"));
    for (int mu = 0; mu < 3; ++mu)
        for (int la = 0; la < 3; ++la) {
            oracle::cd want = oracle::e(-0.25) / std::sqrt(3.0) * oracle::e(-2.0 * mu * la / 3.0);
            CHECK(std::abs(S.entry_cd(mu, la) - want) < 1e-14);
        }
}

TEST_CASE("weil: trace of S T^k matches the brute-force Gauss sum oracle") {
    for (const auto& L : {lattice_A2(), lattice_diag22(), lattice_A2A2(), parse_gram("2\n4 1\n1 6\n")}) {
        FQM D = discriminant_form(L);
        auto B = oracle::brute_discriminant(small(L), std::abs(zmat_det(L.gram).get_si()));
        for (long k = 0; k <= 5; ++k) {
            WeilMatrix m = rho_word(D, parse_word(1, "S,T(" + std::to_string(k) + ")"));
            oracle::cd tr = 0;
            for (int i = 0; i < m.dim(); ++i) tr += m.entry_cd(i, i);
            CHECK(std::abs(tr - oracle::trace_S_Tk(B, D.signature_mod_8(), k)) < 1e-12);
        }
    }
}

TEST_CASE("weil: words and relations") {
    const FQM& D = A2();
    CHECK(rho_word(D, GroupWord(1)).is_identity());
    CHECK(rho_word(D, parse_word(1, "S,S")) == rho_word(D, parse_word(1, "m(a=[[-1]])")));
    CHECK(rho_word(D, parse_word(1, "S,T,S,T,S,T")) == rho_word(D, parse_word(1, "S,S")));
    CHECK(rho1_matrix(D, Mat2::identity()).is_identity());
    CHECK(rho1_matrix(D, Mat2{1, 0, 1, 1}) == rho_word(D, parse_word(1, "S,T(-1),Sinv")));
    CHECK(rho1_matrix(D, Mat2::S()) == rho_word(D, parse_word(1, "S")));
    CHECK_THROWS_AS(rho1_matrix(D, Mat2{2, 0, 0, 1}), NotUnimodular);
    CHECK_THROWS_AS(rho_word(D, parse_word(2, "m(a=[[2,0],[0,1]])")), NonUnimodular);
    CHECK_THROWS_AS(parse_word(1, "Q"), ParseError);
}

TEST_CASE("weil: unitarity, dual and tilde on random words") {
    std::mt19937 rng(11);
    for (const auto& L : {lattice_A2(), lattice_diag22(), lattice_A2A2()}) {
        FQM D = discriminant_form(L);
        for (int genus : {1, 2}) {
            int trials = genus == 2 && D.order() > 4 ? 3 : 15;
            for (int t = 0; t < trials; ++t) {
                GroupWord w = random_word(rng, genus, 8);
                WeilMatrix m = rho_word(D, w);
                CHECK((m * dual(m).transpose()).is_identity());
                CHECK(dual(m) == m.conj());
                CHECK(conjugation_tilde(D, w) == dual(m));
                CHECK((m * rho_word(D, w.inverse())).is_identity());
            }
        }
    }
}

TEST_CASE("weil: word independence against the integer matrix") {
    std::mt19937 rng(5);
    const FQM& D = A2();
    for (int t = 0; t < 30; ++t) {
        GroupWord w = random_word(rng, 1, 10);
        Mat2 g = mat2_of(w.matrix());
        CHECK(rho1_matrix(D, g) == rho_word(D, w));
        CHECK(rho_word(D, sl2_word(g)) == rho_word(D, w));
    }
}

TEST_CASE("weil: trivial on the principal congruence subgroup") {
    std::mt19937 rng(3);
    for (const auto& L : {lattice_A2(), lattice_diag22()}) {
        FQM D = discriminant_form(L);
        long N = D.level();
        for (int t = 0; t < 10; ++t) {
            Mat2 g = random_sl2(rng);
            Mat2 h = g * Mat2{1, N, 0, 1} * g.inv_unimodular();
            Mat2 k = g * Mat2{1, 0, N, 1} * g.inv_unimodular();
            CHECK(rho1_matrix(D, h).is_identity());
            CHECK(rho1_matrix(D, k).is_identity());
        }
    }
}

TEST_CASE("weil: genus-2 relations and embeddings") {
    const FQM& D = A2();
    WeilMatrix S1 = rho_word(D, parse_word(1, "S")), T1 = rho_word(D, parse_word(1, "T"));
    WeilMatrix I = WeilMatrix::identity(3);
    CHECK(rho_word(D, parse_word(2, "S")) == kron(S1, S1));
    CHECK(rho_word(D, parse_word(2, "T(b=[[2,0],[0,-1]])")) ==
          kron(rho_word(D, parse_word(1, "T(2)")), rho_word(D, parse_word(1, "T(-1)"))));
    CHECK(rho2_embed(D, Mat2::S(), Direction::Up) == kron(S1, I));
    CHECK(rho2_embed(D, Mat2::T(), Direction::Down) == kron(I, T1));
    CHECK(rho_word(D, parse_word(2, "T(b=[[0,0],[0,1]])")) == kron(I, T1));
    GroupWord dec(2);
    IMat b{{1, 0}, {0, 0}}, mb{{-1, 0}, {0, 0}};
    dec.append(U2_word(b)).T(mb).append(U2_word(b));
    CHECK(rho_word(D, dec) == kron(S1, I));
    for (const Mat2& g : {Mat2::S(), Mat2::T(), Mat2::S() * Mat2::T(-1) * Mat2::S()}) {
        CHECK(rho_word(D, up_word(sl2_word(g))) == rho2_embed(D, g, Direction::Up));
        CHECK(rho_word(D, down_word(sl2_word(g))) == rho2_embed(D, g, Direction::Down));
    }
    FQM E8 = discriminant_form(lattice_E8());
    CHECK(rho2_embed(E8, Mat2::S(), Direction::Up).is_identity());
}

TEST_CASE("weil: closed form of U_2") {
    const FQM& D = A2();
    FQM E8 = discriminant_form(lattice_E8());
    CHECK(rho2_U2_offdiag(E8, 4, true).is_identity());
    for (long d : {1L, 2L, 3L, 4L}) {
        WeilMatrix word = rho_word(D, U2_word(IMat{{0, d}, {d, 0}}));
        CHECK(rho2_U2_offdiag(D, d, true) == word.adjoint());
        CHECK(rho2_U2_offdiag(D, d, false) == word);
    }
    CHECK(rho2_U2_offdiag(D, 3, true).is_identity());
    // column (0, 0) for d = 1 is (1/3) sum e((mu, -nu)) e_mu (x) e_nu
    WeilMatrix u = rho2_U2_offdiag(D, 1, true);
    for (int mu = 0; mu < 3; ++mu)
        for (int nu = 0; nu < 3; ++nu) {
            oracle::cd want = oracle::e(-2.0 * mu * nu / 3.0) / 3.0;
            CHECK(std::abs(u.entry_cd(mu * 3 + nu, 0) - want) < 1e-14);
        }
}

TEST_CASE("weil: dual examples") {
    const FQM& D = A2();
    CHECK(dual(WeilMatrix::identity(3)).is_identity());
    WeilMatrix T = dual(rho_word(D, parse_word(1, "T")));
    CHECK(T.entry(1, 1) == root_of_unity(-1, 3));
    WeilMatrix S = rho_word(D, parse_word(1, "S"));
    CHECK((dual(S).transpose() * S).is_identity());
    CHECK(rho_word(D, parse_word(1, "Sinv")) == dual(S));
}

TEST_CASE("weil: Gauss sum scaling identity and extended action") {
    const FQM& D = A2();
    for (auto [a, d] : std::vector<std::pair<long, long>>{{-1, -1}, {1, 1}}) {
        std::string w = "S,T(" + std::to_string(d) + "),Sinv,T(" + std::to_string(a) + "),S,T(" + std::to_string(d) + ")";
        CHECK(rho_word(D, parse_word(1, w)) == scaling_map(D, d).scaled(gauss_ratio(D, d)));
    }
    CHECK(gauss_ratio(D, 2) == CycloNum(-1));
    CHECK(gauss_ratio(D, 3) == CycloNum(-3) * root_of_unity(1, 4) / sqrt_of_integer(3));
    CHECK(extended_action(D, 1, GroupWord(1), GroupWord(1), Variant::Dprime).is_identity());
    WeilMatrix c = extended_action(D, 3, GroupWord(1), GroupWord(1), Variant::Dprime);
    for (int la = 0; la < 3; ++la) {
        CHECK(c.entry(0, la) == CycloNum(1));
        CHECK(c.entry(1, la).is_zero());
    }
    CHECK(extended_action(D, 2, GroupWord(1), GroupWord(1), Variant::D) ==
          extended_action(D, 2, GroupWord(1), GroupWord(1), Variant::Dprime).scaled(gauss_ratio(D, 2)));
}

TEST_CASE("weil: extended action is independent of the factorization") {
    std::mt19937 rng(17);
    const FQM& D = A2();
    long d = 3;
    Mat2 Dp{d * d, 0, 0, 1};
    for (int t = 0; t < 5; ++t) {
        Mat2 g = random_sl2(rng), h = random_sl2(rng);
        Mat2 delta = g * Dp * h;
        WeilMatrix ref = extended_action(D, d, sl2_word(g), sl2_word(h), Variant::Dprime);
        CHECK(extended_inverse_rho(D, delta) == ref);
        std::uniform_int_distribution<int> k(-3, 3);
        for (int f = 0; f < 10; ++f) {
            long x = k(rng), y = k(rng);
            // T^{d^2 x} D' = D' T^x and L(y) D' = D' L(y d^2)
            Mat2 g2 = g * Mat2::T(d * d * x) * Mat2{1, 0, y, 1};
            Mat2 h2 = Mat2{1, 0, -y * d * d, 1} * Mat2::T(-x) * h;
            REQUIRE(g2 * Dp * h2 == delta);
            CHECK(extended_action(D, d, sl2_word(g2), sl2_word(h2), Variant::Dprime) == ref);
        }
    }
}
