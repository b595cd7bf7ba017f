#include "weilzeta/cosets.hpp"

#include "weilzeta/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace wz {

std::string kind_name(CosetKind k) {
    switch (k) {
        case CosetKind::Genus1Borel: return "genus1-borel";
        case CosetKind::Genus2Klingen0: return "genus2-klingen0";
        case CosetKind::HeckeRight: return "hecke-right";
        case CosetKind::Gamma1d: return "gamma1d";
        case CosetKind::GammaAntiDiag: return "gamma-antidiag";
        case CosetKind::Garrett: return "garrett";
    }
    return "?";
}

namespace {

Mat2 complete_bottom_row(long c, long d) {
    long x, y;
    long g = ext_gcd(d, c, x, y);
    if (g != 1) throw Error("bottom row is not coprime");
    // x*d + y*c = 1
    return {x, -y, c, d};
}

IMat sub2(const IMat& g, int r, int c) { return {{g[r][c], g[r][c + 1]}, {g[r + 1][c], g[r + 1][c + 1]}}; }

bool is_zero2(const IMat& m) { return m[0][0] == 0 && m[0][1] == 0 && m[1][0] == 0 && m[1][1] == 0; }

}  // namespace

IMat embed_up(const Mat2& g) { return block4({g.a, 0, 0, 1}, {g.b, 0, 0, 0}, {g.c, 0, 0, 0}, {g.d, 0, 0, 1}); }
IMat embed_down(const Mat2& g) { return block4({1, 0, 0, g.a}, {0, 0, 0, g.b}, {0, 0, 0, g.c}, {1, 0, 0, g.d}); }

CosetList genus1_cosets(long height) {
    if (height < 1) throw Error("genus1_cosets requires height >= 1");
    CosetList L{CosetKind::Genus1Borel, height, {}};
    for (long c = 0; c <= height; ++c)
        for (long d = -height; d <= height; ++d) {
            if (std::gcd(c, d) != 1) continue;
            if (c == 0 && d != 1) continue;
            Mat2 g = complete_bottom_row(c, d);
            CosetRep r;
            r.mat = imat_of(g);
            r.word = sl2_word(g);
            r.has_word = true;
            L.reps.push_back(r);
        }
    std::sort(L.reps.begin(), L.reps.end(), [](const CosetRep& x, const CosetRep& y) { return x.mat < y.mat; });
    return L;
}

IMat klingen_key(const IMat& g) {
    IMat B = {{g[2][0], g[2][1], g[2][2], g[2][3]}, {g[3][0], g[3][1], g[3][2], g[3][3]}};
    return row_hnf(B);
}

GroupWord genus2_reducing_word(const IMat& C0, const IMat& D0) {
    IMat B = {{C0[0][0], C0[0][1], D0[0][0], D0[0][1]}, {C0[1][0], C0[1][1], D0[1][0], D0[1][1]}};
    GroupWord w(2);
    auto apply = [&](const GroupWord& piece) {
        B = imat_mul(B, piece.matrix());
        w.append(piece);
    };
    IMat E11 = {{1, 0}, {0, 0}};
    GroupWord Sup(2);
    Sup.append(U2_word(E11)).T({{-1, 0}, {0, 0}}).append(U2_word(E11));
    for (int iter = 0; iter < 10000; ++iter) {
        IMat C = {{B[0][0], B[0][1]}, {B[1][0], B[1][1]}};
        if (is_zero2(C)) return w;
        ZMat Cz = {{C[0][0], C[0][1]}, {C[1][0], C[1][1]}};
        SmithForm sf = smith_normal_form(Cz);
        IMat U = {{sf.U[0][0].get_si(), sf.U[0][1].get_si()}, {sf.U[1][0].get_si(), sf.U[1][1].get_si()}};
        IMat V = {{sf.V[0][0].get_si(), sf.V[0][1].get_si()}, {sf.V[1][0].get_si(), sf.V[1][1].get_si()}};
        B = imat_mul(U, B);  // left GL_2 action stays inside the coset
        GroupWord mv(2);
        mv.M(V);
        apply(mv);
        long e1 = B[0][0];
        long q = e1 > 0 ? (B[0][2] - mod_pos(B[0][2], e1)) / e1 : 0;
        if (q != 0) {
            GroupWord t(2);
            t.T({{-q, 0}, {0, 0}});
            apply(t);
        }
        apply(Sup);
    }
    throw Error("genus-2 coset reduction did not terminate");
}

CosetList genus2_cosets(long height) {
    if (height < 0) throw Error("genus2_cosets requires height >= 0");
    CosetList L{CosetKind::Genus2Klingen0, height, {}};
    std::set<IMat> keys;
    long h = height, hd = std::max(height, 1L);
    for (long c11 = -h; c11 <= h; ++c11)
        for (long c12 = -h; c12 <= h; ++c12)
            for (long c21 = -h; c21 <= h; ++c21)
                for (long c22 = -h; c22 <= h; ++c22)
                    for (long d11 = -hd; d11 <= hd; ++d11)
                        for (long d12 = -hd; d12 <= hd; ++d12)
                            for (long d21 = -hd; d21 <= hd; ++d21)
                                for (long d22 = -hd; d22 <= hd; ++d22) {
                                    if (c11 * d21 + c12 * d22 != c21 * d11 + c22 * d12) continue;
                                    long r1[4] = {c11, c12, d11, d12}, r2[4] = {c21, c22, d21, d22};
                                    long g = 0;
                                    for (int i = 0; i < 4 && g != 1; ++i)
                                        for (int j = i + 1; j < 4; ++j) g = std::gcd(g, r1[i] * r2[j] - r1[j] * r2[i]);
                                    if (g != 1) continue;
                                    keys.insert(row_hnf({{c11, c12, d11, d12}, {c21, c22, d21, d22}}));
                                }
    for (const auto& key : keys) {
        GroupWord red = genus2_reducing_word(sub2(key, 0, 0), sub2(key, 0, 2));
        CosetRep r;
        r.word = red.inverse();
        r.has_word = true;
        r.mat = r.word.matrix();
        if (klingen_key(r.mat) != key) throw Error("genus-2 representative does not reproduce its class");
        L.reps.push_back(r);
    }
    return L;
}

CosetList hecke_right_cosets(long d, Variant v) {
    if (d < 1) throw Error("hecke_right_cosets requires d >= 1");
    CosetList L{CosetKind::HeckeRight, d, {}};
    long n = d * d;
    for (long a = 1; a <= n; ++a) {
        if (n % a) continue;
        long c = n / a;
        for (long b = 0; b < c; ++b) {
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            CosetRep r;
            r.mat = {{a, b}, {0, c}};
            r.denom = (v == Variant::D) ? d : 1;
            L.reps.push_back(r);
        }
    }
    return L;
}

namespace {

// classes of P^1(Z/N) as normalised pairs
std::vector<std::pair<long, long>> projective_line(long N) {
    std::set<std::pair<long, long>> seen;
    std::vector<std::pair<long, long>> out;
    std::vector<long> units;
    for (long u = 1; u <= N; ++u)
        if (std::gcd(u, N) == 1) units.push_back(u % N);
    for (long c = 0; c < N; ++c)
        for (long d = 0; d < N; ++d) {
            if (std::gcd(std::gcd(c, d), N) != 1) continue;
            std::pair<long, long> best{N, N};
            for (long u : units) best = std::min(best, std::make_pair(u * c % N, u * d % N));
            if (seen.insert(best).second) out.push_back(best);
        }
    if (N == 1) out = {{0, 0}};
    return out;
}

Mat2 lift_bottom_row(long c, long d, long N) {
    if (N == 1) return Mat2::identity();
    if (c == 0) c = N;
    for (long k = 0;; ++k) {
        long dd = d + k * N;
        if (std::gcd(c, dd) == 1) return complete_bottom_row(c, dd);
    }
}

}  // namespace

CosetList gamma1d_cosets(long d) {
    if (d < 1) throw Error("gamma1d_cosets requires d >= 1");
    CosetList L{CosetKind::Gamma1d, d, {}};
    long N = d * d;
    for (auto [c, dd] : projective_line(N)) {
        Mat2 g = lift_bottom_row(c, dd, N);
        CosetRep r;
        r.mat = imat_of(g);
        r.word = sl2_word(g);
        r.has_word = true;
        L.reps.push_back(r);
    }
    return L;
}

Mat2 involution_ell(const Mat2& g) {
    if (g.det() != 1) throw NotUnimodular(g.str());
    Mat2 left{0, 1, -1, 0}, right{0, -1, 1, 0};
    return left * g.inv_unimodular() * right;
}

Mat2 ell_right(const Mat2& g) { return involution_ell(g.inv_unimodular()); }

CosetList gamma_antidiag_cosets(long d) {
    CosetList src = gamma1d_cosets(d);
    CosetList L{CosetKind::GammaAntiDiag, d, {}};
    for (const auto& r : src.reps) {
        Mat2 g = ell_right(mat2_of(r.mat));
        CosetRep o;
        o.mat = imat_of(g);
        o.word = sl2_word(g);
        o.has_word = true;
        L.reps.push_back(o);
    }
    return L;
}

CosetList garrett_reps(long d, long g_height) {
    if (d < 0) throw Error("garrett_reps requires d >= 0");
    if (g_height < 1) throw Error("garrett_reps requires g_height >= 1");
    CosetList L{CosetKind::Garrett, g_height, {}};
    if (d == 0) {
        CosetList G = genus1_cosets(g_height);
        for (const auto& g : G.reps)
            for (const auto& h : G.reps) {
                CosetRep r;
                r.mat = imat_mul(embed_up(mat2_of(g.mat)), embed_down(mat2_of(h.mat)));
                r.word = up_word(g.word);
                r.word.append(down_word(h.word));
                r.has_word = true;
                L.reps.push_back(r);
            }
        return L;
    }
    IMat B = {{0, d}, {d, 0}};
    GroupWord u = U2_word(B);
    IMat umat = u.matrix();
    CosetList Ms = gamma_antidiag_cosets(d);
    long h = g_height;
    for (long a = -h; a <= h; ++a)
        for (long b = -h; b <= h; ++b)
            for (long c = -h; c <= h; ++c)
                for (long e = -h; e <= h; ++e) {
                    if (a * e - b * c != 1) continue;
                    Mat2 gam{a, b, c, e};
                    GroupWord gw = up_word(sl2_word(gam));
                    for (const auto& M : Ms.reps) {
                        CosetRep r;
                        r.mat = imat_mul(imat_mul(umat, embed_up(gam)), embed_down(mat2_of(M.mat)));
                        r.word = u;
                        r.word.append(gw).append(down_word(M.word));
                        r.has_word = true;
                        L.reps.push_back(r);
                    }
                }
    return L;
}

bool in_gamma_n0(const IMat& g) {
    int n = static_cast<int>(g.size()) / 2;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g[n + i][j] != 0) return false;
    return true;
}

bool in_gamma1d(const Mat2& g, long d) { return g.det() == 1 && g.c % (d * d) == 0; }
bool in_gamma_antidiag(const Mat2& g, long d) { return g.det() == 1 && g.b % (d * d) == 0; }

long count_equivalent_pairs(const CosetList& L, long d) {
    long bad = 0;
    size_t n = L.reps.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            const IMat& x = L.reps[i].mat;
            const IMat& y = L.reps[j].mat;
            bool eq = false;
            switch (L.kind) {
                case CosetKind::Genus1Borel:
                case CosetKind::Genus2Klingen0:
                case CosetKind::Garrett:
                    eq = in_gamma_n0(imat_mul(x, x.size() == 2 ? imat_of(mat2_of(y).inv_unimodular())
                                                               : imat_inverse_symplectic(y)));
                    break;
                case CosetKind::Gamma1d:
                    eq = in_gamma1d(mat2_of(x) * mat2_of(y).inv_unimodular(), d);
                    break;
                case CosetKind::GammaAntiDiag:
                    eq = in_gamma_antidiag(mat2_of(x) * mat2_of(y).inv_unimodular(), d);
                    break;
                case CosetKind::HeckeRight: {
                    // x y^{-1} integral with determinant 1
                    Mat2 X = mat2_of(x), Y = mat2_of(y);
                    Mat2 adj{Y.d, -Y.b, -Y.c, Y.a};
                    Mat2 P = X * adj;
                    long det = Y.det();
                    eq = P.a % det == 0 && P.b % det == 0 && P.c % det == 0 && P.d % det == 0;
                    break;
                }
            }
            if (eq) ++bad;
        }
    return bad;
}

}  // namespace wz
