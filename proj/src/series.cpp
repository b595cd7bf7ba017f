#include "weilzeta/series.hpp"

#include "weilzeta/errors.hpp"

#include <cmath>
#include <mutex>
#include <numeric>

namespace wz {

void check_weight(const FQM& D, int n, int l) {
    if (l < n + 1) throw WeightParityViolation("weight must satisfy l >= n+1");
    if (((2 * l + D.signature_mod_8()) % 4 + 4) % 4 != 0)
        throw WeightParityViolation("2l + sig(L) must be divisible by 4");
}

bool in_convergence_region(int n, int l, cd s) { return s.real() > (n + 1 - l) / 2.0; }

namespace {

std::array<long, 4> residue_key(const Mat2& g, long N) {
    return {mod_pos(g.a, N), mod_pos(g.b, N), mod_pos(g.c, N), mod_pos(g.d, N)};
}

Mat2 complete_row(long c, long d) {
    long x, y;
    ext_gcd(d, c, x, y);
    return {x, -y, c, d};
}

cd phi_ls(cd w, int l, cd s) { return std::pow(w, -l) * std::exp(-2.0 * s * std::log(std::abs(w))); }

}  // namespace

const CVec& WeilCache1::inverse(const Mat2& g) {
    auto key = residue_key(g, D_.level());
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    CVec v = rho1_matrix(D_, g).adjoint().embed();
    return cache_.emplace(key, std::move(v)).first->second;
}

const CVec& WeilCache1::extended_inverse(const Mat2& delta) {
    std::array<long, 4> key{delta.a, delta.b, delta.c, delta.d};
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = ext_cache_.find(key);
    if (it != ext_cache_.end()) return it->second;
    CVec v = extended_inverse_rho(D_, delta).embed();
    return ext_cache_.emplace(key, std::move(v)).first->second;
}

const WeilCache2::Sparse& WeilCache2::generator_inverse(const Letter& l) {
    GroupWord single(2);
    single.letters.push_back(l);
    std::string key = single.str();
    auto it = gens_.find(key);
    if (it != gens_.end()) return it->second;
    WeilMatrix m = rho_generator(D_, 2, l).adjoint();
    CVec e = m.embed();
    Sparse sp;
    int n = m.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!m.entry_is_zero(i, j)) {
                sp.row.push_back(i);
                sp.col.push_back(j);
                sp.val.push_back(e[static_cast<size_t>(i) * n + j]);
            }
    return gens_.emplace(key, std::move(sp)).first->second;
}

CVec WeilCache2::inverse_e0(const GroupWord& w) {
    int n = dim();
    CVec v(n, 0.0), t(n);
    v[0] = 1.0;
    for (const auto& l : w.letters) {
        const Sparse& sp = generator_inverse(l);
        std::fill(t.begin(), t.end(), cd(0));
        for (size_t k = 0; k < sp.val.size(); ++k) t[sp.row[k]] += sp.val[k] * v[sp.col[k]];
        std::swap(v, t);
    }
    return v;
}

namespace {

std::mutex g1_mutex;
std::map<long, std::shared_ptr<const CosetList>> g1_cache;

std::shared_ptr<const CosetList> cached_genus1(long h) {
    std::lock_guard<std::mutex> lock(g1_mutex);
    auto it = g1_cache.find(h);
    if (it != g1_cache.end()) return it->second;
    auto L = std::make_shared<const CosetList>(genus1_cosets(h));
    g1_cache.emplace(h, L);
    return L;
}

}  // namespace

CVec eisenstein1(WeilCache1& W, int l, cd s, cd tau, long height, bool dual) {
    check_weight(W.module(), 1, l);
    if (tau.imag() <= 0) throw Error("tau must lie in the upper half plane");
    int n = W.dim();
    CVec out(n, 0.0);
    auto L = cached_genus1(height);
    for (const auto& r : L->reps) {
        Mat2 g = mat2_of(r.mat);
        cd j = static_cast<double>(g.c) * tau + static_cast<double>(g.d);
        cd w = phi_ls(j, l, s);
        const CVec& M = W.inverse(g);
        for (int mu = 0; mu < n; ++mu) {
            cd v = M[static_cast<size_t>(mu) * n];
            out[mu] += w * (dual ? std::conj(v) : v);
        }
    }
    cd ys = rpow(tau.imag(), s);
    for (auto& x : out) x *= ys;
    return out;
}

CVec eisenstein1(const FQM& D, int l, cd s, cd tau, long height, bool dual) {
    WeilCache1 W(D);
    return eisenstein1(W, l, s, tau, height, dual);
}

namespace {

std::mutex g2_mutex;
std::map<long, std::shared_ptr<const CosetList>> g2_cache;

std::shared_ptr<const CosetList> cached_genus2(long h) {
    std::lock_guard<std::mutex> lock(g2_mutex);
    auto it = g2_cache.find(h);
    if (it != g2_cache.end()) return it->second;
    auto p = std::make_shared<const CosetList>(genus2_cosets(h));
    g2_cache[h] = p;
    return p;
}

cd det2(cd a, cd b, cd c, cd d) { return a * d - b * c; }

}  // namespace

CVec eisenstein2(const FQM& D, int l, cd s, const Tau2& Z, long height, bool dual) {
    check_weight(D, 2, l);
    double y11 = Z.t11.imag(), y12 = Z.t12.imag(), y22 = Z.t22.imag();
    double detY = y11 * y22 - y12 * y12;
    if (y11 <= 0 || detY <= 0) throw Error("Z must lie in the Siegel upper half space");
    auto L = cached_genus2(height);
    WeilCache2 W(D);
    int n = W.dim();
    CVec out(n, 0.0);
    bool trivial = D.order() == 1;
    for (const auto& r : L->reps) {
        const IMat& g = r.mat;
        // C Z + D
        cd m11 = static_cast<double>(g[2][0]) * Z.t11 + static_cast<double>(g[2][1]) * Z.t12 + static_cast<double>(g[2][2]);
        cd m12 = static_cast<double>(g[2][0]) * Z.t12 + static_cast<double>(g[2][1]) * Z.t22 + static_cast<double>(g[2][3]);
        cd m21 = static_cast<double>(g[3][0]) * Z.t11 + static_cast<double>(g[3][1]) * Z.t12 + static_cast<double>(g[3][2]);
        cd m22 = static_cast<double>(g[3][0]) * Z.t12 + static_cast<double>(g[3][1]) * Z.t22 + static_cast<double>(g[3][3]);
        cd w = phi_ls(det2(m11, m12, m21, m22), l, s);
        if (trivial) {
            out[0] += w;
            continue;
        }
        CVec v = W.inverse_e0(r.word);
        for (int k = 0; k < n; ++k) out[k] += w * (dual ? std::conj(v[k]) : v[k]);
    }
    cd ys = rpow(detY, s);
    for (auto& x : out) x *= ys;
    return out;
}

CVec eisenstein(const FQM& D, int n, int l, cd s, const Tau2& Z, long height, bool dual) {
    if (n == 1) return eisenstein1(D, l, s, Z.t11, height, dual);
    if (n == 2) return eisenstein2(D, l, s, Z, height, dual);
    throw Error("genus must be 1 or 2");
}

CVec eisenstein_negarg(const FQM& D, int n, int l, cd s, const Tau2& Z, long height, NegVariant v, bool dual) {
    // ((-1)^n)^s with (-1)^n real: 1 for even n
    cd factor = n % 2 == 0 ? cd(1.0) : minus_one_pow(s);
    Tau2 arg = Z;
    if (v == NegVariant::Conj) arg = {-std::conj(Z.t11), -std::conj(Z.t12), -std::conj(Z.t22)};
    CVec e = eisenstein(D, n, l, s, arg, height, !dual);
    for (auto& x : e) x *= factor;
    return e;
}

cd mobius(const Mat2& g, cd z) {
    return (static_cast<double>(g.a) * z + static_cast<double>(g.b)) /
           (static_cast<double>(g.c) * z + static_cast<double>(g.d));
}

Mat2 reduce_to_fundamental_domain(cd z, cd* gz) {
    if (z.imag() <= 0) throw Error("point must lie in the upper half plane");
    Mat2 g;
    for (int it = 0; it < 10000; ++it) {
        long n = std::lround(z.real());
        if (n != 0) {
            z -= static_cast<double>(n);
            g = Mat2::T(-n) * g;
        }
        if (std::norm(z) < 1.0 - 1e-14) {
            z = -1.0 / z;
            g = Mat2::S() * g;
        } else {
            break;
        }
    }
    if (gz) *gz = z;
    return g;
}

namespace {

CVec poincare_generic(WeilCache1& W, int l, cd s, cd tau, cd zeta, const PoincareTrunc& tr, double zsign) {
    const FQM& D = W.module();
    int n = W.dim();
    std::vector<double> q(n);
    for (int k = 0; k < n; ++k) q[k] = mpq_class(D.q(k)).get_d();
    CVec out(static_cast<size_t>(n) * n, 0.0);
    cd target = -zsign * zeta;  // terms phi(gamma tau + m - target)
    double imz = std::abs(zeta.imag());
    auto add_gamma = [&](const Mat2& g0, bool translate) {
        cd j = static_cast<double>(g0.c) * tau + static_cast<double>(g0.d);
        cd z0 = mobius(g0, tau);
        double imfac = std::abs(z0.imag()) * imz;
        cd pref = std::pow(j, -l) * rpow(imfac, s);
        long n0 = translate ? std::lround((target - z0).real()) : 0;
        long W0 = translate ? tr.window : 0;
        CVec A(n, 0.0);
        for (long m = n0 - W0; m <= n0 + W0; ++m) {
            cd w = z0 + static_cast<double>(m) - target;
            if (std::abs(w) < 1e-9) throw PoleProximity("gamma tau meets the pole locus");
            cd t = pref * phi_ls(w, l, s);
            for (int lam = 0; lam < n; ++lam) A[lam] += t * e_of(-static_cast<double>(m) * q[lam]);
        }
        const CVec& M = W.inverse(g0);
        for (int mu = 0; mu < n; ++mu)
            for (int lam = 0; lam < n; ++lam)
                out[static_cast<size_t>(mu) * n + lam] += M[static_cast<size_t>(mu) * n + lam] * A[lam];
    };
    if (tr.height == 0) {
        add_gamma(Mat2::identity(), false);
        add_gamma(-Mat2::identity(), false);
        return out;
    }
    long h = tr.height;
    for (long c = -h; c <= h; ++c)
        for (long d = -h; d <= h; ++d) {
            if (std::gcd(c, d) != 1) continue;
            add_gamma(complete_row(c, d), true);
        }
    return out;
}

}  // namespace

CVec poincare_plus(WeilCache1& W, int l, cd s, cd tau, cd zeta, const PoincareTrunc& tr) {
    if ((tau.imag() > 0) == (zeta.imag() > 0) && std::abs(tau - zeta) < 1e-9)
        throw PoleProximity("tau and zeta coincide in the same half plane");
    // terms phi(gamma tau - zeta)
    return poincare_generic(W, l, s, tau, zeta, tr, -1.0);
}

CVec poincare_plus(const FQM& D, int l, cd s, cd tau, cd zeta, const PoincareTrunc& tr) {
    WeilCache1 W(D);
    return poincare_plus(W, l, s, tau, zeta, tr);
}

CVec poincare(WeilCache1& W, int l, cd s, cd tau, cd zeta, const PoincareTrunc& tr) {
    // terms phi(gamma tau + zeta)
    return poincare_generic(W, l, s, tau, zeta, tr, 1.0);
}

CVec script_P_plus(WeilCache1& W, int l, cd s, cd tau, cd zeta, long d, const PoincareTrunc& tr, bool reduce) {
    const FQM& D = W.module();
    int n = W.dim();
    CVec out(static_cast<size_t>(n) * n, 0.0);
    cd ratio = gauss_ratio(D, d).to_cd();
    CosetList R = hecke_right_cosets(d, Variant::D);
    bool lower = zeta.imag() < 0;
    for (const auto& r : R.reps) {
        Mat2 delta = mat2_of(r.mat);
        if (reduce && !lower) {
            Mat2 g = reduce_to_fundamental_domain(mobius(delta, zeta));
            delta = g * delta;
        }
        cd jR = (static_cast<double>(delta.c) * zeta + static_cast<double>(delta.d)) / static_cast<double>(d);
        cd Rz = mobius(delta, zeta);
        CVec P = poincare_plus(W, l, s, tau, Rz, tr);
        const CVec& E = W.extended_inverse(delta);
        cd jl = std::pow(jR, -l) * std::conj(ratio);
        for (int mu = 0; mu < n; ++mu)
            for (int nu = 0; nu < n; ++nu) {
                cd acc = 0;
                for (int lam = 0; lam < n; ++lam)
                    acc += std::conj(E[static_cast<size_t>(nu) * n + lam]) * P[static_cast<size_t>(mu) * n + lam];
                out[static_cast<size_t>(mu) * n + nu] += jl * acc;
            }
    }
    return out;
}

PullbackResult pullback(const FQM& D, int l, cd s, cd tau, cd zeta, long dmax, const PullbackTrunc& tr) {
    check_weight(D, 2, l);
    if (l % 2 != 0) throw WeightParityViolation("pullback requires even weight");
    PullbackResult res;
    res.lhs = eisenstein2(D, l, s, Tau2::diag(tau, zeta), tr.g2_height, true);
    CVec a = eisenstein1(D, l, s, tau, tr.g1_height, true);
    CVec b = eisenstein1(D, l, s, zeta, tr.g1_height, true);
    int n = static_cast<int>(D.order());
    res.tensor_term.assign(static_cast<size_t>(n) * n, 0.0);
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) res.tensor_term[static_cast<size_t>(mu) * n + nu] = a[mu] * b[nu];
    res.correction.assign(static_cast<size_t>(n) * n, 0.0);
    WeilCache1 W(D);
    cd pref = e_of(D.signature_mod_8() / 8.0) / std::sqrt(static_cast<double>(D.order()));
    for (long d = 1; d <= dmax; ++d) {
        cd c = pref * gauss_ratio(D, d).to_cd() * rpow(static_cast<double>(d), -static_cast<double>(l) - 2.0 * s);
        CVec P = script_P_plus(W, l, s, -tau, zeta, d, tr.p);
        for (size_t k = 0; k < P.size(); ++k) res.correction[k] += c * P[k];
    }
    res.rhs = res.tensor_term;
    for (size_t k = 0; k < res.rhs.size(); ++k) res.rhs[k] += res.correction[k];
    res.residual = max_abs_diff(res.lhs, res.rhs);
    return res;
}

double pullback_residual(const FQM& D, int l, cd s, cd tau, cd zeta, long dmax, const PullbackTrunc& tr) {
    return pullback(D, l, s, tau, zeta, dmax, tr).residual;
}

double max_abs_diff(const CVec& a, const CVec& b) {
    if (a.size() != b.size()) throw Error("vector size mismatch");
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs(const CVec& a) {
    double m = 0;
    for (const auto& x : a) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace wz
