#include "weilzeta/zeta.hpp"

#include "weilzeta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace wz {

namespace {

PolyQ xpow(int e) { return PolyQ::monomial(1, e); }

mpq_class qpow(const mpq_class& b, long e) {
    mpq_class r = 1;
    mpq_class base = e >= 0 ? b : mpq_class(1) / b;
    for (long i = 0; i < std::labs(e); ++i) r *= base;
    return r;
}

mpq_class ppow(long p, long e) { return qpow(mpq_class(p), e); }

long to_long(const mpq_class& x, const char* what) {
    if (x.get_den() != 1) throw Error(std::string(what) + " is not integral");
    return x.get_num().get_si();
}

}  // namespace

RatX RatX::monomial(const mpq_class& c, int e) {
    RatX r;
    r.num_ = PolyQ::constant(c);
    r.shift_ = c == 0 ? 0 : e;
    return r;
}

RatX RatX::local_zeta(long p, int a, const mpq_class& b) {
    mpq_class c = qpow(mpq_class(p), -to_long(b, "local zeta shift"));
    RatX r;
    if (a >= 0) {
        r.num_ = PolyQ::constant(1);
        r.den_ = PolyQ::constant(1) - PolyQ::monomial(c, a);
    } else {
        r.num_ = PolyQ::constant(1);
        r.shift_ = -a;
        r.den_ = PolyQ::monomial(1, -a) - PolyQ::constant(c);
    }
    return r;
}

RatX RatX::operator+(const RatX& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    int m = std::min(shift_, o.shift_);
    RatX r;
    r.shift_ = m;
    r.num_ = xpow(shift_ - m) * num_ * o.den_ + xpow(o.shift_ - m) * o.num_ * den_;
    r.den_ = den_ * o.den_;
    if (r.num_.is_zero()) r.shift_ = 0;
    return r;
}

RatX RatX::operator-(const RatX& o) const { return *this + o * RatX(mpq_class(-1)); }

RatX RatX::operator*(const RatX& o) const {
    RatX r;
    r.num_ = num_ * o.num_;
    r.den_ = den_ * o.den_;
    r.shift_ = r.num_.is_zero() ? 0 : shift_ + o.shift_;
    return r;
}

RatX RatX::operator/(const RatX& o) const {
    if (o.is_zero()) throw DivisionByZero("rational function division by zero");
    RatX r;
    r.num_ = num_ * o.den_;
    r.den_ = den_ * o.num_;
    r.shift_ = r.num_.is_zero() ? 0 : shift_ - o.shift_;
    return r;
}

bool RatX::equals(const RatX& o) const {
    if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
    int m = std::min(shift_, o.shift_);
    return xpow(shift_ - m) * num_ * o.den_ == xpow(o.shift_ - m) * o.num_ * den_;
}

namespace {

cd eval_poly(const PolyQ& f, cd X) {
    cd acc = 0;
    const auto& c = f.coeffs();
    for (size_t i = c.size(); i-- > 0;) acc = acc * X + c[i].get_d();
    return acc;
}

}  // namespace

cd RatX::eval(cd X) const { return std::pow(X, shift_) * eval_poly(num_, X) / eval_poly(den_, X); }

mpq_class RatX::eval(const mpq_class& X) const {
    mpq_class d = den_.eval(X);
    if (d == 0) throw DivisionByZero("pole of rational function");
    return qpow(X, shift_) * num_.eval(X) / d;
}

std::string RatX::str() const {
    std::string s = shift_ ? "X^" + std::to_string(shift_) + "*" : "";
    return s + "(" + num_.str("X") + ")/(" + den_.str("X") + ")";
}

RadicalField::RadicalField(long p, long b) : p_(p), b_(b) {
    if (b < 1) throw Error("radical degree must be positive");
    modulus_ = PolyQ::monomial(1, static_cast<int>(b)) - PolyQ::constant(p);
}

PolyQ RadicalField::power_of_w(long k) const {
    long q = k >= 0 ? k / b_ : -((-k + b_ - 1) / b_);
    long r = k - q * b_;
    return PolyQ::monomial(ppow(p_, q), static_cast<int>(r));
}

PolyQ RadicalField::inverse(const PolyQ& x) const {
    PolyQ y = reduce(x);
    if (y.is_zero()) throw DivisionByZero("zero in radical field");
    return PolyQ::inverse_mod(y, modulus_);
}

PolyQ RadicalField::eval(const RatX& f, long a) const {
    auto ev = [&](const PolyQ& g) {
        PolyQ acc;
        const auto& c = g.coeffs();
        for (size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) acc = acc + power_of_w(-a * static_cast<long>(i)) * c[i];
        return reduce(acc);
    };
    PolyQ n = ev(f.num()), d = ev(f.den());
    return mul(mul(power_of_w(-a * f.shift()), n), inverse(d));
}

std::string label_str(Perm sigma, Partition part, int k) {
    std::string s = sigma == Perm::Id ? "id" : "sigma";
    s += part == Partition::I0 ? ",I0," : ",I0uI1,";
    return "(" + s + std::to_string(k) + ")";
}

std::vector<LocalFactorLabel> local_factor_labels() {
    return {{Perm::Id, Partition::I0, 0},   {Perm::Id, Partition::I0, 1},   {Perm::Id, Partition::I0I1, 0},
            {Perm::Id, Partition::I0I1, 1}, {Perm::Id, Partition::I0I1, 2}, {Perm::Swap, Partition::I0, 0},
            {Perm::Swap, Partition::I0, 1}};
}

LocalData local_data(const FQM& D, long p) {
    FQM P = p_component(D, p);
    LocalData L{p, D.lattice_rank(), 0};
    if (P.order() == p)
        L.prank = 1;
    else if (P.order() == p * p && P.level() == p)
        L.prank = 2;
    else
        throw UnsupportedRank("p-part of order " + std::to_string(P.order()));
    return L;
}

Combinatorics combinatorics(Perm sigma, Partition part, int m) {
    if (sigma == Perm::Swap && part == Partition::I0I1) throw InvalidPartition("{1} u {2} is not sigma-stable");
    auto sg = [&](int i) { return sigma == Perm::Id ? i : 3 - i; };
    std::vector<std::vector<int>> blocks =
        part == Partition::I0 ? std::vector<std::vector<int>>{{1, 2}} : std::vector<std::vector<int>>{{1}, {2}};
    Combinatorics c;
    c.s = static_cast<int>(blocks.size()) - 1;
    c.c1 = c.c2 = c.t = c.tau = 0;
    for (int i = 1; i <= 2; ++i) (sg(i) == i ? c.c1 : c.c2)++;
    int R = c.s + 2;
    c.n.assign(R, 0);
    c.c1r.assign(R, 0);
    c.c2r.assign(R, 0);
    c.c1_from.assign(R, 0);
    for (int r = 0; r <= c.s; ++r)
        for (int i : blocks[r]) {
            if (sg(i) == i) c.c1r[r]++;
            if (sg(i) > i) c.c2r[r]++;
        }
    for (int r = 0; r < R; ++r) {
        int nr = 0;
        for (int q = r; q <= c.s; ++q) {
            nr += static_cast<int>(blocks[q].size());
            c.c1_from[r] += c.c1r[q];
        }
        c.n[r] = nr * (nr + 1) / 2;
    }
    for (int r = 0; r <= c.s; ++r) {
        for (int i : blocks[r])
            for (int j : blocks[r])
                if (i < j && j < sg(i) && sg(j) < sg(i)) c.t++;
        if (r >= 1)
            for (int i : blocks[r])
                for (int q = 0; q < r; ++q)
                    for (int j : blocks[q])
                        if (j < i) c.tau++;
    }
    c.A.assign(R, 0);
    c.B.assign(R, 0);
    for (int i = 0; i < R; ++i) {
        mpq_class a = 0;
        for (int j = 0; j < i; ++j) a += mpq_class(c.c1r[j]) / 2 + c.c2r[j];
        c.A[i] = a;
        c.B[i] = -m * a + c.n[0] - c.n[i];
    }
    return c;
}

namespace {

void check_k(const Combinatorics& c, int k) {
    if (k < 0 || k > c.s + 1) throw InvalidPartition("k out of range 0..s+1");
}

}  // namespace

mpq_class kappa_p(long p, Perm sigma, Partition part, int k, int m) {
    Combinatorics c = combinatorics(sigma, part, m);
    check_k(c, k);
    mpq_class one_m = 1 - mpq_class(1, p);
    mpq_class v = qpow(mpq_class(2), -c.c1) * qpow(one_m, c.c1 + c.c2) * ppow(p, -c.c2) * ppow(p, -c.tau - c.t);
    int sum_c1 = 0, sum_c12 = 0, sum_n = 0;
    for (int r = 0; r < k; ++r) {
        sum_c1 += c.c1r[r];
        sum_c12 += c.c1r[r] + 2 * c.c2r[r];
    }
    for (int r = k + 1; r <= c.s; ++r) sum_n += c.n[r];
    mpq_class numer = qpow(mpq_class(2), c.c1_from[k]) * qpow(mpq_class(2), sum_c1) * qpow(one_m, c.c1_from[k]) *
                      ppow(p, -sum_n) * ppow(p, sum_c12);
    mpq_class denom = 1;
    for (int r = k; r <= c.s; ++r) denom *= 1 - ppow(p, -c.n[r]);
    return v * numer / denom;
}

RatX Delta_p(const LocalData& L, Perm sigma, Partition part, int k) {
    Combinatorics c = combinatorics(sigma, part, L.m);
    check_k(c, k);
    if (k == 0) return RatX(1);
    if (L.prank == 1) return RatX(0);
    long p = L.p;
    int leg_m1 = kronecker(-1, p), leg_2 = kronecker(2, p);
    RatX sum(0);
    for (unsigned S = 0; S < (1u << k); ++S) {
        int sum_e = 0, sum_o = 0;
        int parity = 0;
        for (int r = 0; r < k; ++r) {
            parity ^= (S >> r) & 1u;
            (parity ? sum_o : sum_e) += c.c1r[r];
        }
        long sgn = (sum_e % 2 ? -1 : 1);
        long e_m1 = static_cast<long>((L.m - 2) / 2) * sum_o;
        if (leg_m1 == -1 && e_m1 % 2) sgn = -sgn;
        if (leg_2 == -1 && sum_e % 2) sgn = -sgn;
        mpq_class twoA = 0, B = 0;
        for (int j = 0; j < k; ++j)
            if ((S >> j) & 1u) {
                twoA += 2 * c.A[j];
                B += c.B[j];
            }
        // p^{2A s - B} = X^{-2A} p^{-B}
        sum = sum + RatX::monomial(mpq_class(sgn) * ppow(p, -to_long(B, "B")), -static_cast<int>(to_long(twoA, "2A")));
    }
    return sum;
}

RatX D_pj(const LocalData& L, Perm sigma, Partition part, int j) {
    Combinatorics c = combinatorics(sigma, part, L.m);
    if (j < 1 || j > c.s + 1) throw InvalidPartition("j out of range");
    // zeta_p(4 A_j (s' - s0) - 2 B_j) at s' = 2s - 3/2, s0 = m/2 - 3/2
    mpq_class s0 = mpq_class(L.m) / 2 - mpq_class(3, 2);
    mpq_class a = 8 * c.A[j];
    mpq_class b = 4 * c.A[j] * (mpq_class(-3, 2) - s0) - 2 * c.B[j];
    return RatX::local_zeta(L.p, static_cast<int>(to_long(a, "D exponent")), b);
}

RatX K_p_general(const LocalData& L, Perm sigma, Partition part, int k) {
    RatX v = RatX(kappa_p(L.p, sigma, part, k, L.m)) * Delta_p(L, sigma, part, k);
    for (int j = 1; j <= k; ++j) v = v * (D_pj(L, sigma, part, j) - RatX(1));
    return v;
}

RatX K_p_explicit(const LocalData& L, Perm sigma, Partition part, int k) {
    Combinatorics c = combinatorics(sigma, part, L.m);
    check_k(c, k);
    long p = L.p;
    mpq_class om = 1 - mpq_class(1, p);
    mpq_class d3 = 1 - ppow(p, -3);
    if (k == 0) {
        if (sigma == Perm::Id && part == Partition::I0) return RatX(qpow(om, 4) / d3);
        if (sigma == Perm::Id) return RatX(ppow(p, -1) * qpow(om, 3) / d3);
        return RatX(ppow(p, -2) * qpow(om, 2) / d3);
    }
    if (L.prank == 1) return RatX(0);
    int lm1 = kronecker(-1, p), l2 = kronecker(2, p);
    long em = (L.m - 2) / 2;
    int lm1_pow = (lm1 == -1 && em % 2) ? -1 : 1;
    auto zm1 = [p](int a, long b) { return RatX::local_zeta(p, a, mpq_class(b)) - RatX(1); };
    if (sigma == Perm::Id && part == Partition::I0) return RatX(2 * qpow(om, 4)) * zm1(8, 6);
    if (sigma == Perm::Swap) return RatX(2 * qpow(om, 2)) * zm1(16, -6);
    if (k == 1) return RatX(mpq_class(p) * qpow(om, 2) * (-l2 + lm1_pow)) * zm1(8, -6);
    // 1 + (-1)(-1/p)^{(m-2)/2}(2/p) p^{s + m/2 - 2}, with p^s = X^{-1}
    RatX bracket = RatX(1) + RatX::monomial(mpq_class(-lm1_pow * l2) * ppow(p, L.m / 2 - 2), -1);
    return RatX(4 * ppow(p, 2) * qpow(om, 3)) * bracket * zm1(4, -4) * zm1(8, -6);
}

std::vector<LocalFactorCheck> check_local_factors(const LocalData& L, int samples, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> den(1, 4), num(-12, 12);
    std::vector<LocalFactorCheck> out;
    for (const auto& lab : local_factor_labels()) {
        LocalFactorCheck ch;
        ch.label = lab;
        ch.p = L.p;
        RatX g = K_p_general(L, lab.sigma, lab.part, lab.k);
        RatX e = K_p_explicit(L, lab.sigma, lab.part, lab.k);
        ch.general = g.str();
        ch.explicit_form = e.str();
        ch.identity = g.equals(e);
        int tries = 0;
        while (ch.samples < samples && tries < 50 * samples) {
            ++tries;
            long b = den(rng), a = num(rng);
            RadicalField F(L.p, b);
            PolyQ vg, ve;
            try {
                vg = F.eval(g, a);
                ve = F.eval(e, a);
            } catch (const DivisionByZero&) {
                continue;
            }
            ++ch.samples;
            if (vg != ve) ++ch.sample_mismatches;
        }
        out.push_back(ch);
    }
    return out;
}

cd siegel_gamma2(cd s) { return std::sqrt(kPi) * cgamma(s) * cgamma(s - 0.5); }

int chi_V(const FQM& D, long p) {
    int m = D.lattice_rank();
    mpz_class a = D.gram_det();
    if ((m / 2) % 2) a = -a;
    mpz_class r = a % p;
    if (r < 0) r += p;
    // (a/p) only depends on a mod p for odd p and on a mod 8 for p = 2
    if (p == 2) {
        mpz_class r8 = a % 8;
        if (r8 < 0) r8 += 8;
        return kronecker(r8.get_si(), 2);
    }
    return kronecker(r.get_si(), p);
}

cd xi_constant(int l, cd s, long prime_bound, const FQM& D) {
    if (prime_bound < 2) throw Error("prime bound must be at least 2");
    const double rho = 1.5;
    cd alpha = 0.5 * (s + rho + static_cast<double>(l));
    cd beta = 0.5 * (s + rho - static_cast<double>(l));
    cd pref = minus_one_pow(l / 2.0) * std::pow(2.0, (1.0 - s) * 2.0) * std::pow(kPi, 3) / static_cast<double>(D.order());
    cd gam = siegel_gamma2(s) / (siegel_gamma2(alpha) * siegel_gamma2(beta));
    cd prod = 1;
    for (long p : primes_up_to(prime_bound)) {
        if (D.order() % p == 0) continue;
        double chi = chi_V(D, p);
        double pd = static_cast<double>(p);
        cd a = (1.0 - chi * std::pow(pd, -(s + rho - 2.0))) / (1.0 - std::pow(pd, -2.0 * s));
        cd b = (1.0 - chi * std::pow(pd, -(s + rho))) / (1.0 - std::pow(pd, -(2.0 * s + 1.0)));
        prod *= a / b;
    }
    return pref * gam * prod;
}

double xi_stability(int l, cd s, long prime_bound, const FQM& D) {
    cd a = xi_constant(l, s, prime_bound, D), b = xi_constant(l, s, 2 * prime_bound, D);
    return std::abs(b - a) / std::abs(a);
}

FunctionalScalar functional_scalar(int l, cd s, const FQM& D, long prime_bound, bool explicit_path) {
    FunctionalScalar r;
    r.xi = xi_constant(l, 2.0 * s - 1.5, prime_bound, D);
    r.hypotheses_hold = D.order() % 2 == 1 && is_anisotropic(D);
    r.value = r.xi;
    for (long p : primes_up_to(std::max<long>(D.order(), 2))) {
        if (D.order() % p) continue;
        LocalData L = local_data(D, p);
        cd X = std::pow(static_cast<double>(p), -s);
        cd sum = 0;
        for (const auto& lab : local_factor_labels()) {
            RatX k = explicit_path ? K_p_explicit(L, lab.sigma, lab.part, lab.k) : K_p_general(L, lab.sigma, lab.part, lab.k);
            sum += k.eval(X);
        }
        r.local[p] = sum;
        r.value *= sum;
    }
    return r;
}

EigenvalueSeries read_eigenvalue_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    EigenvalueSeries e;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        long d;
        double re, im = 0;
        if (!(ls >> d >> re)) throw ParseError("bad eigenvalue line: " + line);
        ls >> im;
        if (d < 1) throw ParseError("d must be positive");
        e[d] = cd(re, im);
    }
    return e;
}

ZetaValue standard_zeta(const EigenvalueSeries& eigs, cd s) {
    if (eigs.empty()) throw Error("empty eigenvalue series");
    ZetaValue z;
    z.dmax = eigs.rbegin()->first;
    for (const auto& [d, lam] : eigs) z.value += lam * rpow(static_cast<double>(d), -s);
    // least-squares fit log|lambda_d| = log C + a log d over d >= 2
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& [d, lam] : eigs) {
        if (d < 2 || std::abs(lam) == 0) continue;
        double x = std::log(static_cast<double>(d)), y = std::log(std::abs(lam));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt == 0) return z;
    double a = 0;
    if (cnt >= 2 && cnt * sxx - sx * sx > 0) a = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    double C = 0;
    for (const auto& [d, lam] : eigs)
        if (d >= 2) C = std::max(C, std::abs(lam) * std::pow(static_cast<double>(d), -a));
    z.growth_exponent = a;
    double excess = s.real() - a - 1;
    if (excess <= 0) throw DivergenceSuspected("Re(s) does not exceed the fitted growth exponent plus one");
    z.tail_estimate = C * std::pow(static_cast<double>(z.dmax), -excess) / excess;
    return z;
}

cd C_const(int l, cd s) {
    return minus_one_pow(l / 2.0) * std::pow(2.0, 2.0 - 2.0 * s - static_cast<double>(l)) * kPi * cgamma(s + 1.0) /
           cgamma(s + 2.0);
}

cd K_const(int l, cd s, const FQM& D) {
    return e_of(D.signature_mod_8() / 8.0) / std::sqrt(static_cast<double>(D.order())) * minus_one_pow(-s) * C_const(l, s);
}

cd completed_zeta(const EigenvalueSeries& eigs, int l, cd s, const FQM& D) {
    return K_const(l, s, D) * standard_zeta(eigs, 2.0 * s + static_cast<double>(l)).value;
}

}  // namespace wz
