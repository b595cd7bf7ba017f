#include "weilzeta/cyclo.hpp"

#include "weilzeta/errors.hpp"
#include "weilzeta/poly.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace wz {
namespace cyclo_detail {

namespace {

std::mutex g_mutex;
std::map<int, std::vector<long>> g_phi_poly;
std::map<int, std::unique_ptr<std::vector<std::vector<long>>>> g_red;

std::vector<int> prime_factors(int n) {
    std::vector<int> ps;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        ps.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// exact division of integer polynomials, divisor monic
std::vector<long> div_monic(std::vector<long> a, const std::vector<long>& b) {
    int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    std::vector<long> q(da - db + 1, 0);
    for (int k = da; k >= db; --k) {
        long f = a[k];
        q[k - db] = f;
        if (f == 0) continue;
        for (int j = 0; j <= db; ++j) a[k - db + j] -= f * b[j];
    }
    return q;
}

const std::vector<long>& phi_poly_locked(int M) {
    auto it = g_phi_poly.find(M);
    if (it != g_phi_poly.end()) return it->second;
    std::vector<long> p(M + 1, 0);
    p[0] = -1;
    p[M] = 1;
    for (int d = 1; d < M; ++d)
        if (M % d == 0) p = div_monic(p, phi_poly_locked(d));
    return g_phi_poly.emplace(M, std::move(p)).first->second;
}

}  // namespace

int euler_phi(int M) {
    int r = M;
    for (int p : prime_factors(M)) r = r / p * (p - 1);
    return r;
}

const std::vector<long>& cyclotomic_poly(int M) {
    std::lock_guard<std::mutex> lk(g_mutex);
    return phi_poly_locked(M);
}

const std::vector<std::vector<long>>& reduction_table(int M) {
    std::lock_guard<std::mutex> lk(g_mutex);
    auto it = g_red.find(M);
    if (it != g_red.end()) return *it->second;
    const auto& phi = phi_poly_locked(M);
    int n = static_cast<int>(phi.size()) - 1;
    auto tab = std::make_unique<std::vector<std::vector<long>>>(M, std::vector<long>(n, 0));
    std::vector<long> cur(n, 0);
    for (int k = 0; k < M; ++k) {
        if (k < n) {
            std::fill(cur.begin(), cur.end(), 0);
            cur[k] = 1;
        } else {
            long top = cur[n - 1];
            for (int j = n - 1; j >= 1; --j) cur[j] = cur[j - 1] - top * phi[j];
            cur[0] = -top * phi[0];
        }
        (*tab)[k] = cur;
    }
    return *g_red.emplace(M, std::move(tab)).first->second;
}

std::vector<int> primes_of(int n) { return prime_factors(n); }

}  // namespace cyclo_detail

using namespace cyclo_detail;

namespace {

struct DescentData {
    int phi_big = 0, phi_small = 0;
    std::vector<std::vector<long>> lift;  // phi_big x phi_small
    std::vector<int> rows;
    std::vector<std::vector<mpq_class>> inv;  // phi_small x phi_small
};

std::mutex g_desc_mutex;
std::map<std::pair<int, int>, std::unique_ptr<DescentData>> g_desc;

const DescentData& descent_data(int M, int Ms) {
    {
        std::lock_guard<std::mutex> lk(g_desc_mutex);
        auto it = g_desc.find({M, Ms});
        if (it != g_desc.end()) return *it->second;
    }
    auto dd = std::make_unique<DescentData>();
    const auto& red = reduction_table(M);
    int nb = euler_phi(M), ns = euler_phi(Ms), k = M / Ms;
    dd->phi_big = nb;
    dd->phi_small = ns;
    dd->lift.assign(nb, std::vector<long>(ns, 0));
    for (int j = 0; j < ns; ++j) {
        const auto& col = red[(static_cast<long>(j) * k) % M];
        for (int i = 0; i < nb; ++i) dd->lift[i][j] = col[i];
    }
    // pick ns independent rows greedily
    std::vector<std::vector<mpq_class>> basis;  // reduced rows with pivot
    std::vector<int> pivots;
    for (int i = 0; i < nb && static_cast<int>(dd->rows.size()) < ns; ++i) {
        std::vector<mpq_class> r(ns);
        for (int j = 0; j < ns; ++j) r[j] = dd->lift[i][j];
        for (size_t b = 0; b < basis.size(); ++b) {
            int p = pivots[b];
            if (sgn(r[p]) == 0) continue;
            mpq_class f = r[p] / basis[b][p];
            for (int j = 0; j < ns; ++j) r[j] -= f * basis[b][j];
        }
        int p = -1;
        for (int j = 0; j < ns; ++j)
            if (sgn(r[j]) != 0) { p = j; break; }
        if (p < 0) continue;
        basis.push_back(r);
        pivots.push_back(p);
        dd->rows.push_back(i);
    }
    // invert the selected square submatrix
    std::vector<std::vector<mpq_class>> a(ns, std::vector<mpq_class>(2 * ns));
    for (int r = 0; r < ns; ++r) {
        for (int j = 0; j < ns; ++j) a[r][j] = dd->lift[dd->rows[r]][j];
        a[r][ns + r] = 1;
    }
    for (int c = 0; c < ns; ++c) {
        int piv = c;
        while (sgn(a[piv][c]) == 0) ++piv;
        std::swap(a[piv], a[c]);
        mpq_class f = 1 / a[c][c];
        for (auto& x : a[c]) x *= f;
        for (int r = 0; r < ns; ++r) {
            if (r == c || sgn(a[r][c]) == 0) continue;
            mpq_class g = a[r][c];
            for (int j = 0; j < 2 * ns; ++j) a[r][j] -= g * a[c][j];
        }
    }
    dd->inv.assign(ns, std::vector<mpq_class>(ns));
    for (int r = 0; r < ns; ++r)
        for (int j = 0; j < ns; ++j) dd->inv[r][j] = a[r][ns + j];
    std::lock_guard<std::mutex> lk(g_desc_mutex);
    auto& slot = g_desc[{M, Ms}];
    if (!slot) slot = std::move(dd);
    return *slot;
}

std::vector<mpq_class> reduce_powers(int M, const std::vector<mpq_class>& raw) {
    const auto& red = reduction_table(M);
    int n = euler_phi(M);
    std::vector<mpq_class> out(n);
    for (int k = 0; k < M; ++k) {
        if (sgn(raw[k]) == 0) continue;
        if (k < n) {
            out[k] += raw[k];
            continue;
        }
        const auto& row = red[k];
        for (int j = 0; j < n; ++j)
            if (row[j]) out[j] += raw[k] * row[j];
    }
    return out;
}

long lcm_l(long a, long b) { return a / std::gcd(a, b) * b; }

}  // namespace

CycloNum::CycloNum() : M_(1), c_(1) {}
CycloNum::CycloNum(long n) : M_(1), c_{mpq_class(n)} {}
CycloNum::CycloNum(const mpq_class& q) : M_(1), c_{q} {}

CycloNum CycloNum::from_powers(int M, const std::vector<mpq_class>& raw) {
    CycloNum r;
    r.M_ = M;
    r.c_ = reduce_powers(M, raw);
    for (auto& x : r.c_) x.canonicalize();
    r.descend();
    return r;
}

CycloNum CycloNum::from_basis(int M, std::vector<mpq_class> coeffs) {
    coeffs.resize(euler_phi(M));
    for (auto& x : coeffs) x.canonicalize();
    CycloNum r;
    r.M_ = M;
    r.c_ = std::move(coeffs);
    r.descend();
    return r;
}

bool CycloNum::is_zero() const {
    for (const auto& x : c_)
        if (sgn(x) != 0) return false;
    return true;
}

mpq_class CycloNum::rational_value() const {
    if (M_ != 1) throw Error("CycloNum is not rational");
    return c_[0];
}

void CycloNum::descend() {
    bool rational = true;
    for (size_t j = 1; j < c_.size(); ++j)
        if (sgn(c_[j]) != 0) { rational = false; break; }
    if (rational) {
        mpq_class v = c_.empty() ? mpq_class(0) : c_[0];
        M_ = 1;
        c_.assign(1, v);
        return;
    }
    bool moved = true;
    while (moved && M_ > 1) {
        moved = false;
        for (int p : primes_of(M_)) {
            int Ms = M_ / p;
            const DescentData& dd = descent_data(M_, Ms);
            std::vector<mpq_class> a(dd.phi_small);
            for (int r = 0; r < dd.phi_small; ++r)
                for (int j = 0; j < dd.phi_small; ++j)
                    if (sgn(dd.inv[r][j]) != 0) a[r] += dd.inv[r][j] * c_[dd.rows[j]];
            bool ok = true;
            for (int i = 0; i < dd.phi_big && ok; ++i) {
                mpq_class s = 0;
                for (int j = 0; j < dd.phi_small; ++j)
                    if (dd.lift[i][j]) s += a[j] * dd.lift[i][j];
                ok = (s == c_[i]);
            }
            if (ok) {
                M_ = Ms;
                c_ = std::move(a);
                moved = true;
                break;
            }
        }
    }
}

std::vector<mpq_class> CycloNum::lifted(int L) const {
    if (L % M_ != 0) throw Error("lift target must be a multiple of the conductor");
    if (L == M_) return c_;
    std::vector<mpq_class> raw(L);
    int k = L / M_;
    for (size_t j = 0; j < c_.size(); ++j) raw[(j * k) % L] += c_[j];
    return reduce_powers(L, raw);
}

CycloNum CycloNum::operator+(const CycloNum& o) const {
    int L = static_cast<int>(lcm_l(M_, o.M_));
    auto a = lifted(L);
    auto b = o.lifted(L);
    for (size_t j = 0; j < a.size(); ++j) a[j] += b[j];
    return from_basis(L, std::move(a));
}

CycloNum CycloNum::operator-() const {
    CycloNum r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycloNum CycloNum::operator-(const CycloNum& o) const { return *this + (-o); }

CycloNum CycloNum::operator*(const CycloNum& o) const {
    if (M_ == 1 && o.M_ == 1) return CycloNum(c_[0] * o.c_[0]);
    if (M_ == 1 || o.M_ == 1) {
        const CycloNum& big = (M_ == 1) ? o : *this;
        const mpq_class& f = (M_ == 1) ? c_[0] : o.c_[0];
        if (sgn(f) == 0) return CycloNum();
        CycloNum r = big;
        for (auto& x : r.c_) x *= f;
        return r;
    }
    int L = static_cast<int>(lcm_l(M_, o.M_));
    auto a = lifted(L);
    auto b = o.lifted(L);
    std::vector<mpq_class> raw(L);
    for (size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (sgn(b[j]) == 0) continue;
            raw[(i + j) % L] += a[i] * b[j];
        }
    }
    return from_powers(L, raw);
}

CycloNum CycloNum::conj() const {
    if (M_ == 1) return *this;
    std::vector<mpq_class> raw(M_);
    for (size_t j = 0; j < c_.size(); ++j) raw[(M_ - j) % M_] += c_[j];
    return from_powers(M_, raw);
}

CycloNum CycloNum::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    if (M_ == 1) return CycloNum(1 / c_[0]);
    const auto& phi = cyclotomic_poly(M_);
    std::vector<mpq_class> m(phi.begin(), phi.end());
    PolyQ inv = PolyQ::inverse_mod(PolyQ(c_), PolyQ(m));
    return from_basis(M_, inv.coeffs());
}

CycloNum CycloNum::operator/(const CycloNum& o) const { return *this * o.inverse(); }

CycloNum CycloNum::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycloNum r(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

cd CycloNum::to_cd() const {
    std::complex<long double> acc = 0;
    const long double tau = 2.0L * acosl(-1.0L);
    for (size_t j = 0; j < c_.size(); ++j) {
        if (sgn(c_[j]) == 0) continue;
        long double ang = tau * static_cast<long double>(j) / M_;
        long double v = static_cast<long double>(c_[j].get_d());
        if (c_[j].get_den().fits_slong_p() && c_[j].get_num().fits_slong_p())
            v = static_cast<long double>(c_[j].get_num().get_si()) /
                static_cast<long double>(c_[j].get_den().get_si());
        acc += v * std::complex<long double>(cosl(ang), sinl(ang));
    }
    return cd(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
}

std::string CycloNum::str() const {
    std::ostringstream os;
    os << "[M=" << M_ << "]";
    bool first = true;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (sgn(c_[j]) == 0) continue;
        os << (first ? " " : " + ") << c_[j].get_str();
        if (j > 0) os << "*z^" << j;
        first = false;
    }
    if (first) os << " 0";
    return os.str();
}

CycloNum root_of_unity(long a, long b) {
    if (b < 1) throw Error("root_of_unity requires b >= 1");
    long r = ((a % b) + b) % b;
    std::vector<mpq_class> raw(b);
    raw[r] = 1;
    return CycloNum::from_powers(static_cast<int>(b), raw);
}

CycloNum galois_twist(const CycloNum& x, long d) {
    int M = x.conductor();
    if (M == 1) return x;
    if (std::gcd(((d % M) + M) % M, static_cast<long>(M)) != 1)
        throw NonCoprimeTwist("gcd(" + std::to_string(d) + ", " + std::to_string(M) + ") != 1");
    long dm = ((d % M) + M) % M;
    std::vector<mpq_class> raw(M);
    const auto& c = x.coeffs();
    for (size_t j = 0; j < c.size(); ++j) raw[(j * dm) % M] += c[j];
    return CycloNum::from_powers(M, raw);
}

namespace {

// sqrt(p) for prime p from a quadratic Gauss sum
CycloNum sqrt_prime(long p) {
    if (p == 2) return root_of_unity(1, 8) + root_of_unity(-1, 8);
    CycloNum g;
    for (long a = 0; a < p; ++a) g += root_of_unity(a * a, p);
    if (p % 4 == 1) return g;
    return g * root_of_unity(-1, 4);
}

}  // namespace

CycloNum sqrt_of_integer(long n) {
    if (n < 1) throw Error("sqrt_of_integer requires n >= 1");
    CycloNum r(1);
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        int e = 0;
        while (m % p == 0) { m /= p; ++e; }
        if (!e) continue;
        for (int i = 0; i < e / 2; ++i) r = r * CycloNum(p);
        if (e % 2) r = r * sqrt_prime(p);
    }
    if (m > 1) r = r * sqrt_prime(m);
    return r;
}

BigComplex::BigComplex(int precision) {
    mpfr_init2(re, precision);
    mpfr_init2(im, precision);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
}

BigComplex::BigComplex(const BigComplex& o) {
    mpfr_init2(re, mpfr_get_prec(o.re));
    mpfr_init2(im, mpfr_get_prec(o.im));
    mpfr_set(re, o.re, MPFR_RNDN);
    mpfr_set(im, o.im, MPFR_RNDN);
}

BigComplex& BigComplex::operator=(const BigComplex& o) {
    if (this != &o) {
        mpfr_set_prec(re, mpfr_get_prec(o.re));
        mpfr_set_prec(im, mpfr_get_prec(o.im));
        mpfr_set(re, o.re, MPFR_RNDN);
        mpfr_set(im, o.im, MPFR_RNDN);
    }
    return *this;
}

BigComplex::~BigComplex() {
    mpfr_clear(re);
    mpfr_clear(im);
}

cd BigComplex::to_cd() const { return cd(mpfr_get_d(re, MPFR_RNDN), mpfr_get_d(im, MPFR_RNDN)); }

std::string BigComplex::str(int digits) const {
    char buf[512];
    mpfr_snprintf(buf, sizeof buf, "(%.*Rg, %.*Rg)", digits, re, digits, im);
    return buf;
}

BigComplex to_complex(const CycloNum& x, int precision) {
    if (precision < 32) throw Error("to_complex requires precision >= 32");
    int work = precision + 32;
    BigComplex out(precision);
    mpfr_t accr, acci, ang, c, s, q;
    mpfr_inits2(work, accr, acci, ang, c, s, q, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_zero(accr, 1);
    mpfr_set_zero(acci, 1);
    int M = x.conductor();
    const auto& co = x.coeffs();
    for (size_t j = 0; j < co.size(); ++j) {
        if (sgn(co[j]) == 0) continue;
        // angle 2*pi*j/M
        mpfr_const_pi(ang, MPFR_RNDN);
        mpfr_mul_ui(ang, ang, 2 * j, MPFR_RNDN);
        mpfr_div_ui(ang, ang, M, MPFR_RNDN);
        mpfr_sin_cos(s, c, ang, MPFR_RNDN);
        mpfr_set_q(q, co[j].get_mpq_t(), MPFR_RNDN);
        mpfr_mul(c, c, q, MPFR_RNDN);
        mpfr_mul(s, s, q, MPFR_RNDN);
        mpfr_add(accr, accr, c, MPFR_RNDN);
        mpfr_add(acci, acci, s, MPFR_RNDN);
    }
    mpfr_set(out.re, accr, MPFR_RNDN);
    mpfr_set(out.im, acci, MPFR_RNDN);
    mpfr_clears(accr, acci, ang, c, s, q, static_cast<mpfr_ptr>(nullptr));
    return out;
}

double to_complex_error_bound(const CycloNum& x, int precision) {
    double sum = 0;
    for (const auto& c : x.coeffs()) sum += std::fabs(c.get_d());
    return std::ldexp(1.0 + sum, 1 - precision);
}

}  // namespace wz
