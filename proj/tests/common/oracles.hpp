#pragma once
#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

inline cd e(double x) { return std::polar(1.0, 2 * kPi * x); }

// L'/L enumerated as G^{-1} k mod Z^n for k in a box, with q(x) = x^T G x / 2 mod 1
struct BruteDiscriminant {
    std::vector<std::vector<mpq_class>> elems;
    std::vector<mpq_class> q;
};

inline std::vector<std::vector<mpq_class>> inverse(const std::vector<std::vector<long>>& G) {
    size_t n = G.size();
    std::vector<std::vector<mpq_class>> A(n, std::vector<mpq_class>(2 * n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) A[i][j] = G[i][j];
        A[i][n + i] = 1;
    }
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (A[p][c] == 0) ++p;
        std::swap(A[p], A[c]);
        mpq_class inv = 1 / A[c][c];
        for (auto& x : A[c]) x *= inv;
        for (size_t r = 0; r < n; ++r)
            if (r != c && A[r][c] != 0) {
                mpq_class f = A[r][c];
                for (size_t k = 0; k < 2 * n; ++k) A[r][k] -= f * A[c][k];
            }
    }
    std::vector<std::vector<mpq_class>> inv(n, std::vector<mpq_class>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = A[i][n + j];
    return inv;
}

inline mpq_class frac(const mpq_class& x) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return x - mpq_class(f);
}

inline BruteDiscriminant brute_discriminant(const std::vector<std::vector<long>>& G, long box) {
    size_t n = G.size();
    auto Gi = inverse(G);
    std::set<std::vector<mpq_class>> seen;
    BruteDiscriminant out;
    std::vector<long> k(n, 0);
    while (true) {
        std::vector<mpq_class> x(n);
        for (size_t i = 0; i < n; ++i) {
            mpq_class s = 0;
            for (size_t j = 0; j < n; ++j) s += Gi[i][j] * k[j];
            x[i] = frac(s);
        }
        if (seen.insert(x).second) {
            mpq_class q = 0;
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) q += x[i] * G[i][j] * x[j];
            out.elems.push_back(x);
            out.q.push_back(frac(q / 2));
        }
        size_t i = 0;
        while (i < n && ++k[i] == box) k[i++] = 0;
        if (i == n) break;
    }
    return out;
}

inline cd gauss_sum(const BruteDiscriminant& D, long d) {
    cd s = 0;
    for (const auto& q : D.q) s += e(d * q.get_d());
    return s;
}

// tr rho(S T^k) = e(-sig/8) |D|^{-1/2} sum_g e((k - 2) q(g))
inline cd trace_S_Tk(const BruteDiscriminant& D, int sig, long k) {
    cd s = 0;
    for (const auto& q : D.q) s += e((k - 2) * q.get_d());
    return e(-sig / 8.0) / std::sqrt(static_cast<double>(D.q.size())) * s;
}

// Delta = q prod (1 - q^n)^24 in floating point
inline cd delta_eta(cd tau, int terms = 200) {
    cd q = std::exp(cd(0, 2 * kPi) * tau);
    cd p = q;
    cd qn = 1;
    for (int n = 1; n <= terms; ++n) {
        qn *= q;
        p *= std::pow(1.0 - qn, 24);
    }
    return p;
}

inline long sigma(long n, int k) {
    long s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) s += static_cast<long>(std::llround(std::pow(d, k)));
    return s;
}

// E_12 = 1 + 65520/691 sum sigma_11(n) q^n
inline cd eisenstein12(cd tau, int terms = 60) {
    cd q = std::exp(cd(0, 2 * kPi) * tau);
    cd s = 0, qn = 1;
    for (int n = 1; n <= terms; ++n) {
        qn *= q;
        s += static_cast<double>(sigma(n, 11)) * qn;
    }
    return 1.0 + 65520.0 / 691.0 * s;
}

inline std::vector<long> tau_coefficients(int T) {
    std::vector<long> c(T + 2, 0);
    c[1] = 1;
    for (int k = 1; k <= T; ++k)
        for (int r = 0; r < 24; ++r)
            for (int i = T; i >= k; --i) c[i] -= c[i - k];
    return c;
}

inline int mobius(long n) {
    int m = 1;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
    return n > 1 ? -m : m;
}

// eigenvalue of T(d^2, 1) on Delta under the det^{l/2-1} normalization, from tau((d/k)^2)
inline double hecke_delta(long d) {
    const int l = 12;
    auto t = tau_coefficients(static_cast<int>(d * d));
    double s = 0;
    for (long k = 1; k <= d; ++k)
        if (d % k == 0) {
            long m = d / k;
            s += mobius(k) * std::pow(k, -l) * std::pow(m, 2.0 * (1 - l)) * static_cast<double>(t[m * m]);
        }
    return std::pow(d, l - 2) * s;
}

// same eigenvalue by direct summation over the primitive upper triangular representatives
inline double hecke_delta_direct(long d, cd tau) {
    const int l = 12;
    long n = d * d;
    cd acc = 0;
    for (long a = 1; a <= n; ++a) {
        if (n % a) continue;
        long c = n / a;
        for (long b = 0; b < c; ++b) {
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            acc += std::pow(static_cast<double>(c), -l) * delta_eta((static_cast<double>(a) * tau + static_cast<double>(b)) / static_cast<double>(c));
        }
    }
    return (std::pow(static_cast<double>(d), l - 2) * acc / delta_eta(tau)).real();
}

// psi(n) = n prod_{p | n} (1 + 1/p)
inline long dedekind_psi(long n) {
    long r = n, m = n;
    for (long p = 2; p <= m; ++p)
        if (m % p == 0) {
            r = r / p * (p + 1);
            while (m % p == 0) m /= p;
        }
    return r;
}

// |P^1(Z/N)|: pairs (c, d) mod N generating Z/N, up to units
inline long projective_line_size(long N) {
    long pairs = 0, units = 0;
    for (long c = 0; c < N; ++c)
        for (long d = 0; d < N; ++d)
            if (std::gcd(std::gcd(c, d), N) == 1) ++pairs;
    for (long u = 0; u < N; ++u)
        if (std::gcd(u, N) == 1) ++units;
    return N == 1 ? 1 : pairs / units;
}

// coprime (c, d) with max(|c|, |d|) <= h, modulo sign
inline long coprime_classes(long h) {
    long n = 0;
    for (long c = -h; c <= h; ++c)
        for (long d = -h; d <= h; ++d)
            if (std::gcd(c, d) == 1) ++n;
    return n / 2;
}

}  // namespace oracle
