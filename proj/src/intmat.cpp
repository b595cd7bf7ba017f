#include "weilzeta/intmat.hpp"

#include "weilzeta/errors.hpp"

#include <numeric>
#include <sstream>

namespace wz {

long ext_gcd(long a, long b, long& x, long& y) {
    long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        long q = a / b;
        long t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

long mod_pos(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

Mat2 Mat2::inv_unimodular() const {
    long dt = det();
    if (dt != 1 && dt != -1) throw NotUnimodular(str());
    return {d * dt, -b * dt, -c * dt, a * dt};
}

std::string Mat2::str() const {
    std::ostringstream os;
    os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
    return os.str();
}

IMat imat_identity(int n) {
    IMat r(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) r[i][i] = 1;
    return r;
}

IMat imat_mul(const IMat& x, const IMat& y) {
    size_t n = x.size(), m = y[0].size(), k = y.size();
    IMat r(n, std::vector<long>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (!x[i][l]) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += x[i][l] * y[l][j];
        }
    return r;
}

IMat imat_transpose(const IMat& x) {
    IMat r(x[0].size(), std::vector<long>(x.size()));
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < x[0].size(); ++j) r[j][i] = x[i][j];
    return r;
}

bool imat_is_zero(const IMat& x) {
    for (const auto& r : x)
        for (long v : r)
            if (v) return false;
    return true;
}

std::string imat_str(const IMat& x) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < x.size(); ++i) {
        os << (i ? ",[" : "[");
        for (size_t j = 0; j < x[i].size(); ++j) os << (j ? "," : "") << x[i][j];
        os << "]";
    }
    os << "]";
    return os.str();
}

IMat block4(const Mat2& A, const Mat2& B, const Mat2& C, const Mat2& D) {
    return {{A.a, A.b, B.a, B.b}, {A.c, A.d, B.c, B.d}, {C.a, C.b, D.a, D.b}, {C.c, C.d, D.c, D.d}};
}

IMat sym_J(int n) {
    IMat J(2 * n, std::vector<long>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
        J[i][n + i] = -1;
        J[n + i][i] = 1;
    }
    return J;
}

bool is_symplectic(const IMat& g) {
    int n2 = static_cast<int>(g.size());
    IMat J = sym_J(n2 / 2);
    return imat_mul(imat_mul(imat_transpose(g), J), g) == J;
}

IMat imat_inverse_symplectic(const IMat& g) {
    // g^{-1} = J^{-1} g^T J
    int n = static_cast<int>(g.size()) / 2;
    IMat J = sym_J(n), Jinv = sym_J(n);
    for (auto& r : Jinv)
        for (auto& v : r) v = -v;
    return imat_mul(imat_mul(Jinv, imat_transpose(g)), J);
}

namespace {

void swap_rows(ZMat& M, size_t i, size_t j) { std::swap(M[i], M[j]); }

void swap_cols(ZMat& M, size_t i, size_t j) {
    for (auto& r : M) std::swap(r[i], r[j]);
}

// row_i += f * row_j
void add_row(ZMat& M, size_t i, size_t j, const mpz_class& f) {
    for (size_t k = 0; k < M[i].size(); ++k) M[i][k] += f * M[j][k];
}

void add_col(ZMat& M, size_t i, size_t j, const mpz_class& f) {
    for (auto& r : M) r[i] += f * r[j];
}

ZMat zidentity(size_t n) {
    ZMat r(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i) r[i][i] = 1;
    return r;
}

}  // namespace

SmithForm smith_normal_form(const ZMat& G) {
    size_t n = G.size(), m = G[0].size();
    ZMat A = G, U = zidentity(n), V = zidentity(m);
    size_t t = 0;
    while (t < std::min(n, m)) {
        // pivot: nonzero entry of smallest absolute value in the remaining block
        bool found = false;
        size_t pi = t, pj = t;
        mpz_class best;
        for (size_t i = t; i < n; ++i)
            for (size_t j = t; j < m; ++j)
                if (A[i][j] != 0 && (!found || abs(A[i][j]) < best)) {
                    best = abs(A[i][j]);
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        swap_rows(A, t, pi);
        swap_rows(U, t, pi);
        swap_cols(A, t, pj);
        swap_cols(V, t, pj);
        bool clean = true;
        for (size_t i = t + 1; i < n; ++i) {
            if (A[i][t] == 0) continue;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), A[i][t].get_mpz_t(), A[t][t].get_mpz_t());
            add_row(A, i, t, -q);
            add_row(U, i, t, -q);
            if (A[i][t] != 0) clean = false;
        }
        for (size_t j = t + 1; j < m; ++j) {
            if (A[t][j] == 0) continue;
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), A[t][j].get_mpz_t(), A[t][t].get_mpz_t());
            add_col(A, j, t, -q);
            add_col(V, j, t, -q);
            if (A[t][j] != 0) clean = false;
        }
        if (!clean) continue;
        // divisibility of the remaining block by the pivot
        bool divides = true;
        for (size_t i = t + 1; i < n && divides; ++i)
            for (size_t j = t + 1; j < m; ++j)
                if (A[i][j] % A[t][t] != 0) {
                    add_row(A, t, i, 1);
                    add_row(U, t, i, 1);
                    divides = false;
                    break;
                }
        if (!divides) continue;
        if (A[t][t] < 0) {
            for (auto& v : A[t]) v = -v;
            for (auto& v : U[t]) v = -v;
        }
        ++t;
    }
    SmithForm sf;
    sf.U = U;
    sf.V = V;
    for (size_t i = 0; i < std::min(n, m); ++i) sf.diag.push_back(A[i][i]);
    return sf;
}

mpz_class zmat_det(const ZMat& G) {
    size_t n = G.size();
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = G[i][j];
    mpq_class det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            mpq_class f = a[r][c] / a[c][c];
            for (size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    return det.get_num();
}

IMat row_hnf(const IMat& A0) {
    IMat A = A0;
    size_t rows = A.size(), cols = A[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        // Euclid down column c among rows r..
        while (true) {
            size_t piv = rows;
            for (size_t i = r; i < rows; ++i)
                if (A[i][c] != 0 && (piv == rows || std::labs(A[i][c]) < std::labs(A[piv][c]))) piv = i;
            if (piv == rows) break;
            std::swap(A[r], A[piv]);
            bool done = true;
            for (size_t i = r + 1; i < rows; ++i) {
                if (A[i][c] == 0) continue;
                long q = A[i][c] / A[r][c];
                for (size_t k = 0; k < cols; ++k) A[i][k] -= q * A[r][k];
                if (A[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (A[r][c] == 0) continue;
        if (A[r][c] < 0)
            for (auto& v : A[r]) v = -v;
        for (size_t i = 0; i < r; ++i) {
            long q = (A[i][c] - mod_pos(A[i][c], A[r][c])) / A[r][c];
            for (size_t k = 0; k < cols; ++k) A[i][k] -= q * A[r][k];
        }
        ++r;
    }
    return A;
}

}  // namespace wz
