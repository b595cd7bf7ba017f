#include "weilzeta/weil.hpp"

#include "weilzeta/errors.hpp"

#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace wz {

namespace {

using i128 = __int128;

long lcm_l(long a, long b) { return a / std::gcd(a, b) * b; }

long checked(i128 v) {
    if (v > static_cast<i128>(INT64_MAX) || v < -static_cast<i128>(INT64_MAX))
        throw std::overflow_error("WeilMatrix coefficient exceeds 64 bits");
    return static_cast<long>(v);
}

IMat letter_matrix(int n, const Letter& l) {
    IMat g = imat_identity(2 * n);
    switch (l.kind) {
        case Letter::S:
        case Letter::Sinv: {
            long s = (l.kind == Letter::S) ? 1 : -1;
            g = IMat(2 * n, std::vector<long>(2 * n, 0));
            for (int i = 0; i < n; ++i) {
                g[i][n + i] = -s;
                g[n + i][i] = s;
            }
            break;
        }
        case Letter::T:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) g[i][n + j] = l.mat[i][j];
            break;
        case Letter::M: {
            IMat ainvT;
            if (n == 1) {
                ainvT = {{l.mat[0][0]}};
            } else {
                Mat2 a = mat2_of(l.mat);
                ainvT = imat_of(a.inv_unimodular().transpose());
            }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    g[i][j] = l.mat[i][j];
                    g[n + i][n + j] = ainvT[i][j];
                }
            break;
        }
    }
    return g;
}

IMat imat_neg(const IMat& m) {
    IMat r = m;
    for (auto& row : r)
        for (auto& v : row) v = -v;
    return r;
}

IMat unimodular_inverse(const IMat& a) {
    if (a.size() == 1) {
        if (a[0][0] != 1 && a[0][0] != -1) throw NonUnimodular(imat_str(a));
        return a;
    }
    Mat2 m = mat2_of(a);
    long dt = m.det();
    if (dt != 1 && dt != -1) throw NonUnimodular(imat_str(a));
    return imat_of(m.inv_unimodular());
}

long imat_det(const IMat& a) {
    if (a.size() == 1) return a[0][0];
    return a[0][0] * a[1][1] - a[0][1] * a[1][0];
}

}  // namespace

Mat2 mat2_of(const IMat& m) { return {m[0][0], m[0][1], m[1][0], m[1][1]}; }
IMat imat_of(const Mat2& m) { return {{m.a, m.b}, {m.c, m.d}}; }

GroupWord& GroupWord::S() {
    letters.push_back({Letter::S, {}});
    return *this;
}
GroupWord& GroupWord::Sinv() {
    letters.push_back({Letter::Sinv, {}});
    return *this;
}
GroupWord& GroupWord::T(const IMat& b) {
    letters.push_back({Letter::T, b});
    return *this;
}
GroupWord& GroupWord::T(long b) { return T(IMat{{b}}); }
GroupWord& GroupWord::M(const IMat& a) {
    letters.push_back({Letter::M, a});
    return *this;
}
GroupWord& GroupWord::append(const GroupWord& w) {
    letters.insert(letters.end(), w.letters.begin(), w.letters.end());
    return *this;
}

GroupWord GroupWord::inverse() const {
    GroupWord r(genus);
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        switch (it->kind) {
            case Letter::S: r.Sinv(); break;
            case Letter::Sinv: r.S(); break;
            case Letter::T: r.T(imat_neg(it->mat)); break;
            case Letter::M: r.M(unimodular_inverse(it->mat)); break;
        }
    }
    return r;
}

GroupWord GroupWord::tilde() const {
    GroupWord r(genus);
    for (const auto& l : letters) {
        switch (l.kind) {
            case Letter::S: r.Sinv(); break;
            case Letter::Sinv: r.S(); break;
            case Letter::T: r.T(imat_neg(l.mat)); break;
            case Letter::M: r.M(l.mat); break;
        }
    }
    return r;
}

IMat GroupWord::matrix() const {
    IMat g = imat_identity(2 * genus);
    for (const auto& l : letters) g = imat_mul(g, letter_matrix(genus, l));
    return g;
}

std::string GroupWord::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < letters.size(); ++i) {
        if (i) os << ",";
        const auto& l = letters[i];
        switch (l.kind) {
            case Letter::S: os << "S"; break;
            case Letter::Sinv: os << "Sinv"; break;
            case Letter::T: os << "T(b=" << imat_str(l.mat) << ")"; break;
            case Letter::M: os << "m(a=" << imat_str(l.mat) << ")"; break;
        }
    }
    return os.str();
}

namespace {

IMat parse_imat(const std::string& s) {
    IMat m;
    std::vector<long> row;
    int depth = 0;
    std::string num;
    auto flush = [&] {
        if (!num.empty()) {
            row.push_back(std::stol(num));
            num.clear();
        }
    };
    for (char ch : s) {
        if (ch == '[') {
            ++depth;
        } else if (ch == ']') {
            flush();
            if (depth == 2) {
                m.push_back(row);
                row.clear();
            }
            --depth;
        } else if (ch == ',' || ch == ' ') {
            flush();
        } else {
            num += ch;
        }
    }
    if (m.empty() && !row.empty()) m.push_back(row);
    return m;
}

}  // namespace

GroupWord parse_word(int genus, const std::string& text) {
    GroupWord w(genus);
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '*' || text[i] == '.')) ++i;
    };
    skip();
    while (i < text.size()) {
        size_t start = i;
        while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
        std::string name = text.substr(start, i - start);
        std::string arg;
        if (i < text.size() && text[i] == '(') {
            int depth = 0;
            size_t s = i;
            for (; i < text.size(); ++i) {
                if (text[i] == '(') ++depth;
                if (text[i] == ')' && --depth == 0) break;
            }
            if (i >= text.size()) throw ParseError("unbalanced parenthesis in word");
            arg = text.substr(s + 1, i - s - 1);
            ++i;
        }
        auto eq = arg.find('=');
        if (eq != std::string::npos) arg = arg.substr(eq + 1);
        auto parse_arg = [&](long dflt) -> IMat {
            if (arg.empty()) {
                IMat m = imat_identity(genus);
                for (auto& r : m)
                    for (auto& v : r) v *= dflt;
                return m;
            }
            if (arg.find('[') == std::string::npos) {
                long v = std::stol(arg);
                IMat m = imat_identity(genus);
                for (auto& r : m)
                    for (auto& x : r) x *= v;
                return m;
            }
            IMat m = parse_imat(arg);
            if (static_cast<int>(m.size()) != genus) throw ParseError("matrix size does not match genus");
            return m;
        };
        if (name == "S") w.S();
        else if (name == "Sinv" || name == "Si") w.Sinv();
        else if (name == "T") w.T(parse_arg(1));
        else if (name == "Tinv") w.T(parse_arg(-1));
        else if (name == "m" || name == "M") w.M(parse_arg(1));
        else throw ParseError("unknown letter '" + name + "'");
        skip();
    }
    return w;
}

GroupWord sl2_word(const Mat2& g) {
    if (g.det() != 1) throw NotUnimodular(g.str());
    Mat2 cur = g;
    GroupWord right(1);  // cur = g * right
    while (cur.c != 0) {
        long q = static_cast<long>(std::floor(static_cast<long double>(cur.d) / cur.c));
        while (cur.d - q * cur.c < 0 && cur.c > 0) --q;
        while (cur.d - q * cur.c >= cur.c && cur.c > 0) ++q;
        if (cur.c < 0) {
            while (cur.d - q * cur.c > 0) ++q;
            while (cur.d - q * cur.c <= cur.c) --q;
        }
        if (q != 0) {
            cur = cur * Mat2::T(-q);
            right.T(-q);
        }
        cur = cur * Mat2::S();
        right.S();
    }
    GroupWord w(1);
    if (cur.a == 1) {
        if (cur.b != 0) w.T(cur.b);
    } else {
        w.S().S();
        if (cur.b != 0) w.T(-cur.b);
    }
    return w.append(right.inverse());
}

GroupWord U2_word(const IMat& a) {
    GroupWord w(2);
    return w.S().T(imat_neg(a)).Sinv();
}

namespace {

GroupWord embed_word(const GroupWord& w, int slot) {
    IMat b = {{0, 0}, {0, 0}};
    b[slot][slot] = 1;
    GroupWord Sup(2);
    Sup.append(U2_word(b)).T(imat_neg(b)).append(U2_word(b));
    GroupWord r(2);
    for (const auto& l : w.letters) {
        switch (l.kind) {
            case Letter::S: r.append(Sup); break;
            case Letter::Sinv: r.append(Sup.inverse()); break;
            case Letter::T: {
                IMat t = {{0, 0}, {0, 0}};
                t[slot][slot] = l.mat[0][0];
                r.T(t);
                break;
            }
            case Letter::M: {
                IMat a = imat_identity(2);
                a[slot][slot] = l.mat[0][0];
                r.M(a);
                break;
            }
        }
    }
    return r;
}

}  // namespace

GroupWord up_word(const GroupWord& w) { return embed_word(w, 0); }
GroupWord down_word(const GroupWord& w) { return embed_word(w, 1); }

// ---------------------------------------------------------------- WeilMatrix

WeilMatrix::WeilMatrix(int dim, int K)
    : dim_(dim), K_(K), phi_(cyclo_detail::euler_phi(K)), den_(1),
      num_(static_cast<size_t>(dim) * dim * phi_, 0) {}

WeilMatrix WeilMatrix::identity(int dim) {
    WeilMatrix m(dim, 1);
    for (int i = 0; i < dim; ++i) m.raw(i, i)[0] = 1;
    return m;
}

WeilMatrix WeilMatrix::from_entries(int dim, const std::vector<CycloNum>& entries) {
    long K = 1;
    for (const auto& e : entries) K = lcm_l(K, e.conductor());
    std::vector<std::vector<mpq_class>> lifted(entries.size());
    mpz_class den = 1;
    for (size_t i = 0; i < entries.size(); ++i) {
        lifted[i] = entries[i].lifted(static_cast<int>(K));
        for (const auto& c : lifted[i]) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    }
    if (!den.fits_slong_p()) throw std::overflow_error("denominator exceeds 64 bits");
    WeilMatrix m(dim, static_cast<int>(K));
    m.den_ = den.get_si();
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const auto& c = lifted[static_cast<size_t>(i) * dim + j];
            for (int k = 0; k < m.phi_; ++k) {
                mpq_class v = c[k] * den;
                if (!v.get_num().fits_slong_p()) throw std::overflow_error("numerator exceeds 64 bits");
                m.raw(i, j)[k] = v.get_num().get_si();
            }
        }
    m.normalize();
    return m;
}

void WeilMatrix::normalize() {
    if (den_ < 0) {
        den_ = -den_;
        for (auto& v : num_) v = -v;
    }
    long g = den_;
    for (long v : num_) {
        if (g == 1) break;
        if (v) g = std::gcd(g, v);
    }
    if (g > 1) {
        den_ /= g;
        for (auto& v : num_) v /= g;
    }
}

bool WeilMatrix::entry_is_zero(int i, int j) const {
    const long* p = raw(i, j);
    for (int k = 0; k < phi_; ++k)
        if (p[k]) return false;
    return true;
}

CycloNum WeilMatrix::entry(int i, int j) const {
    std::vector<mpq_class> c(phi_);
    const long* p = raw(i, j);
    for (int k = 0; k < phi_; ++k) c[k] = mpq_class(p[k], den_);
    for (auto& x : c) x.canonicalize();
    return CycloNum::from_basis(K_, c);
}

namespace {

std::vector<std::complex<long double>> zeta_powers(int K, int phi) {
    std::vector<std::complex<long double>> z(phi);
    const long double tau = 2.0L * acosl(-1.0L);
    for (int j = 0; j < phi; ++j) z[j] = std::polar(1.0L, tau * j / K);
    return z;
}

}  // namespace

cd WeilMatrix::entry_cd(int i, int j) const {
    auto z = zeta_powers(K_, phi_);
    std::complex<long double> acc = 0;
    const long* p = raw(i, j);
    for (int k = 0; k < phi_; ++k)
        if (p[k]) acc += static_cast<long double>(p[k]) * z[k];
    acc /= static_cast<long double>(den_);
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

std::vector<cd> WeilMatrix::embed() const {
    auto z = zeta_powers(K_, phi_);
    std::vector<cd> out(static_cast<size_t>(dim_) * dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            std::complex<long double> acc = 0;
            const long* p = raw(i, j);
            for (int k = 0; k < phi_; ++k)
                if (p[k]) acc += static_cast<long double>(p[k]) * z[k];
            acc /= static_cast<long double>(den_);
            out[static_cast<size_t>(i) * dim_ + j] = {static_cast<double>(acc.real()),
                                                      static_cast<double>(acc.imag())};
        }
    return out;
}

WeilMatrix WeilMatrix::lifted(int K) const {
    if (K == K_) return *this;
    if (K % K_ != 0) throw Error("lift target must be a multiple of the conductor");
    const auto& red = cyclo_detail::reduction_table(K);
    WeilMatrix r(dim_, K);
    r.den_ = den_;
    r.genus = genus;
    int step = K / K_;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            const long* p = raw(i, j);
            long* q = r.raw(i, j);
            for (int k = 0; k < phi_; ++k) {
                if (!p[k]) continue;
                const auto& row = red[(static_cast<long>(k) * step) % K];
                for (int t = 0; t < r.phi_; ++t)
                    if (row[t]) q[t] += p[k] * row[t];
            }
        }
    r.normalize();
    return r;
}

WeilMatrix WeilMatrix::operator*(const WeilMatrix& o) const {
    if (dim_ != o.dim_) throw Error("dimension mismatch in WeilMatrix product");
    int K = static_cast<int>(lcm_l(K_, o.K_));
    const WeilMatrix& A = (K == K_) ? *this : lifted(K);
    WeilMatrix Bl;
    const WeilMatrix* Bp = &o;
    if (K != o.K_) {
        Bl = o.lifted(K);
        Bp = &Bl;
    }
    const WeilMatrix& B = *Bp;
    int phi = A.phi_, n = dim_;
    int width = 2 * phi - 1;
    std::vector<std::vector<int>> nzB(n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            if (!B.entry_is_zero(k, j)) nzB[k].push_back(j);
    const auto& red = cyclo_detail::reduction_table(K);
    WeilMatrix C(n, K);
    C.genus = genus;
    i128 den = static_cast<i128>(A.den_) * B.den_;
    C.den_ = checked(den);
    std::vector<i128> acc(static_cast<size_t>(n) * width);
    for (int i = 0; i < n; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (int k = 0; k < n; ++k) {
            const long* a = A.raw(i, k);
            bool az = true;
            for (int t = 0; t < phi; ++t)
                if (a[t]) { az = false; break; }
            if (az) continue;
            for (int j : nzB[k]) {
                const long* b = B.raw(k, j);
                i128* out = &acc[static_cast<size_t>(j) * width];
                for (int s = 0; s < phi; ++s) {
                    if (!a[s]) continue;
                    for (int t = 0; t < phi; ++t)
                        if (b[t]) out[s + t] += static_cast<i128>(a[s]) * b[t];
                }
            }
        }
        for (int j = 0; j < n; ++j) {
            const i128* in = &acc[static_cast<size_t>(j) * width];
            std::vector<i128> res(phi, 0);
            for (int e = 0; e < width; ++e) {
                if (!in[e]) continue;
                int ex = e % K;
                if (ex < phi) {
                    res[ex] += in[e];
                } else {
                    const auto& row = red[ex];
                    for (int t = 0; t < phi; ++t)
                        if (row[t]) res[t] += in[e] * row[t];
                }
            }
            // reduce by the common denominator early to keep values in range
            long* q = C.raw(i, j);
            for (int t = 0; t < phi; ++t) q[t] = 0;
            bool fits = true;
            for (int t = 0; t < phi; ++t)
                if (res[t] > static_cast<i128>(INT64_MAX) || res[t] < -static_cast<i128>(INT64_MAX)) fits = false;
            if (!fits) throw std::overflow_error("WeilMatrix product coefficient exceeds 64 bits");
            for (int t = 0; t < phi; ++t) q[t] = static_cast<long>(res[t]);
        }
    }
    C.normalize();
    return C;
}

WeilMatrix WeilMatrix::scaled(const CycloNum& c) const {
    WeilMatrix cm = from_entries(1, {c});
    int K = static_cast<int>(lcm_l(K_, cm.K_));
    WeilMatrix A = lifted(K);
    cm = cm.lifted(K);
    WeilMatrix r(dim_, K);
    r.genus = genus;
    r.den_ = checked(static_cast<i128>(A.den_) * cm.den_);
    const auto& red = cyclo_detail::reduction_table(K);
    const long* cp = cm.raw(0, 0);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            const long* a = A.raw(i, j);
            std::vector<i128> res(r.phi_, 0);
            for (int s = 0; s < r.phi_; ++s) {
                if (!a[s]) continue;
                for (int t = 0; t < r.phi_; ++t) {
                    if (!cp[t]) continue;
                    i128 v = static_cast<i128>(a[s]) * cp[t];
                    int ex = (s + t) % K;
                    if (ex < r.phi_) {
                        res[ex] += v;
                    } else {
                        for (int u = 0; u < r.phi_; ++u)
                            if (red[ex][u]) res[u] += v * red[ex][u];
                    }
                }
            }
            long* q = r.raw(i, j);
            for (int t = 0; t < r.phi_; ++t) q[t] = checked(res[t]);
        }
    r.normalize();
    return r;
}

bool WeilMatrix::operator==(const WeilMatrix& o) const {
    if (dim_ != o.dim_) return false;
    if (K_ != o.K_) {
        int K = static_cast<int>(lcm_l(K_, o.K_));
        return lifted(K) == o.lifted(K);
    }
    return den_ == o.den_ && num_ == o.num_;
}

WeilMatrix WeilMatrix::conj() const {
    if (K_ <= 2) return *this;
    const auto& red = cyclo_detail::reduction_table(K_);
    WeilMatrix r(dim_, K_);
    r.genus = genus;
    r.den_ = den_;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            const long* p = raw(i, j);
            long* q = r.raw(i, j);
            for (int k = 0; k < phi_; ++k) {
                if (!p[k]) continue;
                const auto& row = red[(K_ - k) % K_];
                for (int t = 0; t < phi_; ++t)
                    if (row[t]) q[t] += p[k] * row[t];
            }
        }
    r.normalize();
    return r;
}

WeilMatrix WeilMatrix::transpose() const {
    WeilMatrix r(dim_, K_);
    r.genus = genus;
    r.den_ = den_;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) std::copy(raw(i, j), raw(i, j) + phi_, r.raw(j, i));
    return r;
}

bool WeilMatrix::is_identity() const { return *this == identity(dim_); }

std::string WeilMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) os << (j ? " | " : "") << entry(i, j).str();
        os << "\n";
    }
    return os.str();
}

WeilMatrix kron(const WeilMatrix& a, const WeilMatrix& b) {
    int K = static_cast<int>(lcm_l(a.K_, b.K_));
    WeilMatrix A = a.lifted(K), B = b.lifted(K);
    int n = a.dim_ * b.dim_;
    WeilMatrix r(n, K);
    r.genus = 2;
    r.den_ = checked(static_cast<i128>(A.den_) * B.den_);
    const auto& red = cyclo_detail::reduction_table(K);
    int phi = r.phi_;
    for (int i1 = 0; i1 < a.dim_; ++i1)
        for (int j1 = 0; j1 < a.dim_; ++j1) {
            if (A.entry_is_zero(i1, j1)) continue;
            const long* x = A.raw(i1, j1);
            for (int i2 = 0; i2 < b.dim_; ++i2)
                for (int j2 = 0; j2 < b.dim_; ++j2) {
                    const long* y = B.raw(i2, j2);
                    std::vector<i128> res(phi, 0);
                    for (int s = 0; s < phi; ++s) {
                        if (!x[s]) continue;
                        for (int t = 0; t < phi; ++t) {
                            if (!y[t]) continue;
                            i128 v = static_cast<i128>(x[s]) * y[t];
                            int ex = (s + t) % K;
                            if (ex < phi) res[ex] += v;
                            else
                                for (int u = 0; u < phi; ++u)
                                    if (red[ex][u]) res[u] += v * red[ex][u];
                        }
                    }
                    long* q = r.raw(i1 * b.dim_ + i2, j1 * b.dim_ + j2);
                    for (int u = 0; u < phi; ++u) q[u] = checked(res[u]);
                }
        }
    r.normalize();
    return r;
}

WeilMatrix dual(const WeilMatrix& m) { return m.conj(); }

// ---------------------------------------------------------------- generators

namespace {

long ipow(long b, int e) {
    long r = 1;
    while (e--) r *= b;
    return r;
}

// components of a genus-n index
std::vector<long> split_index(const FQM& D, int n, long idx) {
    std::vector<long> c(n);
    for (int i = n - 1; i >= 0; --i) {
        c[i] = idx % D.order();
        idx /= D.order();
    }
    return c;
}

long join_index(const FQM& D, const std::vector<long>& c) {
    long idx = 0;
    for (long v : c) idx = idx * D.order() + v;
    return idx;
}

// table of c * zeta_N^v lifted into a matrix conductor K with common denominator
struct ScaledRoots {
    int K;
    long den;
    std::vector<std::vector<long>> polys;  // index v
};

ScaledRoots scaled_roots(const CycloNum& c, long N) {
    std::vector<CycloNum> vals;
    long K = c.conductor();
    for (long v = 0; v < N; ++v) {
        vals.push_back(c * root_of_unity(v, N));
        K = lcm_l(K, vals.back().conductor());
    }
    WeilMatrix m = WeilMatrix::from_entries(1, {CycloNum(1)});
    (void)m;
    mpz_class den = 1;
    std::vector<std::vector<mpq_class>> lifted;
    for (auto& x : vals) {
        lifted.push_back(x.lifted(static_cast<int>(K)));
        for (auto& q : lifted.back()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    }
    ScaledRoots sr{static_cast<int>(K), den.get_si(), {}};
    for (auto& l : lifted) {
        std::vector<long> p;
        for (auto& q : l) p.push_back(mpq_class(q * den).get_num().get_si());
        sr.polys.push_back(p);
    }
    return sr;
}

}  // namespace

WeilMatrix rho_generator(const FQM& D, int n, const Letter& g) {
    D.require_enumerable();
    long N = D.level();
    long ord = D.order();
    int dim = static_cast<int>(ipow(ord, n));
    int sig = D.signature_mod_8();
    switch (g.kind) {
        case Letter::T: {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (g.mat[i][j] != g.mat[j][i]) throw Error("T_n(b) requires symmetric b");
            ScaledRoots sr = scaled_roots(CycloNum(1), N);
            WeilMatrix m(dim, sr.K);
            m.genus = n;
            m.set_den(sr.den);
            for (long x = 0; x < dim; ++x) {
                auto c = split_index(D, n, x);
                long v = 0;
                for (int i = 0; i < n; ++i) {
                    v += mod_pos(g.mat[i][i], N) * D.qN(c[i]) % N;
                    for (int j = i + 1; j < n; ++j) v += mod_pos(g.mat[i][j], N) * D.bN(c[i], c[j]) % N;
                }
                const auto& p = sr.polys[mod_pos(v, N)];
                std::copy(p.begin(), p.end(), m.raw(x, x));
            }
            m.normalize();
            return m;
        }
        case Letter::S:
        case Letter::Sinv: {
            CycloNum c = root_of_unity(-n * sig, 8);
            CycloNum r = sqrt_of_integer(ord).pow(n).inverse();
            c = c * r;
            long sign = -1;
            if (g.kind == Letter::Sinv) {
                c = c.conj();
                sign = 1;
            }
            ScaledRoots sr = scaled_roots(c, N);
            WeilMatrix m(dim, sr.K);
            m.genus = n;
            m.set_den(sr.den);
            std::vector<long> btab(static_cast<size_t>(ord) * ord);
            for (long a = 0; a < ord; ++a)
                for (long b = 0; b < ord; ++b) btab[a * ord + b] = D.bN(a, b);
            for (long mu = 0; mu < dim; ++mu) {
                auto cm = split_index(D, n, mu);
                for (long la = 0; la < dim; ++la) {
                    auto cl = split_index(D, n, la);
                    long v = 0;
                    for (int i = 0; i < n; ++i) v += btab[cm[i] * ord + cl[i]];
                    const auto& p = sr.polys[mod_pos(sign * v, N)];
                    std::copy(p.begin(), p.end(), m.raw(mu, la));
                }
            }
            m.normalize();
            return m;
        }
        case Letter::M: {
            IMat ainv = unimodular_inverse(g.mat);
            long det = imat_det(g.mat);
            long chi = (det == -1 && (sig / 2) % 2 == 1) ? -1 : 1;
            WeilMatrix m(dim, 1);
            m.genus = n;
            for (long la = 0; la < dim; ++la) {
                auto cl = split_index(D, n, la);
                std::vector<long> img(n, 0);
                for (int j = 0; j < n; ++j)
                    for (int i = 0; i < n; ++i)
                        img[j] = D.add(img[j], D.scale(cl[i], ainv[i][j]));
                m.raw(join_index(D, img), la)[0] = chi;
            }
            return m;
        }
    }
    return {};
}

WeilMatrix rho_word(const FQM& D, const GroupWord& w) {
    int dim = static_cast<int>(ipow(D.order(), w.genus));
    WeilMatrix r = WeilMatrix::identity(dim);
    r.genus = w.genus;
    for (const auto& l : w.letters) r = r * rho_generator(D, w.genus, l);
    return r;
}

WeilMatrix rho1_matrix(const FQM& D, const Mat2& g) { return rho_word(D, sl2_word(g)); }

WeilMatrix rho2_embed(const FQM& D, const Mat2& g, Direction dir) {
    WeilMatrix r = rho1_matrix(D, g);
    WeilMatrix id = WeilMatrix::identity(static_cast<int>(D.order()));
    WeilMatrix out = (dir == Direction::Up) ? kron(r, id) : kron(id, r);
    out.genus = 2;
    return out;
}

WeilMatrix rho2_U2_offdiag(const FQM& D, long d, bool inverse) {
    D.require_enumerable();
    long ord = D.order(), N = D.level();
    long dd = inverse ? d : -d;
    int dim = static_cast<int>(ord * ord);
    ScaledRoots sr = scaled_roots(CycloNum(mpq_class(1, ord)), N);
    WeilMatrix m(dim, sr.K);
    m.genus = 2;
    m.set_den(sr.den);
    int phi = m.phi();
    for (long l1 = 0; l1 < ord; ++l1)
        for (long l2 = 0; l2 < ord; ++l2) {
            long col = l1 * ord + l2;
            for (long mu = 0; mu < ord; ++mu) {
                long rowa = D.add(D.scale(mu, dd), l1);
                for (long nu = 0; nu < ord; ++nu) {
                    long v = D.bN(mu, D.add(l2, D.neg(nu)));
                    const auto& p = sr.polys[v];
                    long* q = m.raw(rowa * ord + nu, col);
                    for (int t = 0; t < phi; ++t) q[t] += p[t];
                }
            }
        }
    m.normalize();
    return m;
}

WeilMatrix conjugation_tilde(const FQM& D, const GroupWord& w) {
    WeilMatrix t = rho_word(D, w.tilde());
    if (t != dual(rho_word(D, w))) throw Error("conjugation_tilde: rho(tilde w) != dual(rho(w))");
    return t;
}

WeilMatrix scaling_map(const FQM& D, long d) {
    int dim = static_cast<int>(D.order());
    WeilMatrix m(dim, 1);
    for (long la = 0; la < dim; ++la) m.raw(D.scale(la, d), la)[0] = 1;
    return m;
}

CycloNum gauss_ratio(const FQM& D, long d) {
    CycloNum g = gauss_sum(D, 1);
    if (g.is_zero()) throw ZeroGaussSum("g(L) = 0");
    return gauss_sum(D, d) / g;
}

WeilMatrix extended_action(const FQM& D, long d, const GroupWord& left, const GroupWord& right, Variant v) {
    WeilMatrix r = rho_word(D, right).adjoint() * scaling_map(D, d) * rho_word(D, left).adjoint();
    if (v == Variant::D) r = r.scaled(gauss_ratio(D, d));
    return r;
}

DoubleCosetFactor factor_double_coset(const Mat2& delta) {
    long det = delta.det();
    long d = std::lround(std::sqrt(static_cast<double>(det)));
    if (det <= 0 || d * d != det) throw Error("delta must have positive square determinant");
    if (std::gcd(std::gcd(delta.a, delta.b), std::gcd(delta.c, delta.d)) != 1)
        throw Error("delta must be primitive");
    ZMat G = {{delta.a, delta.b}, {delta.c, delta.d}};
    SmithForm sf = smith_normal_form(G);
    Mat2 U{sf.U[0][0].get_si(), sf.U[0][1].get_si(), sf.U[1][0].get_si(), sf.U[1][1].get_si()};
    Mat2 V{sf.V[0][0].get_si(), sf.V[0][1].get_si(), sf.V[1][0].get_si(), sf.V[1][1].get_si()};
    if (U.det() == -1) {
        Mat2 E{-1, 0, 0, 1};
        U = E * U;
        V = V * E;
    }
    // delta = U^{-1} diag(1,d^2) V^{-1} = (U^{-1} S^{-1}) diag(d^2,1) (S V^{-1})
    Mat2 left = U.inv_unimodular() * Mat2::S().inv_unimodular();
    Mat2 right = Mat2::S() * V.inv_unimodular();
    Mat2 Dp{d * d, 0, 0, 1};
    if (left * Dp * right != delta) throw Error("double coset factorization failed");
    return {left, right, d};
}

WeilMatrix extended_inverse_rho(const FQM& D, const Mat2& delta) {
    DoubleCosetFactor f = factor_double_coset(delta);
    return rho1_matrix(D, f.right).adjoint() * scaling_map(D, f.d) * rho1_matrix(D, f.left).adjoint();
}

}  // namespace wz
