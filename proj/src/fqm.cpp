#include "weilzeta/fqm.hpp"

#include "weilzeta/errors.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace wz {

namespace {

using QMat = std::vector<std::vector<mpq_class>>;

QMat to_q(const ZMat& z) {
    QMat r(z.size(), std::vector<mpq_class>(z[0].size()));
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t j = 0; j < z[0].size(); ++j) r[i][j] = z[i][j];
    return r;
}

QMat q_inverse(QMat a) {
    size_t n = a.size();
    for (size_t i = 0; i < n; ++i) {
        a[i].resize(2 * n);
        a[i][n + i] = 1;
    }
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw DegenerateLattice("singular matrix");
        std::swap(a[p], a[c]);
        mpq_class f = 1 / a[c][c];
        for (auto& v : a[c]) v *= f;
        for (size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            mpq_class g = a[r][c];
            for (size_t j = 0; j < 2 * n; ++j) a[r][j] -= g * a[c][j];
        }
    }
    QMat inv(n, std::vector<mpq_class>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

long lcm_l(long a, long b) { return a / std::gcd(a, b) * b; }

}  // namespace

void EvenLattice::validate() const {
    int n = rank();
    for (const auto& r : gram)
        if (static_cast<int>(r.size()) != n) throw ParseError("Gram matrix not square");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (gram[i][j] != gram[j][i]) throw ParseError("Gram matrix not symmetric");
    if (n % 2) throw OddRank("rank " + std::to_string(n));
    for (int i = 0; i < n; ++i)
        if (gram[i][i] % 2 != 0) throw OddDiagonal("entry " + std::to_string(i));
    if (n == 0 || zmat_det(gram) == 0) throw DegenerateLattice("det = 0");
}

EvenLattice parse_gram(const std::string& text) {
    std::istringstream is(text);
    int n;
    if (!(is >> n) || n < 0) throw ParseError("expected dimension on first line");
    EvenLattice L;
    L.gram.assign(n, std::vector<mpz_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::string tok;
            if (!(is >> tok)) throw ParseError("too few Gram entries");
            try {
                L.gram[i][j] = mpz_class(tok);
            } catch (const std::exception&) {
                throw ParseError("bad integer '" + tok + "'");
            }
        }
    return L;
}

EvenLattice read_gram_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_gram(ss.str());
}

EvenLattice lattice_A2() { return parse_gram("2\n2 1\n1 2\n"); }
EvenLattice lattice_diag22() { return parse_gram("2\n2 0\n0 2\n"); }

EvenLattice lattice_E8() {
    return parse_gram(
        "8\n"
        " 2 -1  0  0  0  0  0  0\n"
        "-1  2 -1  0  0  0  0  0\n"
        " 0 -1  2 -1  0  0  0 -1\n"
        " 0  0 -1  2 -1  0  0  0\n"
        " 0  0  0 -1  2 -1  0  0\n"
        " 0  0  0  0 -1  2 -1  0\n"
        " 0  0  0  0  0 -1  2  0\n"
        " 0  0 -1  0  0  0  0  2\n");
}

EvenLattice orthogonal_sum(const EvenLattice& a, const EvenLattice& b) {
    int n = a.rank(), m = b.rank();
    EvenLattice r;
    r.gram.assign(n + m, std::vector<mpz_class>(n + m, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.gram[i][j] = a.gram[i][j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) r.gram[n + i][n + j] = b.gram[i][j];
    return r;
}

EvenLattice lattice_A2A2() { return orthogonal_sum(lattice_A2(), lattice_A2()); }

int lattice_signature(const ZMat& gram) {
    QMat a = to_q(gram);
    size_t n = a.size();
    int pos = 0, negc = 0;
    std::vector<bool> done(n, false);
    for (size_t step = 0; step < n; ++step) {
        // pick an unused index with nonzero diagonal; otherwise create one
        size_t p = n;
        for (size_t i = 0; i < n; ++i)
            if (!done[i] && a[i][i] != 0) { p = i; break; }
        if (p == n) {
            size_t i0 = n, j0 = n;
            for (size_t i = 0; i < n && i0 == n; ++i)
                for (size_t j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && a[i][j] != 0) { i0 = i; j0 = j; break; }
            if (i0 == n) break;
            // row/col i0 += row/col j0 (congruence)
            for (size_t k = 0; k < n; ++k) a[i0][k] += a[j0][k];
            for (size_t k = 0; k < n; ++k) a[k][i0] += a[k][j0];
            p = i0;
        }
        mpq_class piv = a[p][p];
        if (piv > 0) ++pos; else ++negc;
        for (size_t i = 0; i < n; ++i) {
            if (done[i] || i == p || a[i][p] == 0) continue;
            mpq_class f = a[i][p] / piv;
            for (size_t k = 0; k < n; ++k) a[i][k] -= f * a[p][k];
            for (size_t k = 0; k < n; ++k) a[k][i] -= f * a[k][p];
        }
        done[p] = true;
    }
    return pos - negc;
}

FiniteQuadraticModule::FiniteQuadraticModule(std::vector<long> divisors, std::vector<std::vector<mpq_class>> q_matrix,
                                             int signature_mod_8, int lattice_rank, mpz_class gram_det, long cap)
    : divisors_(std::move(divisors)), B_(std::move(q_matrix)), cap_(cap),
      sig8_(((signature_mod_8 % 8) + 8) % 8), rank_(lattice_rank), det_(std::move(gram_det)) {
    order_ = 1;
    for (long d : divisors_) order_ *= d;
    int r = num_generators();
    level_ = 1;
    for (int i = 0; i < r; ++i) {
        mpq_class qi = B_[i][i] / 2;
        level_ = lcm_l(level_, qi.get_den().get_si());
        for (int j = i + 1; j < r; ++j) level_ = lcm_l(level_, mpq_class(B_[i][j]).get_den().get_si());
    }
    BN_.assign(r, std::vector<long>(r, 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            mpq_class v = (i == j) ? mpq_class(B_[i][i] * level_ / 2) : mpq_class(B_[i][j] * level_);
            mpz_class num = v.get_num() % level_;
            BN_[i][j] = mod_pos(num.get_si(), level_);
        }
    if (order_ <= cap_) {
        qtab_.resize(order_);
        for (long x = 0; x < order_; ++x) {
            auto e = element(x);
            long acc = 0;
            for (int i = 0; i < r; ++i) {
                acc += (e[i] * e[i] % level_) * BN_[i][i];
                for (int j = i + 1; j < r; ++j) acc += (e[i] * e[j] % level_) * BN_[i][j];
                acc %= level_;
            }
            qtab_[x] = acc;
        }
    }
}

void FiniteQuadraticModule::require_enumerable() const {
    if (order_ > cap_)
        throw OrderTooLarge("|L'/L| = " + std::to_string(order_) + " exceeds cap " + std::to_string(cap_));
}

std::vector<long> FiniteQuadraticModule::element(long idx) const {
    int r = num_generators();
    std::vector<long> e(r);
    for (int i = r - 1; i >= 0; --i) {
        e[i] = idx % divisors_[i];
        idx /= divisors_[i];
    }
    return e;
}

long FiniteQuadraticModule::index_of(const std::vector<long>& e) const {
    long idx = 0;
    for (int i = 0; i < num_generators(); ++i) idx = idx * divisors_[i] + mod_pos(e[i], divisors_[i]);
    return idx;
}

long FiniteQuadraticModule::add(long x, long y) const {
    auto a = element(x), b = element(y);
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return index_of(a);
}

long FiniteQuadraticModule::neg(long x) const { return scale(x, -1); }

long FiniteQuadraticModule::scale(long x, long d) const {
    auto a = element(x);
    for (size_t i = 0; i < a.size(); ++i) a[i] = mod_pos(a[i] * mod_pos(d, divisors_[i]), divisors_[i]);
    return index_of(a);
}

long FiniteQuadraticModule::qN(long x) const {
    if (!qtab_.empty()) return qtab_[x];
    auto e = element(x);
    long acc = 0;
    int r = num_generators();
    for (int i = 0; i < r; ++i) {
        acc += (e[i] * e[i] % level_) * BN_[i][i];
        for (int j = i + 1; j < r; ++j) acc += (e[i] * e[j] % level_) * BN_[i][j];
        acc %= level_;
    }
    return acc;
}

long FiniteQuadraticModule::bN(long x, long y) const {
    auto a = element(x), b = element(y);
    long acc = 0;
    int r = num_generators();
    for (int i = 0; i < r; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j < r; ++j) {
            if (!b[j]) continue;
            long c = (i == j) ? 2 * BN_[i][i] : BN_[std::min(i, j)][std::max(i, j)];
            acc = (acc + (a[i] * b[j] % level_) * c) % level_;
        }
    }
    return acc;
}

std::string FiniteQuadraticModule::describe() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < divisors_.size(); ++i) os << (i ? "," : "") << divisors_[i];
    os << "]";
    return os.str();
}

FQM discriminant_form(const EvenLattice& L, long cap) {
    L.validate();
    const ZMat& G = L.gram;
    size_t n = G.size();
    SmithForm sf = smith_normal_form(G);
    QMat Uinv = q_inverse(to_q(sf.U));
    QMat Ginv = q_inverse(to_q(G));
    std::vector<long> divs;
    std::vector<std::vector<mpq_class>> ys;
    for (size_t i = 0; i < n; ++i) {
        if (sf.diag[i] <= 1) continue;
        if (!sf.diag[i].fits_slong_p()) throw OrderTooLarge("elementary divisor too large");
        divs.push_back(sf.diag[i].get_si());
        std::vector<mpq_class> y(n);
        for (size_t k = 0; k < n; ++k) y[k] = Uinv[k][i];
        ys.push_back(y);
    }
    size_t r = divs.size();
    std::vector<std::vector<mpq_class>> B(r, std::vector<mpq_class>(r));
    for (size_t a = 0; a < r; ++a)
        for (size_t b = 0; b < r; ++b) {
            mpq_class s = 0;
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) s += ys[a][i] * Ginv[i][j] * ys[b][j];
            B[a][b] = s;
        }
    int sig = lattice_signature(G);
    return FQM(divs, B, sig, static_cast<int>(n), zmat_det(G), cap);
}

CycloNum gauss_sum(const FQM& D, long d) {
    D.require_enumerable();
    long N = D.level();
    std::vector<mpq_class> raw(N);
    for (long x = 0; x < D.order(); ++x) raw[mod_pos((d % N) * D.qN(x), N)] += 1;
    return CycloNum::from_powers(static_cast<int>(N), raw);
}

bool is_anisotropic(const FQM& D) {
    D.require_enumerable();
    for (long x = 1; x < D.order(); ++x)
        if (D.qN(x) == 0) return false;
    return true;
}

FQM p_component(const FQM& D, long p) {
    struct Gen {
        long div, mult;
        int idx;
    };
    std::vector<Gen> gens;
    const auto& divs = D.elementary_divisors();
    for (int i = 0; i < D.num_generators(); ++i) {
        long e = divs[i], pp = 1;
        while (e % p == 0) {
            e /= p;
            pp *= p;
        }
        if (pp > 1) gens.push_back({pp, e, i});
    }
    std::stable_sort(gens.begin(), gens.end(), [](const Gen& a, const Gen& b) { return a.div < b.div; });
    std::vector<long> nd;
    std::vector<std::vector<mpq_class>> B(gens.size(), std::vector<mpq_class>(gens.size()));
    for (size_t a = 0; a < gens.size(); ++a) {
        nd.push_back(gens[a].div);
        for (size_t b = 0; b < gens.size(); ++b)
            B[a][b] = D.q_matrix()[gens[a].idx][gens[b].idx] * gens[a].mult * gens[b].mult;
    }
    // signature of the p-part is not a lattice invariant; keep the parent value for reference
    return FQM(nd, B, D.signature_mod_8(), D.lattice_rank(), D.gram_det(), D.cap());
}

bool milgram_holds(const FQM& D) {
    return gauss_sum(D, 1) == sqrt_of_integer(D.order()) * root_of_unity(D.signature_mod_8(), 8);
}

}  // namespace wz
