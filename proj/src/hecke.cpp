#include "weilzeta/hecke.hpp"

#include "weilzeta/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <regex>
#include <sstream>
#include <thread>

namespace wz {

QExpansion QExpansion::scaled(cd a) const {
    QExpansion r = *this;
    for (auto& c : r.comp)
        for (auto& t : c) t.c *= a;
    return r;
}

QExpansion QExpansion::plus(const QExpansion& o) const {
    if (o.dim() != dim() || o.weight != weight) throw Error("q-expansions are not compatible");
    QExpansion r = *this;
    r.truncation = std::min(truncation, o.truncation);
    for (int k = 0; k < dim(); ++k) {
        for (const auto& t : o.comp[k]) {
            auto it = std::find_if(r.comp[k].begin(), r.comp[k].end(), [&](const QTerm& u) { return u.n == t.n; });
            if (it != r.comp[k].end())
                it->c += t.c;
            else
                r.comp[k].push_back(t);
        }
        std::sort(r.comp[k].begin(), r.comp[k].end(), [](const QTerm& a, const QTerm& b) { return a.n < b.n; });
    }
    return r;
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<long> parse_longs(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            out.push_back(std::stol(tok));
        } catch (const std::exception&) {
            throw ParseError("bad integer '" + tok + "'");
        }
    }
    return out;
}

long dim_of(const std::vector<long>& divs) {
    long n = 1;
    for (long d : divs) n *= d;
    return n;
}

long index_in(const std::vector<long>& divs, const std::vector<long>& r) {
    if (r.size() != divs.size()) throw ParseError("lambda has the wrong length");
    long idx = 0;
    for (size_t i = 0; i < divs.size(); ++i) {
        long v = ((r[i] % divs[i]) + divs[i]) % divs[i];
        idx = idx * divs[i] + v;
    }
    return idx;
}

std::vector<long> element_of(const std::vector<long>& divs, long idx) {
    std::vector<long> r(divs.size());
    for (size_t i = divs.size(); i-- > 0;) {
        r[i] = idx % divs[i];
        idx /= divs[i];
    }
    return r;
}

}  // namespace

QExpansion parse_qexpansion(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    QExpansion f;
    bool header = false;
    static const std::regex head_re(R"(^\s*module:\s*([0-9,\s]*);\s*weight:\s*(-?\d+);\s*truncation:\s*(\d+)\s*$)");
    static const std::regex term_re(
        R"(^\s*lambda=\(([-0-9,\s]*)\);\s*n=(-?\d+(?:/\d+)?);\s*c=([-+0-9.eE]+),([-+0-9.eE]+)\s*$)");
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::smatch m;
        if (!header) {
            if (!std::regex_match(t, m, head_re)) throw ParseError("bad header: " + t);
            auto divs = parse_longs(m[1]);
            for (long d : divs)
                if (d < 1) throw ParseError("elementary divisors must be positive");
            divs.erase(std::remove(divs.begin(), divs.end(), 1L), divs.end());
            f.divisors = divs;
            f.weight = std::stoi(m[2]);
            f.truncation = std::stol(m[3]);
            f.comp.assign(dim_of(divs), {});
            header = true;
            continue;
        }
        if (!std::regex_match(t, m, term_re)) throw ParseError("bad term: " + t);
        auto r = parse_longs(m[1]);
        if (f.divisors.empty() && r.size() == 1 && r[0] == 0) r.clear();
        long idx = index_in(f.divisors, r);
        QTerm term{mpq_class(m[2].str()), cd(std::stod(m[3]), std::stod(m[4]))};
        term.n.canonicalize();
        f.comp[idx].push_back(term);
    }
    if (!header) throw ParseError("missing header");
    for (auto& c : f.comp)
        std::sort(c.begin(), c.end(), [](const QTerm& a, const QTerm& b) { return a.n < b.n; });
    return f;
}

QExpansion read_qexpansion_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_qexpansion(ss.str());
}

std::string format_qexpansion(const QExpansion& f) {
    std::ostringstream out;
    out << "module: ";
    if (f.divisors.empty()) {
        out << "1";
    } else {
        for (size_t i = 0; i < f.divisors.size(); ++i) out << (i ? "," : "") << f.divisors[i];
    }
    out << "; weight: " << f.weight << "; truncation: " << f.truncation << "\n";
    out.precision(17);
    for (int k = 0; k < f.dim(); ++k) {
        auto r = element_of(f.divisors, k);
        std::string lam = "(";
        if (r.empty()) lam += "0";
        for (size_t i = 0; i < r.size(); ++i) lam += (i ? "," : "") + std::to_string(r[i]);
        lam += ")";
        for (const auto& t : f.comp[k])
            out << "lambda=" << lam << "; n=" << t.n.get_str() << "; c=" << t.c.real() << "," << t.c.imag() << "\n";
    }
    return out.str();
}

void validate_qexpansion(const QExpansion& f, const FQM& D) {
    std::vector<long> divs = D.elementary_divisors();
    divs.erase(std::remove(divs.begin(), divs.end(), 1L), divs.end());
    if (divs != f.divisors) throw ParseError("q-expansion module does not match the lattice");
    for (int k = 0; k < f.dim(); ++k) {
        mpq_class q = D.q(k);
        for (const auto& t : f.comp[k]) {
            mpq_class diff = t.n - q;
            diff.canonicalize();
            if (diff.get_den() != 1) throw ParseError("exponent not in q(lambda) + Z");
        }
    }
}

std::vector<mpz_class> ramanujan_tau(long T) {
    // prod (1 - q^n) via the pentagonal number theorem, then the 24th power
    long L = std::max(T, 1L);
    std::vector<mpz_class> eta(L, 0);
    for (long k = 0;; ++k) {
        bool any = false;
        for (long sgn : {1L, -1L}) {
            if (k == 0 && sgn == -1) continue;
            long kk = sgn * k;
            long e = kk * (3 * kk - 1) / 2;
            if (e < L) {
                eta[e] += (k % 2 == 0) ? 1 : -1;
                any = true;
            }
        }
        if (!any) break;
    }
    auto mul = [L](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
        std::vector<mpz_class> c(L, 0);
        for (long i = 0; i < L; ++i) {
            if (a[i] == 0) continue;
            for (long j = 0; i + j < L; ++j)
                if (b[j] != 0) c[i + j] += a[i] * b[j];
        }
        return c;
    };
    auto e2 = mul(eta, eta);
    auto e4 = mul(e2, e2);
    auto e8 = mul(e4, e4);
    auto e16 = mul(e8, e8);
    auto e24 = mul(e16, e8);
    std::vector<mpz_class> tau(T + 1, 0);
    for (long n = 1; n <= T; ++n) tau[n] = e24[n - 1];
    return tau;
}

QExpansion delta_qexpansion(long T) {
    QExpansion f;
    f.weight = 12;
    f.truncation = T;
    f.comp.assign(1, {});
    auto tau = ramanujan_tau(T);
    for (long n = 1; n <= T; ++n) f.comp[0].push_back({mpq_class(n), cd(tau[n].get_d(), 0)});
    return f;
}

CVec eval_form(const QExpansion& f, cd tau, double tol) {
    double y = tau.imag();
    if (y <= 0) throw Error("tau must lie in the upper half plane");
    CVec out(f.dim(), 0.0);
    double tail = 0;
    for (int k = 0; k < f.dim(); ++k) {
        double growth = 0;
        double nmax = 0;
        for (const auto& t : f.comp[k]) {
            double n = t.n.get_d();
            out[k] += t.c * std::exp(cd(0, 2 * kPi) * n * tau);
            if (n > 0) growth = std::max(growth, std::abs(t.c) / std::pow(n, f.weight));
            nmax = std::max(nmax, n);
        }
        if (growth == 0) continue;
        // sum_{n > T} growth * n^l e^{-2 pi n y}; exponents up to the truncation are exact
        double n0 = std::floor(std::max(nmax, static_cast<double>(f.truncation))) + 1;
        double prev = 0;
        for (double n = n0;; n += 1) {
            double term = growth * std::exp(f.weight * std::log(n) - 2 * kPi * n * y);
            tail += term;
            if (term < 1e-30 || (n > n0 + 10 && term < prev && term < 1e-16 * tail)) break;
            prev = term;
            if (n > n0 + 1e6) break;
        }
    }
    if (tail > tol * std::max(1.0, max_abs(out)))
        throw TruncationTooCoarse("estimated tail " + std::to_string(tail) + " at Im(tau) = " + std::to_string(y));
    return out;
}

namespace {

int dim_checked(const FQM& D, const QExpansion& f) {
    if (f.dim() != D.order()) throw Error("q-expansion dimension does not match the module");
    return f.dim();
}

}  // namespace

CVec hecke_at_point(const FQM& D, const QExpansion& f, long d, cd zeta, HeckeVariant v, bool reduce) {
    int n = dim_checked(D, f);
    if (d < 1) throw Error("d must be positive");
    WeilCache1 W(D);
    CosetList R = hecke_right_cosets(d, Variant::Dprime);
    CVec out(n, 0.0);
    int l = f.weight;
    for (const auto& r : R.reps) {
        Mat2 M = mat2_of(r.mat);
        if (reduce) M = reduce_to_fundamental_domain(mobius(M, zeta)) * M;
        cd j = static_cast<double>(M.c) * zeta + static_cast<double>(M.d);
        CVec fv = eval_form(f, mobius(M, zeta));
        const CVec& E = W.extended_inverse(M);
        cd w = std::pow(j, -l);
        for (int mu = 0; mu < n; ++mu) {
            cd acc = 0;
            for (int lam = 0; lam < n; ++lam) acc += E[static_cast<size_t>(mu) * n + lam] * fv[lam];
            out[mu] += w * acc;
        }
    }
    double dd = static_cast<double>(d);
    cd scale = std::pow(dd, l - 2);
    if (v == HeckeVariant::D) scale = std::pow(dd, l) * gauss_ratio(D, d).to_cd();
    for (auto& x : out) x *= scale;
    return out;
}

const std::vector<cd> kProbePoints = {cd(0, 1), cd(0.5, 1), cd(0, 2)};

EigenvalueResult eigenvalue(const FQM& D, const QExpansion& f, long d, double tol) {
    EigenvalueResult res;
    for (cd z : kProbePoints) {
        CVec fz = eval_form(f, z);
        CVec tz = hecke_at_point(D, f, d, z, HeckeVariant::Dprime);
        double scale = max_abs(fz);
        for (size_t k = 0; k < fz.size(); ++k)
            if (std::abs(fz[k]) > 1e-8 * scale) res.ratios.push_back(tz[k] / fz[k]);
    }
    if (res.ratios.empty()) throw NotAnEigenform("form vanishes at every probe point");
    res.lambda = res.ratios.front();
    for (cd r : res.ratios) res.max_deviation = std::max(res.max_deviation, std::abs(r - res.lambda));
    if (res.max_deviation > tol * std::max(1.0, std::abs(res.lambda)))
        throw NotAnEigenform("eigenvalue ratios deviate by " + std::to_string(res.max_deviation));
    return res;
}

namespace {

// nodes and weights of a rule on [a, b] split into equal parts
void rule_1d(QuadRule rule, int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
    x.clear();
    w.clear();
    if (rule == QuadRule::Midpoint) {
        double h = (b - a) / n;
        for (int i = 0; i < n; ++i) {
            x.push_back(a + (i + 0.5) * h);
            w.push_back(h);
        }
        return;
    }
    using GL = boost::math::quadrature::gauss<double, 16>;
    int panels = std::max(1, n / 16);
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double c = a + (p + 0.5) * h;
        for (size_t k = 0; k < GL::abscissa().size(); ++k) {
            double t = GL::abscissa()[k] * h / 2, wk = GL::weights()[k] * h / 2;
            x.push_back(c - t);
            w.push_back(wk);
            if (t != 0) {
                x.push_back(c + t);
                w.push_back(wk);
            }
        }
    }
}

}  // namespace

std::vector<QuadNode> quadrature_nodes(const QuadratureSpec& q) {
    std::vector<QuadNode> nodes;
    std::vector<double> xs, wx, ys, wy;
    rule_1d(q.rule, q.nx, -0.5, 0.5, xs, wx);
    for (size_t i = 0; i < xs.size(); ++i) {
        double y0 = std::sqrt(1 - xs[i] * xs[i]);
        rule_1d(q.rule, q.ny, y0, q.ycut, ys, wy);
        for (size_t j = 0; j < ys.size(); ++j) nodes.push_back({cd(xs[i], ys[j]), wx[i] * wy[j] / (ys[j] * ys[j])});
    }
    return nodes;
}

double quadrature_volume(const QuadratureSpec& q) {
    double s = 0;
    for (const auto& nd : quadrature_nodes(q)) s += nd.w;
    return s + 1.0 / q.ycut;
}

namespace {

// Evaluates fn at each node in parallel and sums weighted contributions in node order.
CVec integrate(const std::vector<QuadNode>& nodes, size_t width, int threads,
               const std::function<CVec(const QuadNode&)>& fn) {
    int T = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    T = std::min<int>(T, static_cast<int>(std::max<size_t>(nodes.size(), 1)));
    std::vector<CVec> vals(nodes.size());
    std::vector<std::exception_ptr> errs(T);
    std::vector<std::thread> pool;
    for (int t = 0; t < T; ++t)
        pool.emplace_back([&, t] {
            try {
                for (size_t k = t; k < nodes.size(); k += T) vals[k] = fn(nodes[k]);
            } catch (...) {
                errs[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    CVec out(width, 0.0);
    for (const auto& v : vals)
        for (size_t i = 0; i < width; ++i) out[i] += v[i];
    return out;
}

CVec petersson_once(const QExpansion& f, const KernelField& G, int l, const QuadratureSpec& q) {
    int n = f.dim();
    auto nodes = quadrature_nodes(q);
    return integrate(nodes, n, q.threads, [&](const QuadNode& nd) {
        CVec fv = eval_form(f, nd.tau);
        CVec g = G(nd.tau);
        if (g.size() != static_cast<size_t>(n) * n) throw Error("kernel has the wrong dimension");
        double wy = nd.w * std::pow(nd.tau.imag(), l);
        CVec r(n, 0.0);
        for (int lam = 0; lam < n; ++lam) {
            cd acc = 0;
            for (int mu = 0; mu < n; ++mu) acc += fv[mu] * std::conj(g[static_cast<size_t>(mu) * n + lam]);
            r[lam] = wy * acc;
        }
        return r;
    });
}

}  // namespace

CVec petersson_integral(const QExpansion& f, const KernelField& G, int l, const QuadratureSpec& q) {
    CVec full = petersson_once(f, G, l, q);
    if (q.check_stability) {
        QuadratureSpec h = q;
        h.nx = std::max(1, q.nx / 2);
        h.ny = std::max(1, q.ny / 2);
        CVec half = petersson_once(f, G, l, h);
        double diff = max_abs_diff(full, half);
        if (diff > q.tol * std::max(max_abs(full), 1e-300) && diff > 1e-14)
            throw QuadratureUnstable("half resolution differs by " + std::to_string(diff) + " relative " + std::to_string(diff / std::max(max_abs(full), 1e-300)));
    }
    return full;
}

cd petersson_product(const KernelField& f, const KernelField& g, int l, const QuadratureSpec& q) {
    auto nodes = quadrature_nodes(q);
    CVec r = integrate(nodes, 1, q.threads, [&](const QuadNode& nd) {
        CVec a = f(nd.tau), b = g(nd.tau);
        cd acc = 0;
        for (size_t k = 0; k < a.size(); ++k) acc += a[k] * std::conj(b[k]);
        return CVec{nd.w * std::pow(nd.tau.imag(), l) * acc};
    });
    return r[0];
}

HeckeScalar hecke_relation_scalar(const FQM& D, long d) {
    CycloNum g = gauss_sum(D, 1), gd = gauss_sum(D, d);
    if (g.is_zero() || gd.is_zero()) throw ZeroGaussSum("g_" + std::to_string(d) + "(L) = 0");
    HeckeScalar h;
    h.g_over_gd = g / gd;
    h.gd_over_g = gd / g;
    h.kappa = h.g_over_gd.conj() * h.gd_over_g;
    h.g_over_gd_root_of_unity = h.g_over_gd.pow(8) == CycloNum(1);
    h.kappa_unit = h.kappa * h.kappa.conj() == CycloNum(1);
    return h;
}

}  // namespace wz
