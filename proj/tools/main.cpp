#include "suites.hpp"

#include "weilzeta/cosets.hpp"
#include "weilzeta/errors.hpp"
#include "weilzeta/hecke.hpp"
#include "weilzeta/series.hpp"
#include "weilzeta/weil.hpp"
#include "weilzeta/zeta.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace wz;
using wzcli::fmt;
using wzcli::Report;

namespace {

cd parse_cd(const std::string& text) {
    std::stringstream ss(text);
    std::string re, im;
    std::getline(ss, re, ',');
    std::getline(ss, im);
    try {
        return {std::stod(re), im.empty() ? 0.0 : std::stod(im)};
    } catch (const std::exception&) {
        throw wzcli::UsageError("expected RE,IM but got '" + text + "'");
    }
}

std::vector<long> parse_list(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stol(tok));
    return out;
}

void print_vector(Report& r, const std::string& key, const CVec& v) {
    for (size_t i = 0; i < v.size(); ++i) r.add(key + "[" + std::to_string(i) + "]", fmt(v[i]));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weil representations, vector valued Siegel Eisenstein series and standard zeta functions"};
    app.require_subcommand(1);
    int precision = 12;
    double tolerance = 0;
    int threads = 0;
    unsigned seed = 1;
    bool json = false;
    app.add_option("--precision", precision, "significant digits of printed values")->check(CLI::Range(1, 17));
    app.add_option("--tolerance", tolerance, "override the check tolerance");
    app.add_option("--threads", threads, "worker threads (0 = hardware)");
    app.add_option("--seed", seed, "seed for randomized exact checks");
    app.add_flag("--json", json, "emit JSON instead of key: value lines");

    std::string lattice, form, eigs, word, kind, s_text = "0,0", tau_text = "0,1.5", zeta_text = "0,1.5",
                                                tau12_text = "0,0", s_values = "1,2,3";
    int l = 0, genus = 1, nodes = 0;
    long height = 0, d = 1, dmax = 0, prime_bound = 1000;

    auto* fqm = app.add_subcommand("fqm", "describe the discriminant form of a lattice");
    fqm->add_option("--lattice", lattice, "Gram matrix file")->required();

    auto* weil = app.add_subcommand("weil", "Weil representation");
    auto* wmatrix = weil->add_subcommand("matrix", "exact matrix of a word");
    weil->require_subcommand(1);
    bool as_float = false;
    wmatrix->add_option("--lattice", lattice)->required();
    wmatrix->add_option("--genus", genus)->check(CLI::Range(1, 2));
    wmatrix->add_option("--word", word, "e.g. S,T(2),m(a=[[0,1],[1,0]])")->required();
    wmatrix->add_flag("--float", as_float, "complex floats instead of exact entries");

    auto* cos = app.add_subcommand("cosets", "coset representatives");
    std::string variant = "Dprime";
    long g_height = 1;
    cos->add_option("--kind", kind, "genus1-borel|genus2-klingen0|hecke-right|gamma1d|gamma-antidiag|garrett")
        ->required();
    cos->add_option("--bound", height, "height for genus1/genus2, d for the other kinds")->required();
    cos->add_option("--variant", variant, "Dprime|D (hecke-right)");
    cos->add_option("--g-height", g_height, "genus-1 height inside garrett");

    auto* series = app.add_subcommand("series", "evaluate truncated series");
    auto* seval = series->add_subcommand("eval", "evaluate one series");
    series->require_subcommand(1);
    seval->add_option("--kind", kind, "E1|E2|Pplus|scriptP|pullback")->required();
    seval->add_option("--lattice", lattice)->required();
    seval->add_option("--l", l)->required();
    seval->add_option("--s", s_text, "RE,IM");
    seval->add_option("--tau", tau_text, "RE,IM (tau_11 for E2)");
    seval->add_option("--tau12", tau12_text, "RE,IM (E2 only)");
    seval->add_option("--zeta", zeta_text, "RE,IM (tau_22 for E2)");
    seval->add_option("--height", height);
    seval->add_option("--d", d);
    seval->add_option("--dmax", dmax);

    auto* hecke = app.add_subcommand("hecke", "Hecke operators on q-expansions");
    auto* heigen = hecke->add_subcommand("eigen", "eigenvalue of T(d^2,1)");
    hecke->require_subcommand(1);
    heigen->add_option("--form", form, "q-expansion file")->required();
    heigen->add_option("--lattice", lattice, "Gram matrix file (default: unimodular)");
    heigen->add_option("--d", d);

    auto* funceq = app.add_subcommand("funceq", "functional equation constants");
    auto* fscalar = funceq->add_subcommand("scalar", "scalar of the genus-2 functional equation");
    funceq->require_subcommand(1);
    fscalar->add_option("--lattice", lattice)->required();
    fscalar->add_option("--l", l)->required();
    fscalar->add_option("--s", s_text);
    fscalar->add_option("--prime-bound", prime_bound);

    auto* zeta = app.add_subcommand("zeta", "standard and completed zeta function");
    zeta->add_option("--eigs", eigs, "lines 'd re im'")->required();
    zeta->add_option("--l", l)->required();
    zeta->add_option("--s", s_text);
    zeta->add_option("--lattice", lattice);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify->add_option("suite", suite, "weil-lemmas|milgram|cosets|hecke|local-factors|pullback|integral-rep|orthogonality|all")
        ->required();
    verify->add_option("--lattice", lattice);
    verify->add_option("--form", form);
    verify->add_option("--l", l);
    verify->add_option("--s", s_text);
    verify->add_option("--tau", tau_text);
    verify->add_option("--zeta", zeta_text);
    verify->add_option("--dmax", dmax);
    verify->add_option("--height", height);
    verify->add_option("--nodes", nodes, "quadrature nodes per axis");

    auto* emit = app.add_subcommand("emit", "emit a stable text table");
    std::string table;
    emit->add_option("table", table, "local-factors|gauss-sums|coset-counts")->required();
    emit->add_option("--lattice", lattice);
    emit->add_option("--dmax", dmax);
    emit->add_option("--s-values", s_values);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    wzcli::g_digits = precision;
    std::string command;
    for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);
    auto preamble = [&](Report& r) {
        std::vector<std::pair<std::string, std::string>> head{{"command", command}};
        for (const auto* path : {&lattice, &form, &eigs})
            if (!path->empty()) head.emplace_back("sha256(" + *path + ")", wzcli::sha256_file(*path));
        r.fields.insert(r.fields.begin(), head.begin(), head.end());
    };

    try {
        Report r;
        cd s = parse_cd(s_text);
        if (*fqm) {
            FQM D = discriminant_form(read_gram_file(lattice));
            r.name = "fqm";
            r.add("elementary_divisors", D.describe());
            r.add("order", std::to_string(D.order()));
            r.add("level", std::to_string(D.level()));
            r.add("signature_mod_8", std::to_string(D.signature_mod_8()));
            r.add("rank", std::to_string(D.lattice_rank()));
            r.add("gauss_sum", gauss_sum(D, 1).str());
            r.add("anisotropic", is_anisotropic(D) ? "yes" : "no");
            r.check("milgram", milgram_holds(D));
        } else if (*weil) {
            FQM D = discriminant_form(read_gram_file(lattice));
            GroupWord w = parse_word(genus, word);
            WeilMatrix m = rho_word(D, w);
            r.name = "weil matrix";
            r.add("word", w.str());
            r.add("genus", std::to_string(genus));
            r.add("dim", std::to_string(m.dim()));
            for (int i = 0; i < m.dim(); ++i)
                for (int j = 0; j < m.dim(); ++j)
                    if (!m.entry_is_zero(i, j))
                        r.add("entry[" + std::to_string(i) + "," + std::to_string(j) + "]",
                              as_float ? fmt(m.entry_cd(i, j)) : m.entry(i, j).str());
            r.check("unitary", (m * m.adjoint()).is_identity());
        } else if (*cos) {
            r.name = "cosets";
            Variant var = variant == "D" ? Variant::D : Variant::Dprime;
            if (variant != "D" && variant != "Dprime") throw wzcli::UsageError("unknown variant " + variant);
            CosetList L;
            if (kind == "genus1-borel")
                L = genus1_cosets(height);
            else if (kind == "genus2-klingen0")
                L = genus2_cosets(height);
            else if (kind == "hecke-right")
                L = hecke_right_cosets(height, var);
            else if (kind == "gamma1d")
                L = gamma1d_cosets(height);
            else if (kind == "gamma-antidiag")
                L = gamma_antidiag_cosets(height);
            else if (kind == "garrett")
                L = garrett_reps(height, g_height);
            else
                throw wzcli::UsageError("unknown coset kind " + kind);
            r.add("kind", kind_name(L.kind));
            r.add("truncation", std::to_string(L.truncation));
            r.add("count", std::to_string(L.size()));
            for (size_t i = 0; i < L.size(); ++i) {
                std::string m = imat_str(L.reps[i].mat);
                if (L.reps[i].denom != 1) m += "/" + std::to_string(L.reps[i].denom);
                r.add("rep[" + std::to_string(i) + "]", m);
            }
        } else if (*series) {
            FQM D = discriminant_form(read_gram_file(lattice));
            cd tau = parse_cd(tau_text), zt = parse_cd(zeta_text);
            r.name = "series " + kind;
            r.add("l", std::to_string(l));
            r.add("s", fmt(s));
            if (!in_convergence_region(kind == "E1" ? 1 : 2, l, s)) r.add("warning", "ConvergenceRegionViolation");
            if (kind == "E1") {
                long h = height ? height : 100;
                r.add("height", std::to_string(h));
                print_vector(r, "E1", eisenstein1(D, l, s, tau, h));
            } else if (kind == "E2") {
                long h = height ? height : 2;
                r.add("height", std::to_string(h));
                print_vector(r, "E2", eisenstein2(D, l, s, Tau2{tau, parse_cd(tau12_text), zt}, h));
            } else if (kind == "Pplus" || kind == "scriptP") {
                PoincareTrunc tr;
                if (height) tr.height = height;
                r.add("height", std::to_string(tr.height));
                r.add("window", std::to_string(tr.window));
                WeilCache1 W(D);
                CVec v = kind == "Pplus" ? poincare_plus(W, l, s, tau, zt, tr) : script_P_plus(W, l, s, tau, zt, d, tr);
                print_vector(r, kind, v);
            } else if (kind == "pullback") {
                PullbackTrunc tr;
                if (height) {
                    tr.g2_height = height;
                    tr.g1_height = 20 * height;
                    tr.p.height = 4 * height;
                }
                PullbackResult res = pullback(D, l, s, tau, zt, dmax ? dmax : 8, tr);
                r.add("dmax", std::to_string(dmax ? dmax : 8));
                r.add("residual", fmt(res.residual));
                print_vector(r, "lhs", res.lhs);
                print_vector(r, "rhs", res.rhs);
            } else {
                throw wzcli::UsageError("unknown series kind " + kind);
            }
        } else if (*hecke) {
            FQM D = lattice.empty() ? discriminant_form(lattice_E8()) : discriminant_form(read_gram_file(lattice));
            QExpansion f = read_qexpansion_file(form);
            validate_qexpansion(f, D);
            EigenvalueResult e = eigenvalue(D, f, d, tolerance > 0 ? tolerance : 1e-8);
            r.name = "hecke eigen";
            r.add("d", std::to_string(d));
            r.add("lambda", fmt(e.lambda));
            r.add("max_deviation", fmt(e.max_deviation));
        } else if (*funceq) {
            FQM D = discriminant_form(read_gram_file(lattice));
            FunctionalScalar fs = functional_scalar(l, s, D, prime_bound);
            r.name = "funceq scalar";
            r.add("prime_bound", std::to_string(prime_bound));
            r.add("xi", fmt(fs.xi));
            for (const auto& [p, v] : fs.local) r.add("local_" + std::to_string(p), fmt(v));
            r.add("value", fmt(fs.value));
            if (!fs.hypotheses_hold) r.add("warning", "module is not anisotropic of odd order");
        } else if (*zeta) {
            FQM D = lattice.empty() ? discriminant_form(lattice_E8()) : discriminant_form(read_gram_file(lattice));
            EigenvalueSeries E = read_eigenvalue_file(eigs);
            cd arg = 2.0 * s + static_cast<double>(l);
            ZetaValue z = standard_zeta(E, arg);
            r.name = "zeta";
            r.add("dmax", std::to_string(z.dmax));
            r.add("Z(2s+l)", fmt(z.value));
            r.add("tail_estimate", fmt(z.tail_estimate));
            r.add("growth_exponent", fmt(z.growth_exponent));
            r.add("K(l,s)", fmt(K_const(l, s, D)));
            r.add("completed", fmt(K_const(l, s, D) * z.value));
        } else if (*verify) {
            wzcli::SuiteConfig cfg;
            cfg.lattice = lattice;
            cfg.form = form;
            cfg.l = l;
            cfg.s = s;
            cfg.tau = parse_cd(tau_text);
            cfg.zeta = parse_cd(zeta_text);
            cfg.dmax = dmax;
            cfg.height = height;
            cfg.tolerance = tolerance;
            cfg.seed = seed;
            cfg.threads = threads;
            cfg.nodes = nodes;
            if (suite == "all") {
                bool ok = true;
                for (auto& rep : wzcli::run_all(cfg)) {
                    preamble(rep);
                    std::cout << (json ? rep.json() : rep.text());
                    std::cerr << rep.name << " seconds: " << fmt(rep.seconds) << "\n";
                    ok = ok && rep.pass;
                }
                return ok ? 0 : 1;
            }
            r = wzcli::run_suite(suite, cfg);
        } else if (*emit) {
            wzcli::SuiteConfig cfg;
            cfg.lattice = lattice;
            cfg.dmax = dmax;
            std::cout << wzcli::emit_table(table, cfg, parse_list(s_values));
            return 0;
        }
        preamble(r);
        std::cout << (json ? r.json() : r.text());
        if (*verify) std::cerr << r.name << " seconds: " << fmt(r.seconds) << "\n";
        return r.pass ? 0 : 1;
    } catch (const wzcli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
