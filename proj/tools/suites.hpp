#pragma once
#include "weilzeta/fqm.hpp"
#include "weilzeta/numeric.hpp"

#include <string>
#include <utility>
#include <vector>

namespace wzcli {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Report {
    std::string name;
    std::vector<std::pair<std::string, std::string>> fields;
    bool pass = true;
    double seconds = 0;  // wall clock, kept out of the deterministic report
    void add(const std::string& k, const std::string& v) { fields.emplace_back(k, v); }
    void check(const std::string& k, bool ok) {
        add(k, ok ? "PASS" : "FAIL");
        pass = pass && ok;
    }
    std::string text() const;
    std::string json() const;
};

struct SuiteConfig {
    std::string lattice;  // Gram file; empty selects the suite default
    std::string form;     // q-expansion file; empty selects Delta
    int l = 0;            // 0 selects the suite default
    wz::cd s = 0;
    wz::cd tau{0, 1.5}, zeta{0, 1.5};
    long dmax = 0, height = 0;
    double tolerance = 0;  // 0 selects the suite default
    unsigned seed = 1;
    int threads = 0;
    int nodes = 0;
    int precision = 64;
};

std::vector<std::string> suite_names();
Report run_suite(const std::string& name, const SuiteConfig& cfg);
// every suite with the given config, run concurrently; reports in suite_names() order
std::vector<Report> run_all(const SuiteConfig& cfg);

std::vector<std::string> emit_kinds();
std::string emit_table(const std::string& kind, const SuiteConfig& cfg, const std::vector<long>& svals);

extern int g_digits;  // significant digits for printed floats

wz::FQM load_module(const std::string& path, const std::string& fallback);
std::string sha256_file(const std::string& path);
std::string fmt(double x);
std::string fmt(wz::cd z);

}  // namespace wzcli
