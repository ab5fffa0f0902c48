#pragma once

#include "mirror/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mirror {

struct SuiteConfig {
    enum class Suite { Solve, Braid, Compare, Peterson, Deodhar };
    enum class Mode { Auto, Exact, Float };  // Auto: exact where the suite supports it

    Suite suite = Suite::Solve;
    std::string action;  // deodhar: enumerate | sample | count
    int rank = -1;       // -1: the suite's default grid
    std::vector<int> fixed;
    std::vector<std::string> q, lambda;
    std::size_t samples = 0;  // 0: suite default
    std::uint64_t seed = 42;
    std::optional<double> tol, residual_tol, dedup_radius, degenerate_sv;
    std::size_t starts = 0;
    unsigned threads = 1;
    std::string method = "auto";
    Mode mode = Mode::Auto;
    std::vector<int> word, v;  // deodhar
    std::vector<int> primes;   // deodhar count
    int max_codim = 4;
};

std::string suite_name(SuiteConfig::Suite s);
SuiteConfig::Suite parse_suite(const std::string& name);
SuiteConfig::Mode parse_mode(const std::string& name);
Json config_echo(const SuiteConfig& cfg);

// Throws ConfigError on invalid configuration; InvariantViolation propagates.
ReportDocument run_suite(const SuiteConfig& cfg);

// 0 when every non-skipped row passes, 1 otherwise.
int exit_code_for(const ReportDocument& doc);

// dim H*(G/P) = |W| / |W_P| for type A.
std::size_t expected_critical_count(const Parabolic& P);

// Seed for an independent stream keyed by a label, e.g. ("compare/phase", n).
std::uint64_t stream_seed(std::uint64_t seed, const std::string& label);

}  // namespace mirror
