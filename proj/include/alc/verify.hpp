#ifndef ALC_VERIFY_HPP
#define ALC_VERIFY_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "alc/json_io.hpp"

namespace alc::verify {

struct Options {
    std::uint64_t seed = 42;
    unsigned poset_size = 7;     // max points of random posets
    unsigned cases = 200;        // iterations per randomized suite
    std::uint32_t prime_bound = 97;
    unsigned power_bound = 8;
    bool parallel = true;        // fan out cases over OpenMP threads
};

struct CaseFailure {
    std::uint64_t case_index = 0;
    std::string what;
    Json payload;  // inputs and observed/expected values
};

struct SuiteReport {
    std::string suite;
    unsigned cases = 0;
    std::vector<CaseFailure> failures;

    bool passed() const { return failures.empty(); }
};

const std::vector<std::string>& suite_names();

SuiteReport run_suite(std::string_view name, const Options& opts);

std::vector<SuiteReport> run_all(const Options& opts);

Json report_to_json(const SuiteReport& report, const Options& opts);
Json reports_to_json(const std::vector<SuiteReport>& reports, const Options& opts);

}  // namespace alc::verify

#endif
