#ifndef TRIGINV_TOOLS_VERIFY_HPP
#define TRIGINV_TOOLS_VERIFY_HPP

#include "errata.hpp"
#include "serialize.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace triginv::cli {

enum class Status { Pass, Warning, Fail };
const char* status_name(Status s);

struct CheckResult {
    std::string name;
    Status status = Status::Pass;
    std::string detail;
    std::string errata;   // fixture id backing a warning
};

struct VerifyOptions {
    int n = -1;                // flag degree; -1 picks 6 (rank <= 4) or 4
    std::uint64_t seed = 7;
    int trials = 20;
    double tolerance = 1e-7;
    ParamValues oracle_params;
};

struct VerifyReport {
    std::string model;
    std::vector<CheckResult> checks;
    std::size_t entries_checked = 0;
    json mismatches = json::array();

    bool pass() const;
    json to_json() const;
    std::string to_text() const;
};

VerifyReport run_verify(const ChartPtr& chart, const Errata& errata, const VerifyOptions& opt);

/// The default oracle couplings (generic, non-integer), overridden by `given`.
ParamValues oracle_values(const ModelChart& chart, const ParamBinding& given);

} // namespace triginv::cli

#endif
