#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mharm/congruence.hpp"
#include "mharm/suite.hpp"

namespace mharm {

// Report emission. Schemas are fixed: one record per check with fields
// {check_id, params, modulus_p, modulus_r, lhs, rhs, status, elapsed_ms},
// in that order; CSV mirrors the same columns with params as "k=v;k=v".
// with_timing=false omits elapsed_ms so identical runs are byte-identical.

using ordered_json = nlohmann::ordered_json;

inline double round_ms(double ms) { return std::round(ms * 1000.0) / 1000.0; }

inline ordered_json result_to_json(const CheckResult& r, bool with_timing) {
    ordered_json j;
    j["check_id"] = r.check_id;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    j["modulus_p"] = r.modulus_p;
    j["modulus_r"] = r.modulus_r;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["status"] = to_string(r.status);
    if (with_timing) j["elapsed_ms"] = round_ms(r.elapsed_ms);
    return j;
}

inline std::string params_to_csv(const std::map<std::string, long long>& params) {
    std::string out;
    for (const auto& [k, v] : params) {
        if (!out.empty()) out += ';';
        out += k + "=" + std::to_string(v);
    }
    return out;
}

inline std::string csv_header() {
    return "check_id,params,modulus_p,modulus_r,lhs,rhs,status,elapsed_ms";
}

inline std::string result_to_csv(const CheckResult& r, bool with_timing) {
    std::string line = r.check_id + "," + params_to_csv(r.params) + "," +
                       std::to_string(r.modulus_p) + "," + std::to_string(r.modulus_r) + "," +
                       std::to_string(r.lhs) + "," + std::to_string(r.rhs) + "," +
                       to_string(r.status) + ",";
    if (with_timing) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", round_ms(r.elapsed_ms));
        line += buf;
    }
    return line;
}

struct SuiteSummary {
    long long pass = 0, fail = 0, mismatch = 0, skipped = 0;
    double total_ms = 0.0;

    void add(const CheckResult& r) {
        switch (r.status) {
            case CheckStatus::pass: ++pass; break;
            case CheckStatus::fail: ++fail; break;
            case CheckStatus::paper_mismatch_documented: ++mismatch; break;
            case CheckStatus::skipped: ++skipped; break;
        }
        total_ms += r.elapsed_ms;
    }

    // trailing record in the same schema; status reflects the whole run
    CheckResult as_record() const {
        CheckResult r;
        r.check_id = "_summary";
        r.params = {{"pass", pass},
                    {"fail", fail},
                    {"paper_mismatch_documented", mismatch},
                    {"skipped", skipped}};
        r.status = fail == 0 ? CheckStatus::pass : CheckStatus::fail;
        r.elapsed_ms = total_ms;
        return r;
    }
};

inline void emit_report(std::ostream& out, const std::vector<CheckResult>& results,
                        SuiteConfig::Format format, bool with_timing) {
    SuiteSummary summary;
    for (const auto& r : results) summary.add(r);
    if (format == SuiteConfig::Format::csv) {
        out << csv_header() << "\n";
        for (const auto& r : results) out << result_to_csv(r, with_timing) << "\n";
        out << result_to_csv(summary.as_record(), with_timing) << "\n";
    } else {
        for (const auto& r : results) out << result_to_json(r, with_timing).dump() << "\n";
        out << result_to_json(summary.as_record(), with_timing).dump() << "\n";
    }
}

}  // namespace mharm
