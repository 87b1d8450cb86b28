#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qd/descent.hpp"

namespace qd {

struct CurveRecord {
    std::string id;
    bool quartic = false;
    std::vector<Rat> payload; // 15 quartic coefficients, or <= 9 for y^2 = f(x)
    std::optional<long> assumed_rank;
    std::vector<Mat3> transforms;
    std::vector<std::string> warnings;
};

// One JSON object per line; unknown fields are ignored with a warning.
CurveRecord parse_record(const std::string& line, size_t lineno);

CurveInput curve_from_record(const CurveRecord& rec);

struct BatchTallies {
    long records = 0;
    long rank0_pointless = 0; // quotient certified without rational points
    long rank0_elliptic = 0;  // solved through an elliptic quotient
    long rank_positive = 0;
    long not_eligible = 0;
    long undetermined = 0;
    long errors = 0;

    long eligible() const { return rank0_pointless + rank0_elliptic + undetermined; }
};

struct BatchSummary {
    BatchTallies tallies;
    std::map<long, long> histogram; // |C(Q)| over solved records
};

struct BatchOptions {
    SolveOptions solve;
    int jobs = 1;
    std::string schema = "qd-1";
};

struct BatchOutcome {
    BatchSummary summary;
    bool parse_failures = false;
    bool internal_failures = false;

    int exit_code() const { return internal_failures ? 3 : parse_failures ? 2 : 0; }
};

// Reads JSONL records, emits one report per line in input order (whatever the
// worker count), and accumulates the summary.
BatchOutcome run_batch(std::istream& in, std::ostream& reports, const BatchOptions& opt);

enum class SummaryFormat { json, csv };

void emit_summary(const BatchSummary& s, SummaryFormat format, std::ostream& out);

// Full per-curve report as a deterministic JSON string (no trailing newline).
std::string report_json(const std::string& id, const CurveRecord* rec, const SolveResult& r);
std::string error_report_json(const std::string& id, const std::string& code, const std::string& message);

// Converter for colon-separated coefficient lists:
//   <id>:quartic:c1:...:c15          (monomial order of the 15-vector)
//   <id>:hyperelliptic:c0:...:c8     (constant term first)
std::string convert_colon_line(const std::string& line, size_t lineno);

} // namespace qd
