#pragma once

#include "mirror/solver.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mirror {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

Json to_json(const Rational& x);  // {"num", "den"}
Json to_json(const Complex& x);   // {"re", "im"}
Json to_json(const std::vector<Rational>& v);
Json to_json(const std::vector<Complex>& v);
Json to_json(const Matrix<Rational>& m);  // array of rows
Json to_json(const Matrix<Complex>& m);
Json record_to_json(const CriticalRecord& rec);

enum class Status { Pass, Fail, Degenerate, Skipped };
std::string status_name(Status s);

struct ReportRow {
    std::string name;
    Json inputs = Json::object();
    Status status = Status::Pass;
    bool exact = false;
    std::optional<double> residual;  // float rows
    Json detail = Json::object();
    double seconds = 0.0;
};

struct ReportDocument {
    std::string suite;
    Json config = Json::object();
    std::vector<ReportRow> rows;
    Json records = Json::array();
    std::vector<CriticalRecord> critical;  // source of `records`, for the CSV extract
    Json diagnostics = Json::object();

    std::size_t count(Status s) const;
    bool all_pass() const;  // every non-skipped row passes
};

// FNV-1a over the compact dump of the inputs object.
std::string inputs_digest(const Json& inputs);

// Sorted keys, two-space indent, trailing newline. Timings are omitted unless asked for,
// which keeps the bytes a function of config and seed alone.
std::string serialize(const ReportDocument& doc, bool include_timings = false);

// One line per record: index, chart, value, residuals, verdicts.
std::string records_csv(const std::vector<CriticalRecord>& records);

}  // namespace mirror
