#include "mirror/report.hpp"

#include <cstdio>
#include <sstream>

namespace mirror {

Json to_json(const Rational& x) {
    Rational c = x;
    c.canonicalize();
    return Json{{"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}};
}

Json to_json(const Complex& x) { return Json{{"re", format_real(x.real())}, {"im", format_real(x.imag())}}; }

Json to_json(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

Json to_json(const std::vector<Complex>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

namespace {
template <class T>
Json matrix_json(const Matrix<T>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}
}  // namespace

Json to_json(const Matrix<Rational>& m) { return matrix_json(m); }
Json to_json(const Matrix<Complex>& m) { return matrix_json(m); }

Json record_to_json(const CriticalRecord& r) {
    return Json{
        {"chart", r.chart},
        {"coords", to_json(r.coords)},
        {"value", to_json(r.value)},
        {"log_term", to_json(r.log_term)},
        {"grad_residual", format_real(r.grad_residual)},
        {"hessian_min_sv", format_real(r.hessian_min_sv)},
        {"degenerate", r.degenerate},
        {"b", to_json(r.b)},
        {"mu_image", to_json(r.toda)},
        {"conserved", to_json(r.conserved)},
        {"q_extracted", to_json(r.q_extracted)},
        {"stabilizer", Json{{"residual", format_real(r.stabilizer_residual)}, {"ok", r.stabilizer_ok}}},
        {"critical_locus",
         Json{{"upper_residual", format_real(r.locus.upper_residual)}, {"q_residual", format_real(r.locus.q_residual)}, {"ok", r.locus.ok}}},
        {"off_pattern", format_real(r.off_pattern)},
    };
}

std::string status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Degenerate: return "degenerate";
        case Status::Skipped: return "skipped";
    }
    return "fail";
}

std::size_t ReportDocument::count(Status s) const {
    std::size_t n = 0;
    for (const auto& r : rows)
        if (r.status == s) ++n;
    return n;
}

bool ReportDocument::all_pass() const {
    for (const auto& r : rows)
        if (r.status != Status::Pass && r.status != Status::Skipped) return false;
    return true;
}

std::string inputs_digest(const Json& inputs) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : inputs.dump()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string serialize(const ReportDocument& doc, bool include_timings) {
    Json rows = Json::array();
    double total = 0.0;
    for (const auto& r : doc.rows) {
        Json row{{"name", r.name},
                 {"inputs", r.inputs},
                 {"inputs_digest", inputs_digest(r.inputs)},
                 {"status", status_name(r.status)},
                 {"exact", r.exact},
                 {"residual", r.residual ? Json(format_real(*r.residual)) : Json(nullptr)},
                 {"detail", r.detail}};
        if (include_timings) row["seconds"] = format_real(r.seconds);
        total += r.seconds;
        rows.push_back(row);
    }
    Json out{{"tool", "mirror"},
             {"version", kToolVersion},
             {"suite", doc.suite},
             {"config", doc.config},
             {"rows", rows},
             {"records", doc.records},
             {"diagnostics", doc.diagnostics},
             {"summary",
              Json{{"total", doc.rows.size()},
                   {"pass", doc.count(Status::Pass)},
                   {"fail", doc.count(Status::Fail)},
                   {"degenerate", doc.count(Status::Degenerate)},
                   {"skipped", doc.count(Status::Skipped)},
                   {"ok", doc.all_pass()}}}};
    if (include_timings) out["timings"] = Json{{"total_seconds", format_real(total)}};
    return out.dump(2) + "\n";
}

std::string records_csv(const std::vector<CriticalRecord>& records) {
    std::ostringstream os;
    os << "index,chart,value_re,value_im,grad_residual,hessian_min_sv,degenerate,stabilizer_residual,stabilizer_ok,locus_ok\n";
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto& r = records[k];
        os << k << ',' << r.chart << ',' << format_real(r.value.real()) << ',' << format_real(r.value.imag()) << ','
           << format_real(r.grad_residual) << ',' << format_real(r.hessian_min_sv) << ',' << (r.degenerate ? "true" : "false") << ','
           << format_real(r.stabilizer_residual) << ',' << (r.stabilizer_ok ? "true" : "false") << ',' << (r.locus.ok ? "true" : "false")
           << '\n';
    }
    return os.str();
}

}  // namespace mirror
