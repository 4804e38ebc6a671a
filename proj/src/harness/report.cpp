#include "stark/harness/report.hpp"

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "stark/harness/decimal.hpp"

namespace stark::harness {

bool Report::engine_failed() const {
    return std::any_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.failed; });
}

bool Report::checks_failed() const {
    return std::any_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return !v.pass; });
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string trace_table(const rpm::ConvergenceTrace& trace, int digits, const char* sep) {
    std::ostringstream os;
    for (const rpm::TraceRow& r : trace.rows) {
        os << r.dim << sep << r.energy.re.to_string(digits) << sep << r.energy.im.to_string(digits) << sep
           << (r.log10_rel_re ? format_decimal(*r.log10_rel_re, 6) : "") << sep
           << (r.log10_rel_im ? format_decimal(*r.log10_rel_im, 6) : "") << "\n";
    }
    return os.str();
}

}  // namespace

std::string render_csv(const Report& report) {
    if (report.config.method == Method::converge && report.trace)
        return convergence_csv(*report.trace, report.trace_digits);
    std::ostringstream os;
    os << "method,ReE,Gamma,source\n";
    for (const ResultRow& r : report.rows)
        os << csv_field(r.method) << ',' << csv_field(r.re) << ',' << csv_field(r.gamma) << ','
           << csv_field(r.source) << "\n";
    return os.str();
}

std::string render_json(const Report& report) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["verb"] = method_name(report.config.method);
    j["F"] = report.config.field;
    j["state"] = report.config.state.ket();
    j["rows"] = ordered_json::array();
    for (const ResultRow& r : report.rows) {
        ordered_json row;
        row["method"] = r.method;
        row["ReE"] = r.re;
        row["Gamma"] = r.gamma;
        row["source"] = r.source;
        if (!r.re_uncertainty.empty()) row["ReE_uncertainty"] = r.re_uncertainty;
        if (!r.gamma_uncertainty.empty()) row["Gamma_rel_uncertainty"] = r.gamma_uncertainty;
        if (!r.note.empty()) row["note"] = r.note;
        if (r.failed) row["failed"] = true;
        j["rows"].push_back(row);
    }
    if (report.trace) {
        ordered_json rows = ordered_json::array();
        for (const rpm::TraceRow& r : report.trace->rows) {
            ordered_json t;
            t["D"] = r.dim;
            t["ReE"] = r.energy.re.to_string(report.trace_digits);
            t["ImE"] = r.energy.im.to_string(report.trace_digits);
            t["log10_rel_dRe"] = r.log10_rel_re ? format_decimal(*r.log10_rel_re, 6) : "";
            t["log10_rel_dIm"] = r.log10_rel_im ? format_decimal(*r.log10_rel_im, 6) : "";
            rows.push_back(t);
        }
        j["trace"] = rows;
    }
    if (!report.verdicts.empty()) {
        j["verdicts"] = ordered_json::array();
        for (const Verdict& v : report.verdicts)
            j["verdicts"].push_back(ordered_json{{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
    }
    return j.dump(2) + "\n";
}

std::string render_md(const Report& report) {
    std::ostringstream os;
    os << "## " << method_name(report.config.method) << " " << report.config.state.ket() << " F = "
       << report.config.field << "\n\n";
    if (report.trace) {
        os << "| D | Re E | Im E | log10 rel dRe | log10 rel dIm |\n|---|---|---|---|---|\n";
        std::string body = trace_table(*report.trace, report.trace_digits, " | ");
        std::istringstream lines(body);
        for (std::string line; std::getline(lines, line);) os << "| " << line << " |\n";
        os << "\n";
    }
    if (!report.rows.empty()) {
        os << "| method | Re E | Gamma | source |\n|---|---|---|---|\n";
        for (const ResultRow& r : report.rows)
            os << "| " << r.method << " | " << r.re << " | " << r.gamma << " | " << r.source << " |\n";
        bool any_note = false;
        for (const ResultRow& r : report.rows)
            if (!r.note.empty()) {
                if (!any_note) os << "\n";
                any_note = true;
                os << "- " << r.method << " (" << r.source << "): " << r.note << "\n";
            }
    }
    if (!report.verdicts.empty()) {
        os << "\n";
        for (const Verdict& v : report.verdicts)
            os << (v.pass ? "PASS " : "FAIL ") << v.name << ": " << v.detail << "\n";
    }
    return os.str();
}

std::string render(const Report& report, Format format) {
    switch (format) {
        case Format::csv: return render_csv(report);
        case Format::json: return render_json(report);
        case Format::md: return render_md(report);
    }
    return {};
}

std::string convergence_csv(const rpm::ConvergenceTrace& trace, int digits) {
    return "D,ReE,ImE,log10_rel_dRe,log10_rel_dIm\n" + trace_table(trace, digits, ",");
}

void emit_convergence(const rpm::ConvergenceTrace& trace, int digits, const std::string& path) {
    if (trace.rows.empty()) throw std::invalid_argument("empty convergence trace");
    write_text(path, convergence_csv(trace, digits));
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + ": " + std::strerror(errno));
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace stark::harness
