#include "coprime/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace coprime {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

void json_kv(std::ostringstream& os, const char* key, const std::string& value,
             bool quote, bool comma = true) {
    os << "  \"" << key << "\": ";
    if (quote) os << '"' << value << '"';
    else os << value;
    if (comma) os << ',';
    os << '\n';
}

}  // namespace

std::string render_report(const DensityReport& report, ReportFormat format) {
    std::ostringstream os;
    if (format == ReportFormat::Csv) {
        os << "n_checkpoint,coprime_count,density,target,abs_error,uncertified\n";
        for (const auto& cp : report.checkpoints) {
            double density = (double)cp.coprime_count / (double)cp.n;
            double abs_error =
                report.target > 0 ? std::abs(density - report.target) : 0.0;
            os << cp.n << ',' << cp.coprime_count << ',' << format_real(density) << ','
               << format_real(report.target) << ',' << format_real(abs_error) << ','
               << cp.uncertified << '\n';
        }
        return os.str();
    }
    os << "{\n";
    json_kv(os, "N", std::to_string(report.N), false);
    json_kv(os, "gcd_arity", std::to_string(report.gcd_arity), false);
    json_kv(os, "coprime_count", std::to_string(report.coprime_count), false);
    json_kv(os, "density", format_real(report.density), false);
    json_kv(os, "target", format_real(report.target), false);
    json_kv(os, "abs_error", format_real(report.abs_error), false);
    json_kv(os, "uncertified_count", std::to_string(report.uncertified_count), false);
    os << "  \"divisor_counts\": {";
    bool first = true;
    for (const auto& [d, S] : report.divis_counts) {
        if (!first) os << ", ";
        os << '"' << d << "\": " << S;
        first = false;
    }
    os << "},\n";
    os << "  \"checkpoints\": [";
    first = true;
    for (const auto& cp : report.checkpoints) {
        if (!first) os << ", ";
        double density = (double)cp.coprime_count / (double)cp.n;
        os << "{\"n\": " << cp.n << ", \"coprime_count\": " << cp.coprime_count
           << ", \"density\": " << format_real(density)
           << ", \"uncertified\": " << cp.uncertified << '}';
        first = false;
    }
    os << "]\n}\n";
    return os.str();
}

std::string render_report(const BoundReport& report, ReportFormat format) {
    std::ostringstream os;
    if (format == ReportFormat::Csv) {
        os << "actual,bound,ratio,formula_kind,Q\n";
        os << format_real(report.actual) << ',' << format_real(report.bound) << ','
           << format_real(report.ratio) << ',' << formula_kind_name(report.kind) << ','
           << report.Q << '\n';
        return os.str();
    }
    os << "{\n";
    json_kv(os, "actual", format_real(report.actual), false);
    json_kv(os, "bound", format_real(report.bound), false);
    json_kv(os, "ratio", format_real(report.ratio), false);
    json_kv(os, "formula_kind", formula_kind_name(report.kind), true);
    json_kv(os, "Q", std::to_string(report.Q), false, false);
    os << "}\n";
    return os.str();
}

std::string render_report(const std::vector<CalibrationRow>& rows, ReportFormat format) {
    std::ostringstream os;
    if (format == ReportFormat::Csv) {
        os << "M,actual,bound,ratio,formula_kind\n";
        for (const auto& r : rows)
            os << r.M << ',' << format_real(r.actual) << ',' << format_real(r.bound)
               << ',' << format_real(r.ratio) << ',' << formula_kind_name(r.kind) << '\n';
        return os.str();
    }
    os << "[\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        os << "  {\"M\": " << r.M << ", \"actual\": " << format_real(r.actual)
           << ", \"bound\": " << format_real(r.bound)
           << ", \"ratio\": " << format_real(r.ratio) << ", \"formula_kind\": \""
           << formula_kind_name(r.kind) << "\"}";
        if (i + 1 < rows.size()) os << ',';
        os << '\n';
    }
    os << "]\n";
    return os.str();
}

std::string render_report(const EtkBound& bound, ReportFormat format) {
    size_t k = bound.weighted_sums.empty() ? 0 : bound.weighted_sums.begin()->first.size();
    std::ostringstream os;
    if (format == ReportFormat::Csv) {
        for (size_t i = 0; i < k; ++i) os << "tau_" << (i + 1) << ',';
        os << "magnitude,weight,contribution\n";
        for (const auto& [tau, mag] : bound.weighted_sums) {
            double weight = 1;
            for (int64_t t : tau) weight /= 1.0 + (double)std::llabs(t);
            for (int64_t t : tau) os << t << ',';
            os << format_real(mag) << ',' << format_real(weight) << ','
               << format_real(weight * mag) << '\n';
        }
        return os.str();
    }
    os << "{\n";
    json_kv(os, "H", std::to_string(bound.H), false);
    json_kv(os, "C_k", format_real(bound.C_k), false);
    json_kv(os, "value", format_real(bound.value), false);
    json_kv(os, "terms", std::to_string(bound.weighted_sums.size()), false, false);
    os << "}\n";
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

template <class R>
void emit_report(const R& report, ReportFormat format, const std::string& path) {
    write_text_file(path, render_report(report, format));
}

template void emit_report<DensityReport>(const DensityReport&, ReportFormat,
                                         const std::string&);
template void emit_report<BoundReport>(const BoundReport&, ReportFormat,
                                       const std::string&);
template void emit_report<std::vector<CalibrationRow>>(const std::vector<CalibrationRow>&,
                                                       ReportFormat, const std::string&);
template void emit_report<EtkBound>(const EtkBound&, ReportFormat, const std::string&);

}  // namespace coprime
