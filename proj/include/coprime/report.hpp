#pragma once
// Deterministic CSV/JSON emitters: fixed field order, reals at 12 significant
// digits, byte-identical output for identical inputs.

#include "coprime/density.hpp"
#include "coprime/discrepancy.hpp"
#include "coprime/expsum.hpp"

#include <string>
#include <vector>

namespace coprime {

enum class ReportFormat { Csv, Json };

std::string format_real(double v);  // %.12g

// Density CSV rows are the checkpoints, header exactly
// n_checkpoint,coprime_count,density,target,abs_error,uncertified
std::string render_report(const DensityReport& report, ReportFormat format);
std::string render_report(const BoundReport& report, ReportFormat format);
std::string render_report(const std::vector<CalibrationRow>& rows, ReportFormat format);
std::string render_report(const EtkBound& bound, ReportFormat format);

template <class R>
void emit_report(const R& report, ReportFormat format, const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace coprime
