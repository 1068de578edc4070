#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coprime/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

using namespace coprime;

namespace {

DensityReport watson_1000() {
    TupleSpec s;
    s.functions = {parse("sqrt2*t")};
    s.N = 1000;
    return scan(s);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("reals print at 12 significant digits") {
    CHECK_EQ(format_real(0.5), "0.5");
    CHECK_EQ(format_real(1.0 / 3.0), "0.333333333333");
    CHECK_EQ(format_real(12345.0), "12345");
    CHECK_EQ(format_real(6.079e-05), "6.079e-05");
    CHECK_EQ(format_real(0.60792710185402662866), "0.607927101854");
    CHECK_EQ(format_real(0.0), "0");
    CHECK_EQ(format_real(-2.5), "-2.5");
}

TEST_CASE("density CSV is the checkpoint table") {
    auto rep = watson_1000();
    std::string csv = render_report(rep, ReportFormat::Csv);
    CHECK_EQ(csv,
             "n_checkpoint,coprime_count,density,target,abs_error,uncertified\n"
             "1,1,1,0.607927101854,0.392072898146,0\n"
             "10,6,0.6,0.607927101854,0.00792710185403,0\n"
             "100,60,0.6,0.607927101854,0.00792710185403,0\n"
             "1000,607,0.607,0.607927101854,0.000927101854027,0\n");

    // a report with no checkpoints still carries the header
    DensityReport empty;
    CHECK_EQ(render_report(empty, ReportFormat::Csv),
             "n_checkpoint,coprime_count,density,target,abs_error,uncertified\n");
}

TEST_CASE("density JSON carries the summary and divisor counts") {
    auto rep = watson_1000();
    std::string json = render_report(rep, ReportFormat::Json);
    CHECK(json.find("\"N\": 1000") != std::string::npos);
    CHECK(json.find("\"gcd_arity\": 2") != std::string::npos);
    CHECK(json.find("\"coprime_count\": 607") != std::string::npos);
    CHECK(json.find("\"density\": 0.607") != std::string::npos);
    CHECK(json.find("\"target\": 0.607927101854") != std::string::npos);
    CHECK(json.find("\"uncertified_count\": 0") != std::string::npos);
    CHECK(json.find("\"2\": 251") != std::string::npos);  // S(1000, 2)
    CHECK(json.find("\"checkpoints\"") != std::string::npos);
    CHECK_EQ(json.back(), '\n');
}

TEST_CASE("identical inputs render byte-identically") {
    auto a = watson_1000();
    auto b = watson_1000();
    CHECK_EQ(render_report(a, ReportFormat::Csv), render_report(b, ReportFormat::Csv));
    CHECK_EQ(render_report(a, ReportFormat::Json), render_report(b, ReportFormat::Json));

    // thread count must not leak into the bytes
    TupleSpec s;
    s.functions = {parse("sqrt2*t")};
    s.N = 150000;
    auto ds = default_divisor_set();
    auto one = scan(s, ds, 1);
    auto eight = scan(s, ds, 8);
    CHECK_EQ(render_report(one, ReportFormat::Csv), render_report(eight, ReportFormat::Csv));
    CHECK_EQ(render_report(one, ReportFormat::Json), render_report(eight, ReportFormat::Json));
}

TEST_CASE("bound report emitters") {
    BoundReport rep{1.0, 3.0, FormulaKind::KL, 0, 1.0 / 3.0};
    CHECK_EQ(render_report(rep, ReportFormat::Csv),
             "actual,bound,ratio,formula_kind,Q\n"
             "1,3,0.333333333333,KL,0\n");
    std::string json = render_report(rep, ReportFormat::Json);
    CHECK(json.find("\"formula_kind\": \"KL\"") != std::string::npos);
    CHECK(json.find("\"ratio\": 0.333333333333") != std::string::npos);

    BoundReport v3{10.0, 2316.2277660168, FormulaKind::VDC3PLUS, 2, 0.0043172};
    CHECK(render_report(v3, ReportFormat::Csv).find("VDC3PLUS,2") != std::string::npos);
}

TEST_CASE("calibration table emitter") {
    std::vector<CalibrationRow> rows{{1024, 0.5, 2.0, 0.25, FormulaKind::VDC2},
                                     {2048, 1.0, 8.0, 0.125, FormulaKind::VDC2}};
    CHECK_EQ(render_report(rows, ReportFormat::Csv),
             "M,actual,bound,ratio,formula_kind\n"
             "1024,0.5,2,0.25,VDC2\n"
             "2048,1,8,0.125,VDC2\n");
    CHECK_EQ(render_report(std::vector<CalibrationRow>{}, ReportFormat::Csv),
             "M,actual,bound,ratio,formula_kind\n");
}

TEST_CASE("frequency-table emitter") {
    PointSet zero{1, 4, std::vector<double>(4, 0.0)};
    auto e = etk_bound(zero, 2);
    CHECK_EQ(render_report(e, ReportFormat::Csv),
             "tau_1,magnitude,weight,contribution\n"
             "-2,1,0.333333333333,0.333333333333\n"
             "-1,1,0.5,0.5\n"
             "1,1,0.5,0.5\n"
             "2,1,0.333333333333,0.333333333333\n");
    std::string json = render_report(e, ReportFormat::Json);
    CHECK(json.find("\"H\": 2") != std::string::npos);
    CHECK(json.find("\"value\": 6") != std::string::npos);
    CHECK(json.find("\"terms\": 4") != std::string::npos);

    // two-dimensional frequency vectors widen the header
    PointSet zero2{2, 4, std::vector<double>(8, 0.0)};
    auto e2 = etk_bound(zero2, 1);
    auto csv2 = render_report(e2, ReportFormat::Csv);
    CHECK(csv2.rfind("tau_1,tau_2,magnitude,weight,contribution\n", 0) == 0);
}

TEST_CASE("file emission round-trips the rendered bytes") {
    auto rep = watson_1000();
    const std::string csv_path = "report_roundtrip_tmp.csv";
    const std::string json_path = "report_roundtrip_tmp.json";
    emit_report(rep, ReportFormat::Csv, csv_path);
    emit_report(rep, ReportFormat::Json, json_path);
    CHECK_EQ(slurp(csv_path), render_report(rep, ReportFormat::Csv));
    CHECK_EQ(slurp(json_path), render_report(rep, ReportFormat::Json));
    std::remove(csv_path.c_str());
    std::remove(json_path.c_str());

    const std::string text_path = "report_text_tmp.txt";
    write_text_file(text_path, "line\n");
    CHECK_EQ(slurp(text_path), "line\n");
    std::remove(text_path.c_str());
}
