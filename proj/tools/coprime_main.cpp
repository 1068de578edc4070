// Command-line front end: growth-condition checks, density scans, sieve
// identities, exponential sums and van der Corput bounds, discrepancy, and
// the named experiment presets.

#include "coprime/density.hpp"
#include "coprime/discrepancy.hpp"
#include "coprime/expsum.hpp"
#include "coprime/presets.hpp"
#include "coprime/report.hpp"
#include "coprime/sieve.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>

namespace {

using namespace coprime;

std::vector<HardyExpr> parse_functions(const std::vector<std::string>& sources) {
    std::vector<HardyExpr> fs;
    for (const auto& s : sources) fs.push_back(parse(s));
    if (fs.empty()) throw CLI::ValidationError("--funcs", "no functions given");
    return fs;
}

const char* condition_name(Condition c) {
    switch (c) {
        case Condition::A: return "A";
        case Condition::B: return "B";
        case Condition::C: return "C";
    }
    return "?";
}

void print_verdicts(const std::vector<ConditionVerdict>& vs) {
    for (size_t i = 0; i < vs.size(); ++i) {
        const auto& v = vs[i];
        std::printf("  [%s #%zu] %s%s", condition_name(v.condition), i + 1,
                    v.inconclusive ? "inconclusive" : (v.holds ? "holds" : "fails"),
                    v.method == Method::Symbolic ? " (symbolic)" : " (sampled)");
        if (v.witness) std::printf(" j=%d", *v.witness);
        if (!v.note.empty()) std::printf(": %s", v.note.c_str());
        std::printf("\n");
    }
}

// The scanned statistic is bounded by E(N) = N, so the truncated-sieve
// admissibility window is primorial(D) <= min{N/log^5 N, log2^2 N}.
void warn_primorial_budget(uint64_t D, uint64_t N) {
    if (D < 2 || N < 3) return;
    double prim = 1;
    for (uint32_t p : mobius_sieve(D).primes) prim *= (double)p;
    double logN = std::log((double)N);
    double log2N = std::log2((double)N);
    double cap = std::min((double)N / std::pow(logN, 5.0), log2N * log2N);
    if (prim > cap)
        std::fprintf(stderr,
                     "warning: primorial(%llu) = %.0f exceeds the admissibility cap "
                     "min{N/log^5 N, log2^2 N} = %.3f at N = %llu; identities remain "
                     "exact, asymptotic bounds need not apply\n",
                     (unsigned long long)D, prim, cap, (unsigned long long)N);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"floor-gcd coprimality density toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file mirroring the flags; flags win");

    int threads = 1;
    app.add_option("--threads", threads, "worker threads for scans and sums")
        ->envname("COPRIME_THREADS");
    PrecisionPolicy policy;
    int prec_start = (int)policy.start_bits, prec_max = (int)policy.max_bits;
    app.add_option("--prec-start-bits", prec_start, "starting interval precision");
    app.add_option("--prec-max-bits", prec_max, "precision escalation ceiling");

    std::vector<std::string> funcs;
    uint64_t N = 0, D = 1;

    // conditions
    auto* cond = app.add_subcommand("conditions", "check growth conditions A/B/C");
    cond->add_option("--funcs", funcs, "expressions, fastest-growing last")->required();

    // density
    auto* density = app.add_subcommand("density", "coprimality density scans");
    density->require_subcommand(1);
    auto* dscan = density->add_subcommand("scan", "scan xi_n = gcd(n, floors) to N");
    bool estermann = false;
    std::string out_prefix;
    dscan->add_option("--funcs", funcs, "tuple of expressions")->required();
    dscan->add_option("--N", N, "scan limit")->required();
    dscan->add_option("--D", D, "sieve truncation bound (for the budget warning)");
    dscan->add_flag("--estermann", estermann, "gcd of the floors only, target 1/zeta(k)");
    dscan->add_option("--out", out_prefix, "write <out>.csv and <out>.json");
    auto* dsieve = density->add_subcommand("sieve-identity",
                                           "exact sigma1 == A_direct decomposition");
    dsieve->add_option("--funcs", funcs, "tuple of expressions")->required();
    dsieve->add_option("--N", N, "scan limit")->required();
    dsieve->add_option("--D", D, "truncation bound")->required();

    // expsum
    auto* expsum_cmd = app.add_subcommand("expsum", "exponential sums and bounds");
    expsum_cmd->require_subcommand(1);
    std::vector<int64_t> tau;
    uint64_t r = 1, s = 1, lo = 1, hi = 0;
    int deriv_order = 2;
    double c_cal = 1.0;
    uint64_t M0 = 1 << 10, M1 = 1 << 20;
    auto* eeval = expsum_cmd->add_subcommand("eval", "|sum e((1/r)<f(sn),tau>)|");
    eeval->add_option("--funcs", funcs)->required();
    eeval->add_option("--tau", tau, "integer frequency per function")->required();
    eeval->add_option("--r", r);
    eeval->add_option("--s", s);
    eeval->add_option("--lo", lo);
    eeval->add_option("--hi", hi)->required();
    auto* ebound = expsum_cmd->add_subcommand("bound", "derivative-test bound vs actual");
    ebound->add_option("--funcs", funcs)->required();
    ebound->add_option("--tau", tau)->required();
    ebound->add_option("--r", r);
    ebound->add_option("--s", s);
    ebound->add_option("--lo", lo);
    ebound->add_option("--hi", hi)->required();
    ebound->add_option("--deriv-order", deriv_order, "derivative order (1=KL, 2, 3+)");
    ebound->add_option("--c", c_cal, "calibration constant");
    auto* ecal = expsum_cmd->add_subcommand("calibrate", "dyadic [M,2M] ratio sweep");
    std::string sweep;
    ecal->add_option("--func", funcs, "single expression")->required();
    ecal->add_option("--deriv-order", deriv_order)->required();
    ecal->add_option("--sweep", sweep, "M0..M1 (powers of two recommended)");
    ecal->add_option("--c", c_cal, "calibration constant");
    ecal->add_option("--out", out_prefix, "write <out>.csv and <out>.json");

    // discrepancy
    auto* disc = app.add_subcommand("discrepancy", "point sets in [0,1)^k");
    disc->require_subcommand(1);
    uint64_t H = 32, count = 10000, dd = 1;
    double Ck = 0;
    auto* detk = disc->add_subcommand("etk", "Erdos-Turan-Koksma bound");
    detk->add_option("--funcs", funcs)->required();
    detk->add_option("--d", dd, "divisor scaling of theta_{d,n}");
    detk->add_option("--N", count, "number of points");
    detk->add_option("--H", H, "frequency cutoff");
    detk->add_option("--C", Ck, "constant C_k (default 3^k)");
    detk->add_option("--out", out_prefix, "write <out>.csv and <out>.json");
    auto* dstar = disc->add_subcommand("star", "exact star discrepancy (k <= 2)");
    dstar->add_option("--funcs", funcs)->required();
    dstar->add_option("--d", dd, "divisor scaling");
    dstar->add_option("--max-n", count, "number of points (budget 10^4)");

    // sieve
    auto* sieve_cmd = app.add_subcommand("sieve", "Mobius / zeta / primorial utilities");
    sieve_cmd->require_subcommand(1);
    uint64_t nval = 0;
    uint32_t sval = 2;
    uint64_t terms = 0;
    auto* smu = sieve_cmd->add_subcommand("mu", "Mobius function");
    smu->add_option("--n", nval, "argument")->required();
    auto* szeta = sieve_cmd->add_subcommand("zeta", "zeta(s) with certified tail");
    szeta->add_option("--s", sval, "integer s >= 2")->required();
    szeta->add_option("--terms", terms, "partial-sum length (default 2^20)");
    auto* sprim = sieve_cmd->add_subcommand("primorial", "product of primes <= D");
    sprim->add_option("--D", D, "bound")->required();

    // preset
    auto* preset = app.add_subcommand("preset", "named experiments");
    preset->require_subcommand(1);
    auto* prun = preset->add_subcommand("run", "run one preset");
    std::string preset_name;
    int tuple_k = 2;
    double tol = 0;
    prun->add_option("name", preset_name, "preset name")->required();
    prun->add_option("--N", N, "override scan limit");
    prun->add_option("--k", tuple_k, "tuple-k arity (2 or 3)");
    prun->add_option("--tol", tol, "override tolerance");
    prun->add_option("--out", out_prefix, "report prefix (default: preset name)");
    bool list_presets = false;
    prun->add_flag("--list", list_presets, "list preset names and exit");

    CLI11_PARSE(app, argc, argv);

    policy.start_bits = prec_start;
    policy.max_bits = prec_max;
    if (threads < 1) threads = 1;

    try {
        if (*cond) {
            auto fs = parse_functions(funcs);
            for (auto which : {Condition::A, Condition::B, Condition::C}) {
                if (which == Condition::C && fs.size() < 2) {
                    std::printf("condition C: needs at least two functions\n");
                    continue;
                }
                std::printf("condition %s:\n", condition_name(which));
                print_verdicts(check_condition(fs, which));
            }
            return 0;
        }
        if (*dscan) {
            TupleSpec spec;
            spec.functions = parse_functions(funcs);
            spec.N = N;
            spec.D = D;
            spec.include_n = !estermann;
            spec.policy = policy;
            warn_primorial_budget(D, N);
            auto rep = scan(spec, default_divisor_set(), threads);
            std::printf("N=%llu coprime=%llu density=%s target=%s abs_error=%s uncertified=%llu\n",
                        (unsigned long long)rep.N, (unsigned long long)rep.coprime_count,
                        format_real(rep.density).c_str(), format_real(rep.target).c_str(),
                        format_real(rep.abs_error).c_str(),
                        (unsigned long long)rep.uncertified_count);
            if (!out_prefix.empty()) {
                emit_report(rep, ReportFormat::Csv, out_prefix + ".csv");
                emit_report(rep, ReportFormat::Json, out_prefix + ".json");
            }
            bool uncert_ok = (double)rep.uncertified_count <= 1e-4 * (double)rep.N;
            if (!uncert_ok)
                std::fprintf(stderr, "error: uncertified count exceeds 1e-4 * N\n");
            return uncert_ok ? 0 : 1;
        }
        if (*dsieve) {
            TupleSpec spec;
            spec.functions = parse_functions(funcs);
            spec.N = N;
            spec.D = D;
            spec.policy = policy;
            warn_primorial_budget(D, N);
            auto dec = truncated_sieve(spec);
            std::printf("D=%llu primorial=%s sigma1=%lld A_direct=%llu match=%s\n",
                        (unsigned long long)dec.D, dec.primorial.get_str().c_str(),
                        (long long)dec.sigma1, (unsigned long long)dec.A_DN_direct,
                        dec.sigma1 == (int64_t)dec.A_DN_direct ? "yes" : "NO");
            return dec.sigma1 == (int64_t)dec.A_DN_direct ? 0 : 1;
        }
        if (*eeval || *ebound) {
            ExpSumQuery q;
            q.functions = parse_functions(funcs);
            q.tau = tau;
            q.r = r;
            q.s = s;
            q.lo = lo;
            q.hi = hi;
            q.policy = policy;
            if (*eeval) {
                std::printf("actual=%s\n", format_real(exp_sum(q, threads)).c_str());
                return 0;
            }
            auto rep = bound_vs_actual(q, deriv_order, c_cal);
            std::printf("actual=%s bound=%s ratio=%s kind=%s Q=%d\n",
                        format_real(rep.actual).c_str(), format_real(rep.bound).c_str(),
                        format_real(rep.ratio).c_str(), formula_kind_name(rep.kind),
                        rep.Q);
            if (!out_prefix.empty()) {
                emit_report(rep, ReportFormat::Csv, out_prefix + ".csv");
                emit_report(rep, ReportFormat::Json, out_prefix + ".json");
            }
            return 0;
        }
        if (*ecal) {
            if (!sweep.empty()) {
                auto dots = sweep.find("..");
                if (dots == std::string::npos)
                    throw CLI::ValidationError("--sweep", "expected M0..M1");
                M0 = std::stoull(sweep.substr(0, dots));
                M1 = std::stoull(sweep.substr(dots + 2));
            }
            auto rows = calibration_sweep(parse_functions(funcs).front(), deriv_order,
                                          M0, M1, c_cal);
            std::fputs(render_report(rows, ReportFormat::Csv).c_str(), stdout);
            if (!out_prefix.empty()) {
                emit_report(rows, ReportFormat::Csv, out_prefix + ".csv");
                emit_report(rows, ReportFormat::Json, out_prefix + ".json");
            }
            return 0;
        }
        if (*detk || *dstar) {
            TupleSpec spec;
            spec.functions = parse_functions(funcs);
            spec.policy = policy;
            auto ps = theta_points(spec, dd, count);
            if (*dstar) {
                std::printf("star=%s\n",
                            format_real(star_discrepancy_bruteforce(ps)).c_str());
                return 0;
            }
            auto etk = etk_bound(ps, H, Ck);
            std::printf("etk=%s H=%llu C_k=%s terms=%zu\n", format_real(etk.value).c_str(),
                        (unsigned long long)etk.H, format_real(etk.C_k).c_str(),
                        etk.weighted_sums.size());
            if (!out_prefix.empty()) {
                emit_report(etk, ReportFormat::Csv, out_prefix + ".csv");
                emit_report(etk, ReportFormat::Json, out_prefix + ".json");
            }
            return 0;
        }
        if (*smu) {
            MobiusTable table = mobius_sieve(nval);
            std::printf("mu(%llu)=%d\n", (unsigned long long)nval, table.mu(nval));
            return 0;
        }
        if (*szeta) {
            ZetaValue z = terms ? zeta(sval, terms) : zeta(sval);
            std::printf("zeta(%u)=%.18f tail_bound=%.3e 1/zeta=%.18f\n", sval, z.value,
                        z.tail_bound, 1.0 / z.value);
            return 0;
        }
        if (*sprim) {
            std::printf("primorial(%llu)=%s\n", (unsigned long long)D,
                        primorial(D).value.get_str().c_str());
            return 0;
        }
        if (*prun) {
            if (list_presets) {
                for (const auto& n : preset_names()) std::printf("%s\n", n.c_str());
                return 0;
            }
            PresetOptions opt;
            opt.N = N;
            opt.k = tuple_k;
            opt.threads = threads;
            opt.tolerance = tol;
            opt.policy = policy;
            opt.out_prefix = out_prefix.empty() ? preset_name : out_prefix;
            auto outcome = run_preset(preset_name, opt);
            std::printf("%s\n", outcome.summary.c_str());
            return preset_exit_code(outcome);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
