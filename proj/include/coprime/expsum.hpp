#pragma once
// Exponential sums sum_n e((1/r) <f(sn), tau>) with certified phases, van der
// Corput derivative-test bounds (Kusmin-Landau for order 1, the second- and
// higher-order derivative tests above that), and calibration sweeps comparing
// actual magnitudes against the bound formulas.

#include "coprime/expr.hpp"
#include "coprime/floorint.hpp"

#include <cstdint>
#include <vector>

namespace coprime {

struct ExpSumQuery {
    std::vector<HardyExpr> functions;
    std::vector<int64_t> tau;  // frequency vector, not all zero
    uint64_t r = 1;            // phase denominator, r >= s
    uint64_t s = 1;            // argument dilation
    uint64_t lo = 1, hi = 0;   // inclusive summation range
    PrecisionPolicy policy{};
};

// Certified lambda < |f^(order)(t)| <= eta*lambda on [a, b].
struct DerivativeWindow {
    int order = 1;
    double lambda = 0;
    double eta = 1;
    double a = 0, b = 0;
    // true when the next derivative has constant sign, so the extrema sit at
    // the endpoints and lambda/eta carry no sampling margin
    bool endpoint_exact = false;
};

enum class FormulaKind { KL, VDC2, VDC3PLUS };
const char* formula_kind_name(FormulaKind kind);

struct BoundReport {
    double actual = 0;
    double bound = 0;
    FormulaKind kind = FormulaKind::KL;
    int Q = 0;  // 2^(order-2), nonzero only for VDC3PLUS
    double ratio = 0;
};

// |sum e(phase_n)| with phase_n = (1/r) * sum_i tau_i f_i(s*n), each fractional
// part certified to >= 53 bits; magnitude error is below (hi-lo+1) * 2^-48.
double exp_sum(const ExpSumQuery& query, int threads = 1);

// Window for f^(order) on [a, b]: endpoint-exact when f^(order+1) has constant
// symbolic sign, otherwise 257-point sampling with a 1% margin on lambda.
// Throws if the derivative vanishes identically or changes sign.
DerivativeWindow certify_window(const HardyExpr& f, int order, double a, double b);

// c / dist(f', Z): the window's [lambda, eta*lambda] is reduced mod 1 and must
// stay clear of the integers.
double kusmin_landau_bound(const DerivativeWindow& window, double c_kl = 1.0);

// c * (|I| * eta * lambda^(1/2) + lambda^(-1/2)) for order 2.
double vdc2_bound(const DerivativeWindow& window, double length, double c2 = 1.0);

// Order >= 3, Q = 2^(order-2):
// c * (|I| (eta^2 lambda)^(1/(4Q-2)) + |I|^(1-1/(2Q)) eta^(1/(2Q))
//      + |I|^(1-2/Q+1/Q^2) lambda^(-1/(2Q))).
double vdc_high_bound(const DerivativeWindow& window, double length, double c_l = 1.0);

// Certify the phase's derivative window over the query range and compare the
// actual magnitude against the formula selected by deriv_order.
BoundReport bound_vs_actual(const ExpSumQuery& query, int deriv_order, double c = 1.0);

struct CalibrationRow {
    uint64_t M = 0;
    double actual = 0;
    double bound = 0;
    double ratio = 0;
    FormulaKind kind = FormulaKind::KL;
};

// Ranges [M, 2M] for M = M0, 2*M0, ..., <= M1 with unit tau/r/s.
std::vector<CalibrationRow> calibration_sweep(const HardyExpr& f, int deriv_order,
                                              uint64_t M0, uint64_t M1, double c = 1.0);

}  // namespace coprime
