#include "coprime/expsum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace coprime {

namespace {

constexpr uint64_t kBlockSize = 65536;

struct Neumaier {
    double sum = 0, comp = 0;
    void add(double v) {
        double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct PhaseTerm {
    FloorEvaluator eval;  // of (|tau_i| / r) * f_i
    int sign;
};

void validate(const ExpSumQuery& q) {
    if (q.functions.empty()) throw std::invalid_argument("query has no functions");
    if (q.tau.size() != q.functions.size())
        throw std::invalid_argument("tau length differs from function count");
    if (std::all_of(q.tau.begin(), q.tau.end(), [](int64_t t) { return t == 0; }))
        throw std::invalid_argument("tau is identically zero");
    if (q.r == 0 || q.s == 0) throw std::invalid_argument("r and s must be positive");
    if (q.r < q.s) throw std::invalid_argument("query requires r >= s");
    if (q.lo == 0 || q.hi < q.lo) throw std::invalid_argument("empty summation range");
    if (q.hi > (uint64_t(1) << 62) / q.s)
        throw std::invalid_argument("dilated range exceeds the 64-bit argument budget");
}

std::vector<PhaseTerm> compile_phase(const ExpSumQuery& q) {
    std::vector<PhaseTerm> terms;
    for (size_t i = 0; i < q.functions.size(); ++i) {
        if (q.tau[i] == 0) continue;
        uint64_t mag = q.tau[i] > 0 ? (uint64_t)q.tau[i] : (uint64_t)(-q.tau[i]);
        auto scale = HardyExpr::constant(ExactReal(mpq_class(mag, q.r)));
        terms.push_back(
            {FloorEvaluator(HardyExpr::mul(scale, q.functions[i]), q.policy),
             q.tau[i] > 0 ? 1 : -1});
    }
    return terms;
}

// phase expression (1/r) * sum tau_i f_i for symbolic derivative work
HardyExpr phase_expr(const ExpSumQuery& q) {
    HardyExpr acc;
    bool first = true;
    for (size_t i = 0; i < q.functions.size(); ++i) {
        if (q.tau[i] == 0) continue;
        auto term = HardyExpr::mul(
            HardyExpr::constant(ExactReal(mpq_class(q.tau[i], (long)q.r))),
            q.functions[i]);
        acc = first ? term : HardyExpr::add(acc, term);
        first = false;
    }
    return acc;
}

void sum_block(const std::vector<PhaseTerm>& terms, uint64_t s, uint64_t lo,
               uint64_t hi, double& re_out, double& im_out) {
    Neumaier re, im;
    for (uint64_t n = lo; n <= hi; ++n) {
        double phase = 0;
        for (const auto& pt : terms)
            phase += pt.sign * pt.eval.frac_eval(s * n, 1);
        phase -= std::floor(phase);
        double ang = 2.0 * std::numbers::pi * phase;
        re.add(std::cos(ang));
        im.add(std::sin(ang));
    }
    re_out = re.value();
    im_out = im.value();
}

}  // namespace

const char* formula_kind_name(FormulaKind kind) {
    switch (kind) {
        case FormulaKind::KL: return "KL";
        case FormulaKind::VDC2: return "VDC2";
        case FormulaKind::VDC3PLUS: return "VDC3PLUS";
    }
    return "?";
}

double exp_sum(const ExpSumQuery& query, int threads) {
    validate(query);
    auto terms = compile_phase(query);

    struct Block {
        uint64_t lo, hi;
        double re = 0, im = 0;
    };
    std::vector<Block> blocks;
    for (uint64_t lo = query.lo; lo <= query.hi; ) {
        uint64_t hi = std::min(lo + (kBlockSize - 1), query.hi);
        blocks.push_back({lo, hi, 0, 0});
        lo = hi + 1;
    }

    int nthreads = std::max(1, threads);
    if ((size_t)nthreads > blocks.size()) nthreads = (int)blocks.size();
    if (nthreads <= 1) {
        for (auto& b : blocks) sum_block(terms, query.s, b.lo, b.hi, b.re, b.im);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= blocks.size()) return;
                sum_block(terms, query.s, blocks[i].lo, blocks[i].hi, blocks[i].re,
                          blocks[i].im);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    Neumaier re, im;
    for (const auto& b : blocks) {
        re.add(b.re);
        im.add(b.im);
    }
    return std::hypot(re.value(), im.value());
}

DerivativeWindow certify_window(const HardyExpr& f, int order, double a, double b) {
    if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
    if (!(a >= 1) || !(b >= a)) throw std::invalid_argument("bad certification interval");

    HardyExpr g = differentiate(f, order);
    auto ng = normalize(g);
    if (ng && ng->terms.empty())
        throw std::domain_error("derivative of order " + std::to_string(order) +
                                " is identically zero");
    HardyExpr h = differentiate(g, 1);
    auto nh = normalize(h);

    const mpfr_prec_t bits = 192;
    auto value_at = [&](double t) {
        return eval(g, PreciseValue::of_rational(mpq_class(t), bits)).mid_double();
    };
    if ((double)g.t0() > a)
        throw std::domain_error("interval begins below the derivative's evaluation threshold");

    DerivativeWindow w;
    w.order = order;
    w.a = a;
    w.b = b;

    bool const_sign = nh && !nh->terms.empty();
    if (const_sign)
        for (const auto& term : nh->terms)
            if (term.coeff.sign() != nh->terms.front().coeff.sign()) const_sign = false;
    if (const_sign && (double)h.t0() > a) const_sign = false;

    if (nh && nh->terms.empty()) {
        // g is constant
        double v = value_at(a);
        if (v == 0) throw std::domain_error("derivative vanishes on the interval");
        w.lambda = std::abs(v);
        w.eta = 1.0;
        w.endpoint_exact = true;
        return w;
    }
    if (const_sign) {
        // g monotone: extrema at the endpoints
        double va = value_at(a), vb = value_at(b);
        if (va == 0 || vb == 0 || (va > 0) != (vb > 0))
            throw std::domain_error("derivative changes sign on the interval");
        w.lambda = std::min(std::abs(va), std::abs(vb));
        w.eta = std::max(std::abs(va), std::abs(vb)) / w.lambda;
        w.endpoint_exact = true;
        return w;
    }

    constexpr int kSamples = 256;
    double vmin = 0, vmax = 0;
    bool pos = false;
    for (int j = 0; j <= kSamples; ++j) {
        mpq_class t = mpq_class(a) + (mpq_class(b) - mpq_class(a)) * j / kSamples;
        double v = eval(g, PreciseValue::of_rational(t, bits)).mid_double();
        if (v == 0) throw std::domain_error("derivative vanishes on the interval");
        if (j == 0) {
            pos = v > 0;
            vmin = vmax = std::abs(v);
        } else {
            if ((v > 0) != pos)
                throw std::domain_error("derivative changes sign on the interval");
            vmin = std::min(vmin, std::abs(v));
            vmax = std::max(vmax, std::abs(v));
        }
    }
    w.lambda = vmin * 0.99;
    w.eta = (vmax * 1.01) / w.lambda;
    w.endpoint_exact = false;
    return w;
}

double kusmin_landau_bound(const DerivativeWindow& window, double c_kl) {
    if (window.order != 1)
        throw std::invalid_argument("Kusmin-Landau bound needs a first-derivative window");
    if (!(window.lambda > 0) || !(window.eta >= 1))
        throw std::invalid_argument("bad derivative window");
    double lo = window.lambda, hi = window.eta * window.lambda;
    double base = std::floor(lo);
    if (std::floor(hi) != base)
        throw std::domain_error("derivative range spans an integer; no mod-1 distance bound");
    lo -= base;
    hi -= base;
    double dist = std::min(lo, 1.0 - hi);
    if (!(dist > 0))
        throw std::domain_error("derivative is integer-valued modulo 1 on the interval");
    return c_kl / dist;
}

double vdc2_bound(const DerivativeWindow& window, double length, double c2) {
    if (window.order != 2)
        throw std::invalid_argument("second-derivative bound needs an order-2 window");
    if (!(window.lambda > 0) || !(window.eta >= 1) || !(length >= 0))
        throw std::invalid_argument("bad derivative window");
    return c2 * (length * window.eta * std::sqrt(window.lambda) +
                 1.0 / std::sqrt(window.lambda));
}

double vdc_high_bound(const DerivativeWindow& window, double length, double c_l) {
    if (window.order < 3)
        throw std::invalid_argument("high-order bound needs derivative order >= 3");
    if (window.order > 40) throw std::invalid_argument("derivative order too large");
    if (!(window.lambda > 0) || !(window.eta >= 1) || !(length >= 0))
        throw std::invalid_argument("bad derivative window");
    double Q = std::ldexp(1.0, window.order - 2);
    double t1 = length * std::pow(window.eta * window.eta * window.lambda,
                                  1.0 / (4.0 * Q - 2.0));
    double t2 = std::pow(length, 1.0 - 1.0 / (2.0 * Q)) *
                std::pow(window.eta, 1.0 / (2.0 * Q));
    double t3 = std::pow(length, 1.0 - 2.0 / Q + 1.0 / (Q * Q)) *
                std::pow(window.lambda, -1.0 / (2.0 * Q));
    return c_l * (t1 + t2 + t3);
}

BoundReport bound_vs_actual(const ExpSumQuery& query, int deriv_order, double c) {
    validate(query);
    BoundReport rep;
    rep.actual = exp_sum(query);

    HardyExpr phase = phase_expr(query);
    double s = (double)query.s;
    DerivativeWindow w =
        certify_window(phase, deriv_order, s * (double)query.lo, s * (double)query.hi);
    // the summand's argument is s*n, so each derivative picks up a factor s
    w.lambda *= std::pow(s, deriv_order);
    double length = (double)(query.hi - query.lo);

    if (deriv_order == 1) {
        rep.kind = FormulaKind::KL;
        rep.bound = kusmin_landau_bound(w, c);
    } else if (deriv_order == 2) {
        rep.kind = FormulaKind::VDC2;
        rep.bound = vdc2_bound(w, length, c);
    } else {
        rep.kind = FormulaKind::VDC3PLUS;
        rep.Q = 1 << (deriv_order - 2);
        rep.bound = vdc_high_bound(w, length, c);
    }
    rep.ratio = rep.bound > 0 ? rep.actual / rep.bound : 0.0;
    return rep;
}

std::vector<CalibrationRow> calibration_sweep(const HardyExpr& f, int deriv_order,
                                              uint64_t M0, uint64_t M1, double c) {
    if (M0 == 0 || M1 < M0) throw std::invalid_argument("bad sweep range");
    std::vector<CalibrationRow> rows;
    for (uint64_t M = M0; M <= M1; M *= 2) {
        ExpSumQuery q;
        q.functions = {f};
        q.tau = {1};
        q.r = 1;
        q.s = 1;
        q.lo = M;
        q.hi = 2 * M;
        auto rep = bound_vs_actual(q, deriv_order, c);
        rows.push_back({M, rep.actual, rep.bound, rep.ratio, rep.kind});
        if (M > M1 / 2) break;
    }
    return rows;
}

}  // namespace coprime
