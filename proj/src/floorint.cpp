#include "coprime/floorint.hpp"

#include <cmath>

namespace coprime {

namespace {

using u128 = unsigned __int128;

uint64_t isqrt_u128(u128 x) {
    if (x == 0) return 0;
    u128 r = (u128)std::sqrt((double)x);
    if (r == 0) r = 1;
    r = (r + x / r) >> 1;  // Newton step tames the floating-point estimate
    r = (r + x / r) >> 1;
    // settle exactly
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return (uint64_t)r;
}

uint64_t powmod_u64(uint64_t base, unsigned long e, uint64_t mod) {
    uint64_t acc = 1, b = base % mod;
    while (e) {
        if (e & 1) acc = (uint64_t)((u128)acc * b % mod);
        b = (uint64_t)((u128)b * b % mod);
        e >>= 1;
    }
    return acc;
}

// reusable big-integer scratch; per-thread so concurrent scans never share
struct Scratch {
    mpz_t x, y, t;
    Scratch() {
        mpz_init2(x, 1024);
        mpz_init2(y, 512);
        mpz_init2(t, 512);
    }
    ~Scratch() {
        mpz_clear(x);
        mpz_clear(y);
        mpz_clear(t);
    }
};

Scratch& scratch() {
    static thread_local Scratch s;
    return s;
}

}  // namespace

FloorEvaluator::FloorEvaluator(HardyExpr f, PrecisionPolicy policy)
    : f_(std::move(f)), policy_(policy) {
    if (!f_.valid()) throw std::invalid_argument("FloorEvaluator: empty expression");
    auto nf = normalize(f_);
    if (nf && nf->terms.size() == 1 && nf->terms[0].key.size() <= 1) {
        const auto& term = nf->terms[0];
        ExactReal e0 = term.key.empty() ? ExactReal() : term.key[0];
        auto eq = e0.as_rational();
        mpq_class coeff;
        unsigned long m = 1;
        bool coeff_ok = false;
        if (auto kr = term.coeff.as_rational()) {
            coeff = *kr;
            coeff_ok = true;
        } else if (auto sm = term.coeff.as_sqrt_multiple()) {
            coeff = sm->first;
            m = sm->second;
            coeff_ok = true;
        }
        if (coeff_ok && coeff > 0 && eq && *eq >= 0 && eq->get_num().fits_ulong_p() &&
            eq->get_den().fits_ulong_p() && coeff.get_num().fits_ulong_p() &&
            coeff.get_den().fits_ulong_p()) {
            unsigned long p = eq->get_num().get_ui();
            unsigned long q = eq->get_den().get_ui();
            if (q <= 16 && p <= 64)
                monomial_ = Monomial{coeff.get_num().get_ui(), coeff.get_den().get_ui(), m,
                                     p, q};
        }
    }
}

namespace {

struct MonomialView {
    unsigned long a, b, m, p, q;
};

// floor((a/b) * sqrt(m) * N^(p/q)) by exact root extraction; sets *integral
// when the value is a true integer
void floor_monomial_impl(const MonomialView& mo, uint64_t N, mpz_t out, bool* integral) {
    Scratch& s = scratch();
    if (mo.m == 1 && mo.q == 1) {
        // rational value a*N^p / b
        mpz_ui_pow_ui(s.x, N, mo.p);
        mpz_mul_ui(s.x, s.x, mo.a);
        if (integral) *integral = mpz_divisible_ui_p(s.x, mo.b) != 0;
        mpz_fdiv_q_ui(out, s.x, mo.b);
        return;
    }
    unsigned long deg = mo.m > 1 ? 2 * mo.q : mo.q;
    unsigned long pw = mo.m > 1 ? 2 * mo.p : mo.p;
    unsigned long apow = deg;  // X = a^deg * m^q * N^pw, value = X^(1/deg) / b
    double bits = apow * std::log2((double)mo.a) +
                  (mo.m > 1 ? mo.q * std::log2((double)mo.m) : 0.0) +
                  pw * std::log2((double)std::max<uint64_t>(N, 2));
    if (deg == 2 && bits < 125.0) {
        u128 X = 1;
        for (unsigned long i = 0; i < apow; ++i) X *= mo.a;
        if (mo.m > 1)
            for (unsigned long i = 0; i < mo.q; ++i) X *= mo.m;
        for (unsigned long i = 0; i < pw; ++i) X *= N;
        uint64_t r = isqrt_u128(X);
        bool exact_root = (u128)r * r == X;
        if (integral) *integral = exact_root && r % mo.b == 0;
        mpz_set_ui(out, r / mo.b);
        return;
    }
    mpz_ui_pow_ui(s.x, N, pw);
    if (mo.a != 1) {
        mpz_ui_pow_ui(s.t, mo.a, apow);
        mpz_mul(s.x, s.x, s.t);
    }
    if (mo.m > 1) {
        mpz_ui_pow_ui(s.t, mo.m, mo.q);
        mpz_mul(s.x, s.x, s.t);
    }
    int exact_root = mpz_root(s.y, s.x, deg);
    if (integral) *integral = exact_root != 0 && mpz_divisible_ui_p(s.y, mo.b) != 0;
    mpz_fdiv_q_ui(out, s.y, mo.b);
}

}  // namespace

FloorResult FloorEvaluator::floor_eval(uint64_t n) const {
    if (n == 0) throw std::invalid_argument("floor_eval: n must be positive");
    if (monomial_) {
        FloorResult r;
        bool integral = false;
        MonomialView mo{monomial_->a, monomial_->b, monomial_->m, monomial_->p,
                        monomial_->q};
        floor_monomial_impl(mo, n, r.value.get_mpz_t(), &integral);
        r.escalations = 0;
        r.final_bits = 0;
        return r;
    }
    return floor_ladder(n);
}

int64_t FloorEvaluator::floor_i64(uint64_t n) const {
    FloorResult r = floor_eval(n);
    if (!r.value.fits_slong_p()) throw std::overflow_error("floor_i64: value exceeds int64");
    return r.value.get_si();
}

FloorResult FloorEvaluator::floor_ladder(uint64_t n) const {
    mpfr_prec_t bits = policy_.start_bits;
    int esc = 0;
    for (;;) {
        PreciseValue v = eval(f_, PreciseValue::exact((unsigned long)n, bits));
        mpz_class fl, fh;
        v.floor_endpoints(fl, fh);
        if (fl == fh) return FloorResult{fl, esc, bits};
        if (bits >= policy_.max_bits)
            throw CertificationFailure(
                "floor not certified at " + std::to_string((long)bits) + " bits (n=" +
                std::to_string(n) + "); value may be a true integer");
        bits = std::min<mpfr_prec_t>(bits * 2, policy_.max_bits);
        ++esc;
    }
}

double FloorEvaluator::frac_eval(uint64_t n, uint64_t d) const {
    if (n == 0 || d == 0) throw std::invalid_argument("frac_eval: n, d must be positive");
    if ((u128)n * d > ((u128)1 << 62)) throw std::overflow_error("frac_eval: d*n too large");
    uint64_t N = n * d;
    if (monomial_) {
        const Monomial& mo = *monomial_;
        if (mo.q == 1 && mo.m == 1) {
            // exact rational: {a*N^p / (b*d)} = (a*N^p mod b*d) / (b*d)
            u128 M128 = (u128)mo.b * d;
            if (M128 < ((u128)1 << 63)) {
                uint64_t M = (uint64_t)M128;
                uint64_t r = (uint64_t)((u128)(mo.a % M) * powmod_u64(N % M, mo.p, M) % M);
                if (M < (uint64_t(1) << 52)) return (double)r / (double)M;
                return mpq_class(mpz_class((unsigned long)r), mpz_class((unsigned long)M))
                    .get_d();
            }
        }
        // f(N)/d = X^(1/deg) / B with X = a^deg * m^q * N^(p or 2p), B = b*d.
        // F = floor(X^(1/deg)) exactly; mpz_root's exactness flag settles true
        // integers, and otherwise theta = X^(1/deg) - F is in (0,1) with
        // {f(N)/d} = (F mod B + theta) / B.
        unsigned long deg = mo.m > 1 ? 2 * mo.q : mo.q;
        unsigned long pw = mo.m > 1 ? 2 * mo.p : mo.p;
        mpz_class X, T;
        mpz_ui_pow_ui(X.get_mpz_t(), N, pw);
        if (mo.a != 1) {
            mpz_ui_pow_ui(T.get_mpz_t(), mo.a, deg);
            X *= T;
        }
        if (mo.m > 1) {
            mpz_ui_pow_ui(T.get_mpz_t(), mo.m, mo.q);
            X *= T;
        }
        mpz_class F;
        int exact_root = mpz_root(F.get_mpz_t(), X.get_mpz_t(), deg);
        mpz_class B = mpz_class((unsigned long)mo.b) * mpz_class((unsigned long)d);
        mpz_class r = F % B;
        if (exact_root) {
            mpq_class fr_q(r, B);
            fr_q.canonicalize();
            return fr_q.get_d();
        }
        mpfr_prec_t prec = (mpfr_prec_t)(mpz_sizeinbase(X.get_mpz_t(), 2) + 64);
        PreciseValue z = PreciseValue::exact(X, prec);
        PreciseValue fr = (z.root(deg) - PreciseValue::exact(F, prec) +
                           PreciseValue::exact(r, prec)) /
                          PreciseValue::exact(B, prec);
        double res = fr.mid_double();
        if (res >= 1.0) res = std::nextafter(1.0, 0.0);
        if (res < 0.0) res = 0.0;
        return res;
    }
    return frac_ladder(n, d);
}

double FloorEvaluator::frac_ladder(uint64_t n, uint64_t d) const {
    uint64_t N = n * d;
    mpfr_prec_t bits = policy_.start_bits;
    for (;;) {
        PreciseValue v = eval(f_, PreciseValue::exact((unsigned long)N, bits)) /
                         PreciseValue::exact((unsigned long)d, bits);
        mpz_class fl, fh;
        v.floor_endpoints(fl, fh);
        if (fl == fh) {
            PreciseValue fr = v - PreciseValue::exact(fl, bits);
            if (fr.precision_bits() >= 61) {
                double res = fr.mid_double();
                if (res >= 1.0) res = std::nextafter(1.0, 0.0);
                if (res < 0.0) res = 0.0;
                return res;
            }
        }
        if (bits >= policy_.max_bits)
            throw CertificationFailure(
                "fractional part not certified at " + std::to_string((long)bits) +
                " bits (n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
        bits = std::min<mpfr_prec_t>(bits * 2, policy_.max_bits);
    }
}

FloorResult floor_eval(const HardyExpr& f, uint64_t n, const PrecisionPolicy& policy) {
    return FloorEvaluator(f, policy).floor_eval(n);
}

double frac_eval(const HardyExpr& f, uint64_t n, uint64_t d, const PrecisionPolicy& policy) {
    return FloorEvaluator(f, policy).frac_eval(n, d);
}

}  // namespace coprime
