#include "coprime/precise_value.hpp"

#include <algorithm>
#include <cmath>

namespace coprime {

PreciseValue::PreciseValue(mpfr_prec_t work_bits) {
    mpfr_init2(lo_, work_bits);
    mpfr_init2(hi_, work_bits);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

PreciseValue::PreciseValue(const PreciseValue& o) {
    mpfr_init2(lo_, mpfr_get_prec(o.lo_));
    mpfr_init2(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

PreciseValue::PreciseValue(PreciseValue&& o) noexcept {
    mpfr_init2(lo_, 2);
    mpfr_init2(hi_, 2);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

PreciseValue& PreciseValue::operator=(PreciseValue o) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

PreciseValue::~PreciseValue() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

void PreciseValue::check() const {
    if (mpfr_greater_p(lo_, hi_))
        throw std::logic_error("PreciseValue: lower exceeds upper");
}

PreciseValue PreciseValue::exact(unsigned long v, mpfr_prec_t work_bits) {
    PreciseValue r(work_bits);
    mpfr_set_ui(r.lo_, v, MPFR_RNDD);
    mpfr_set_ui(r.hi_, v, MPFR_RNDU);
    return r;
}

PreciseValue PreciseValue::exact(const mpz_class& v, mpfr_prec_t work_bits) {
    PreciseValue r(work_bits);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
}

PreciseValue PreciseValue::of_rational(const mpq_class& q, mpfr_prec_t work_bits) {
    PreciseValue r(work_bits);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

PreciseValue PreciseValue::from_writer(mpfr_prec_t work_bits,
                                       const std::function<void(mpfr_ptr, mpfr_ptr)>& fill) {
    PreciseValue r(work_bits);
    fill(r.lo_, r.hi_);
    r.check();
    return r;
}

long PreciseValue::precision_bits() const {
    mpfr_prec_t wb = work_bits();
    mpfr_t width, scale;
    mpfr_inits2(64, width, scale, (mpfr_ptr) nullptr);
    mpfr_sub(width, hi_, lo_, MPFR_RNDU);
    mpfr_abs(scale, hi_, MPFR_RNDU);
    if (mpfr_cmp_ui(scale, 1) < 0) mpfr_set_ui(scale, 1, MPFR_RNDN);
    long p;
    if (mpfr_zero_p(width)) {
        p = wb;
    } else {
        // width <= 2^(1-p) * scale  <=>  p <= 1 - log2(width/scale)
        mpfr_div(width, width, scale, MPFR_RNDU);
        mpfr_log2(width, width, MPFR_RNDU);
        double l = mpfr_get_d(width, MPFR_RNDU);
        p = (long)std::floor(1.0 - l);
        p = std::min<long>(p, wb);
    }
    mpfr_clears(width, scale, (mpfr_ptr) nullptr);
    return std::max<long>(p, 1);
}

PreciseValue PreciseValue::operator+(const PreciseValue& o) const {
    PreciseValue r(std::max(work_bits(), o.work_bits()));
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

PreciseValue PreciseValue::operator-(const PreciseValue& o) const {
    PreciseValue r(std::max(work_bits(), o.work_bits()));
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

PreciseValue PreciseValue::neg() const {
    PreciseValue r(work_bits());
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

PreciseValue PreciseValue::operator*(const PreciseValue& o) const {
    PreciseValue r(std::max(work_bits(), o.work_bits()));
    // min/max over the four endpoint products, each with directed rounding
    mpfr_t c[4];
    for (auto& m : c) mpfr_init2(m, r.work_bits());
    mpfr_mul(c[0], lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(c[1], lo_, o.hi_, MPFR_RNDD);
    mpfr_mul(c[2], hi_, o.lo_, MPFR_RNDD);
    mpfr_mul(c[3], hi_, o.hi_, MPFR_RNDD);
    mpfr_set(r.lo_, c[0], MPFR_RNDD);
    for (int i = 1; i < 4; ++i)
        if (mpfr_less_p(c[i], r.lo_)) mpfr_set(r.lo_, c[i], MPFR_RNDD);
    mpfr_mul(c[0], lo_, o.lo_, MPFR_RNDU);
    mpfr_mul(c[1], lo_, o.hi_, MPFR_RNDU);
    mpfr_mul(c[2], hi_, o.lo_, MPFR_RNDU);
    mpfr_mul(c[3], hi_, o.hi_, MPFR_RNDU);
    mpfr_set(r.hi_, c[0], MPFR_RNDU);
    for (int i = 1; i < 4; ++i)
        if (mpfr_greater_p(c[i], r.hi_)) mpfr_set(r.hi_, c[i], MPFR_RNDU);
    for (auto& m : c) mpfr_clear(m);
    r.check();
    return r;
}

PreciseValue PreciseValue::operator/(const PreciseValue& o) const {
    if (mpfr_sgn(o.lo_) <= 0 && mpfr_sgn(o.hi_) >= 0)
        throw DomainError("interval division by an interval containing zero");
    PreciseValue inv(o.work_bits());
    mpfr_ui_div(inv.lo_, 1, o.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, o.lo_, MPFR_RNDU);
    return *this * inv;
}

PreciseValue PreciseValue::log() const {
    if (mpfr_sgn(lo_) <= 0)
        throw DomainError("log of an interval touching (-inf, 0]");
    PreciseValue r(work_bits());
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

PreciseValue PreciseValue::exp() const {
    PreciseValue r(work_bits());
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

PreciseValue PreciseValue::sqrt() const {
    if (mpfr_sgn(lo_) < 0) throw DomainError("sqrt of a negative interval");
    PreciseValue r(work_bits());
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

PreciseValue PreciseValue::root(unsigned long k) const {
    if (k == 0) throw DomainError("0th root");
    if (mpfr_sgn(lo_) < 0) throw DomainError("root of a negative interval");
    PreciseValue r(work_bits());
    mpfr_rootn_ui(r.lo_, lo_, k, MPFR_RNDD);
    mpfr_rootn_ui(r.hi_, hi_, k, MPFR_RNDU);
    return r;
}

PreciseValue PreciseValue::pow_integer(long e) const {
    if (e == 0) return exact(1ul, work_bits());
    PreciseValue base = *this;
    bool invert = e < 0;
    unsigned long k = invert ? (unsigned long)(-e) : (unsigned long)e;
    PreciseValue acc = exact(1ul, work_bits());
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    if (invert) return exact(1ul, work_bits()) / acc;
    return acc;
}

PreciseValue PreciseValue::pow(const PreciseValue& e) const {
    return (log() * e).exp();
}

bool PreciseValue::contains_integer_strictly_inside() const {
    mpz_class fl, fh;
    floor_endpoints(fl, fh);
    return fl != fh;
}

void PreciseValue::floor_endpoints(mpz_class& lo_floor, mpz_class& hi_floor) const {
    mpfr_t t;
    mpfr_init2(t, mpfr_get_prec(lo_));
    mpfr_floor(t, lo_);
    mpfr_get_z(lo_floor.get_mpz_t(), t, MPFR_RNDD);
    mpfr_set_prec(t, mpfr_get_prec(hi_));
    mpfr_floor(t, hi_);
    mpfr_get_z(hi_floor.get_mpz_t(), t, MPFR_RNDD);
    mpfr_clear(t);
}

double PreciseValue::mid_double() const {
    mpfr_t m;
    mpfr_init2(m, work_bits());
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_ui(m, m, 2, MPFR_RNDN);
    double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

std::string PreciseValue::to_text() const {
    char* ls = nullptr;
    char* hs = nullptr;
    mpfr_asprintf(&ls, "%.20Rg", lo_);
    mpfr_asprintf(&hs, "%.20Rg", hi_);
    std::string out = std::string("[") + ls + ", " + hs + "]";
    mpfr_free_str(ls);
    mpfr_free_str(hs);
    return out;
}

}  // namespace coprime
