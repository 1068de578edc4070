#pragma once
// Certified enclosures: [lower, upper] always contains the true value.
// precision_bits reports the tightest p with width <= 2^(1-p) * max(1,|upper|),
// recomputed after every operation so the field is honest by construction.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace coprime {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class PreciseValue {
  public:
    explicit PreciseValue(mpfr_prec_t work_bits = 96);
    PreciseValue(const PreciseValue& o);
    PreciseValue(PreciseValue&& o) noexcept;
    PreciseValue& operator=(PreciseValue o);
    ~PreciseValue();

    static PreciseValue exact(unsigned long v, mpfr_prec_t work_bits);
    static PreciseValue exact(const mpz_class& v, mpfr_prec_t work_bits);
    static PreciseValue of_rational(const mpq_class& q, mpfr_prec_t work_bits);
    // Enclosure whose endpoints `fill` writes in place (lo rounded down,
    // hi rounded up is the caller's contract).
    static PreciseValue from_writer(mpfr_prec_t work_bits,
                                    const std::function<void(mpfr_ptr, mpfr_ptr)>& fill);

    mpfr_srcptr lower() const { return lo_; }
    mpfr_srcptr upper() const { return hi_; }
    mpfr_prec_t work_bits() const { return mpfr_get_prec(lo_); }
    // Largest p such that upper - lower <= 2^(1-p) * max(1, |upper|); the
    // working precision caps it.
    long precision_bits() const;

    PreciseValue operator+(const PreciseValue& o) const;
    PreciseValue operator-(const PreciseValue& o) const;
    PreciseValue operator*(const PreciseValue& o) const;
    PreciseValue operator/(const PreciseValue& o) const;  // o must exclude 0
    PreciseValue neg() const;
    PreciseValue log() const;   // requires lower > 0
    PreciseValue exp() const;
    PreciseValue sqrt() const;  // requires lower >= 0
    PreciseValue root(unsigned long k) const;  // k-th root, requires lower >= 0
    PreciseValue pow_integer(long e) const;
    // exp(e * log(this)); requires lower > 0.
    PreciseValue pow(const PreciseValue& e) const;

    bool contains_integer_strictly_inside() const;
    // floor of both endpoints; floor is certified iff the two agree.
    void floor_endpoints(mpz_class& lo_floor, mpz_class& hi_floor) const;
    bool is_point() const { return mpfr_equal_p(lo_, hi_); }

    double mid_double() const;
    std::string to_text() const;  // "[lo, hi]" diagnostic spelling

  private:
    mpfr_t lo_, hi_;
    void check() const;  // lower <= upper sanity
};

}  // namespace coprime
