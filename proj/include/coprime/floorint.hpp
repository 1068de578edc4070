#pragma once
// Certified floors and fractional parts of expression values at integer
// arguments. Single-monomial expressions with rational or rational*sqrt
// coefficients compile to exact integer arithmetic (root extraction on
// a^q * n^p), which is immune to near-integer rounding traps by construction;
// everything else goes through interval evaluation with precision doubling.

#include "coprime/expr.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace coprime {

struct PrecisionPolicy {
    mpfr_prec_t start_bits = 96;
    mpfr_prec_t max_bits = 4096;
};

// Raised when the precision budget is exhausted with an integer still inside
// the enclosure (the value may be genuinely integral).
struct CertificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FloorResult {
    mpz_class value;
    int escalations = 0;  // precision doublings beyond the starting level
    // Working precision that certified the floor; 0 means the exact
    // integer-arithmetic path was used and no intervals were involved.
    mpfr_prec_t final_bits = 0;
};

class FloorEvaluator {
  public:
    explicit FloorEvaluator(HardyExpr f, PrecisionPolicy policy = {});

    FloorResult floor_eval(uint64_t n) const;
    // Scan fast path; throws std::overflow_error when the floor exceeds int64.
    int64_t floor_i64(uint64_t n) const;
    // {f(d*n)/d} with at least 53 certified bits.
    double frac_eval(uint64_t n, uint64_t d) const;

    bool exact_path() const { return monomial_.has_value(); }
    const HardyExpr& expr() const { return f_; }

  private:
    struct Monomial {
        // f(t) = (a/b) * sqrt(m) * t^(p/q); m = 1 means no radical
        unsigned long a = 1, b = 1, m = 1, p = 0, q = 1;
    };

    HardyExpr f_;
    PrecisionPolicy policy_;
    std::optional<Monomial> monomial_;

    FloorResult floor_ladder(uint64_t n) const;
    double frac_ladder(uint64_t n, uint64_t d) const;
};

FloorResult floor_eval(const HardyExpr& f, uint64_t n, const PrecisionPolicy& policy = {});
double frac_eval(const HardyExpr& f, uint64_t n, uint64_t d,
                 const PrecisionPolicy& policy = {});

}  // namespace coprime
