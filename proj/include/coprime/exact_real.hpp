#pragma once
// Exact constants: rational linear combinations over a small atom basis
// (square roots of squarefree integers, pi, e, euler_gamma, logs of primes,
// log pi, log euler_gamma). Closed under +/-, partially closed under * / ^
// (unrepresentable results return nullopt and callers fall back to numerics).
// Sign/order decisions escalate MPFR interval precision until separated.

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <map>
#include <optional>
#include <string>

namespace coprime {

struct Atom {
    enum Kind : int { Sqrt, Pi, E, EulerGamma, LogPrime, LogPi, LogEulerGamma };
    Kind kind;
    unsigned long arg;  // radicand for Sqrt (squarefree, >= 2), prime for LogPrime
    friend auto operator<=>(const Atom&, const Atom&) = default;
};

class ExactReal {
  public:
    ExactReal() = default;  // zero
    ExactReal(long v) : rat_(v) {}
    explicit ExactReal(const mpq_class& q) : rat_(q) { rat_.canonicalize(); }

    // "1.5" / "-0.25" / "1e-4" / "3" parsed as an exact rational.
    static ExactReal from_decimal(const std::string& text);
    // sqrt2 | sqrt3 | pi | e | euler_gamma; throws on unknown name.
    static ExactReal named(const std::string& name);
    static ExactReal sqrt_of(unsigned long n);  // exact sqrt(n), n >= 1
    static ExactReal log_of_atom(Atom::Kind kind);          // log pi / log gamma
    static std::optional<ExactReal> log_of(const ExactReal& x);  // exact log, if representable

    bool is_zero() const { return rat_ == 0 && terms_.empty(); }
    bool is_rational() const { return terms_.empty(); }
    std::optional<mpq_class> as_rational() const;
    std::optional<long> as_integer() const;
    // (k, m) such that the value is exactly k*sqrt(m), m squarefree >= 2.
    std::optional<std::pair<mpq_class, unsigned long>> as_sqrt_multiple() const;

    ExactReal operator-() const;
    ExactReal operator+(const ExactReal& o) const;
    ExactReal operator-(const ExactReal& o) const;
    std::optional<ExactReal> try_mul(const ExactReal& o) const;
    std::optional<ExactReal> try_div(const ExactReal& o) const;
    // Exponent must be rational; exact roots only (sqrt always succeeds via atoms).
    std::optional<ExactReal> try_pow(const ExactReal& exponent) const;

    bool operator==(const ExactReal& o) const {
        return rat_ == o.rat_ && terms_ == o.terms_;
    }
    // Total order; equality is structural (canonical representation), otherwise
    // the sign of the difference is certified by interval evaluation.
    std::strong_ordering compare(const ExactReal& o) const;
    int sign() const;

    // Write a certified enclosure [lo, hi] at the given precision.
    void enclose(mpfr_t lo, mpfr_t hi, mpfr_prec_t bits) const;
    double to_double() const;

    // Expression-grammar-compatible spelling, e.g. "1.5", "sqrt2", "(2/3)",
    // "(1 + sqrt3)"; non-named radicands print as "6^0.5".
    std::string to_text() const;

  private:
    mpq_class rat_;                  // coefficient of 1
    std::map<Atom, mpq_class> terms_;  // coefficient per atom, no zero entries

    void set_term(const Atom& a, const mpq_class& c);
    static std::optional<ExactReal> mul_atoms(const Atom& a, const Atom& b);
    friend struct ExactRealTestPeek;
};

// Rational text helper: exact decimal if the denominator is 2^a 5^b, else "(p/q)".
std::string rational_to_text(const mpq_class& q);

}  // namespace coprime
