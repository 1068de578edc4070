#pragma once
// Expression trees for eventually-monotone functions of a single variable t:
// sums/products/quotients/real powers of t, iterated logarithms, and exact
// constants. Parsing, formatting, interval evaluation, symbolic
// differentiation, asymptotic growth comparison, and the admissibility
// conditions used by the density experiments:
//   (A)  log(t)*log4(t) precedes f
//   (B)  t^(j-1) precedes f precedes t^j for some integer j >= 1
//   (C)  each ratio f_{i+1}/f_i dominates log2(t)^4
// "f precedes g" means g/f -> infinity.

#include "coprime/exact_real.hpp"
#include "coprime/precise_value.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace coprime {

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& what, size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

class HardyExpr {
  public:
    enum class Kind { Const, Var, Add, Sub, Mul, Div, Pow, LogIter };

    struct Node {
        Kind kind;
        ExactReal value;  // Const payload; Pow exponent
        int log_depth = 0;  // LogIter m >= 1
        std::shared_ptr<const Node> a, b;
    };

    HardyExpr() = default;  // empty handle; only assignment is valid

    static HardyExpr constant(ExactReal v);
    static HardyExpr variable();
    static HardyExpr add(HardyExpr x, HardyExpr y);
    static HardyExpr sub(HardyExpr x, HardyExpr y);
    static HardyExpr mul(HardyExpr x, HardyExpr y);
    static HardyExpr div(HardyExpr x, HardyExpr y);
    static HardyExpr pow(HardyExpr base, ExactReal exponent);
    static HardyExpr log_iter(int depth, HardyExpr arg);  // log applied depth times

    const Node* root() const { return root_.get(); }
    bool valid() const { return root_ != nullptr; }
    // Least power of two at which evaluation succeeds and every log argument
    // exceeds e; capped at 2^62 (threshold_capped() reports a cap hit).
    uint64_t t0() const { return t0_; }
    bool threshold_capped() const { return t0_capped_; }

    bool operator==(const HardyExpr& o) const;  // structural tree equality

  private:
    std::shared_ptr<const Node> root_;
    uint64_t t0_ = 1;
    bool t0_capped_ = false;
    explicit HardyExpr(std::shared_ptr<const Node> r);
    friend HardyExpr parse(const std::string&);
};

// --- parse / format -------------------------------------------------------
// Grammar:  expr   := term (('+'|'-') term)*
//           term   := factor (('*'|'/') factor)*
//           factor := atom ['^' exponent]
//           atom   := 't' | number | namedconst | 'log(' expr ')'
//                   | 'log2(' expr ')' | 'log3(' expr ')' | 'log4(' expr ')'
//                   | '(' expr ')'
//           exponent := ['-'] number | namedconst | '(' expr ')'   (constant)
// Numbers are decimal (optionally scientific) and kept as exact rationals.
// Named constants: sqrt2, sqrt3, pi, e, euler_gamma. log(log(t)) normalizes
// to log2(t) when the inner argument is the bare variable chain.
HardyExpr parse(const std::string& source);
std::string format(const HardyExpr& f);

// --- evaluation -----------------------------------------------------------
// Certified enclosure of f(t); works at t's working precision plus guard
// bits. Throws DomainError when a log argument or power base is out of range.
PreciseValue eval(const HardyExpr& f, const PreciseValue& t);
PreciseValue eval_at(const HardyExpr& f, uint64_t n, mpfr_prec_t bits);

// --- differentiation ------------------------------------------------------
HardyExpr differentiate(const HardyExpr& f, int order = 1);

// --- growth order ---------------------------------------------------------
struct GrowthVector {
    // exponents (e0, e1, ..., em) of the leading monomial
    // t^e0 * log(t)^e1 * log2(t)^e2 * ...; lexicographic order decides growth.
    std::vector<ExactReal> exponents;
    std::strong_ordering compare(const GrowthVector& o) const;
};

enum class Ordering { Precedes, Comparable, Dominates, Inconclusive };
enum class Method { Symbolic, NumericSampled };

struct GrowthComparison {
    Ordering order;
    Method method;
    std::string note;  // trend/confidence detail for sampled verdicts
};

// Monomial-sum normal form when it exists: map from exponent vector to
// coefficient. Exposed for tests and the condition checker.
struct NormalForm {
    struct Term {
        std::vector<ExactReal> key;  // same layout as GrowthVector
        ExactReal coeff;
    };
    std::vector<Term> terms;  // sorted by key ascending, no zero coefficients
};
std::optional<NormalForm> normalize(const HardyExpr& f);
std::optional<GrowthVector> growth_vector(const HardyExpr& f);

// Decides f ? g symbolically via normal forms, falling back to sampling g/f
// at t = 2^j (j = sample_lo..sample_hi, needs 8 consecutive monotone steps).
GrowthComparison growth_compare(const HardyExpr& f, const HardyExpr& g,
                                int sample_lo = 10, int sample_hi = 60);

// --- admissibility conditions ----------------------------------------------
enum class Condition { A, B, C };

struct ConditionVerdict {
    Condition condition;
    bool holds = false;
    std::optional<int> witness;  // B only: the integer j
    Method method = Method::Symbolic;
    bool inconclusive = false;
    std::string note;
};

// A, B: one verdict per function. C: one per adjacent pair (needs >= 2).
std::vector<ConditionVerdict> check_condition(const std::vector<HardyExpr>& fs,
                                              Condition which);

// Helper for the polynomial-gap variant of condition B: checks
// |f - p| dominates log(t) for one supplied rational polynomial
// p(t) = c0 + c1 t + ... + cm t^m.
GrowthComparison polynomial_gap_vs_log(const HardyExpr& f,
                                       const std::vector<mpq_class>& coeffs);

}  // namespace coprime
