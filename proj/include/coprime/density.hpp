#pragma once
// The core experiment: scan n <= N, compute xi_n = gcd(n, floor f_1(n), ...,
// floor f_k(n)), and measure coprimality density against 1/zeta(k+1),
// divisibility counts S(N,d), the truncated-sieve identity, and prime tails.
// Scans are deterministic for any thread count: work splits into fixed blocks
// that are merged in range order.

#include "coprime/expr.hpp"
#include "coprime/floorint.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace coprime {

struct TupleSpec {
    std::vector<HardyExpr> functions;
    uint64_t N = 0;
    uint64_t D = 1;  // truncation bound for the sieve decomposition
    PrecisionPolicy policy{};
    // true: gcd(n, floors...) with target 1/zeta(k+1);
    // false: gcd of the floors alone with target 1/zeta(k)
    bool include_n = true;

    size_t k() const { return functions.size(); }
    int gcd_arity() const { return (int)functions.size() + (include_n ? 1 : 0); }
    uint64_t t0() const;  // max threshold over the functions
};

struct DensityReport {
    uint64_t N = 0;
    int gcd_arity = 0;
    uint64_t coprime_count = 0;
    double density = 0;
    double target = 0;  // 1/zeta(gcd_arity), 0 when the arity is below 2
    double abs_error = 0;
    std::map<uint64_t, uint64_t> divis_counts;  // d -> S(N,d)
    uint64_t uncertified_count = 0;

    struct Checkpoint {
        uint64_t n = 0;
        uint64_t coprime_count = 0;
        uint64_t uncertified = 0;
        std::map<uint64_t, uint64_t> divis_counts;  // S(n,d) snapshot
    };
    std::vector<Checkpoint> checkpoints;  // powers of ten and N, ascending
};

struct SieveDecomposition {
    uint64_t D = 1;
    mpz_class primorial;
    int64_t sigma1 = 0;          // sum over d | primorial of mu(d) * S(N,d)
    uint64_t A_DN_direct = 0;    // |{n <= N : gcd(xi_n, primorial) = 1}|
    double target_partial = 0;   // sum over d | primorial of mu(d)/d^arity
    uint64_t uncertified_count = 0;
};

// gcd(n, floors) with gcd(a,0) = a; nullopt when a floor fails certification.
std::optional<uint64_t> xi(const TupleSpec& spec, uint64_t n);

std::vector<uint64_t> default_divisor_set();  // {1..64} plus primes <= 256

DensityReport scan(const TupleSpec& spec, const std::vector<uint64_t>& divisor_set,
                   int threads = 1);
DensityReport scan(const TupleSpec& spec);  // default divisors, one thread

struct Deviation {
    double raw = 0;         // S(N,d) - N/d^arity
    double normalized = 0;  // d * |raw| / N
};
std::map<uint64_t, Deviation> divisibility_deviation(const DensityReport& report);

// Exact identity check: sigma1 == A_DN_direct always (inclusion-exclusion
// over squarefree d | primorial(D), uncertified n excluded from both sides).
SieveDecomposition truncated_sieve(const TupleSpec& spec);

// (1/N) * sum of S(N,p) over primes D < p <= P_max.
double prime_tail(const TupleSpec& spec, uint64_t D, uint64_t P_max);

}  // namespace coprime
