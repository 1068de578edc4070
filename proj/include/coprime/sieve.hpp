#pragma once
// Integer substrate: linear Mobius/prime sieve, divisor-sum identities,
// primorials, and zeta values with certified tail bounds.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace coprime {

struct MobiusTable {
    uint64_t limit = 0;
    std::vector<int8_t> values;    // values[n] = mu(n) for 1 <= n <= limit
    std::vector<uint32_t> primes;  // all primes <= limit, ascending

    int mu(uint64_t n) const;
};

// Linear (Euler) sieve: O(limit) time, each composite crossed once.
MobiusTable mobius_sieve(uint64_t limit);

// Sum of mu(d) over all divisors d of a, by actual divisor enumeration:
// 1 iff a == 1. Serves as a self-test of the mu computation.
int mu_divisor_sum(uint64_t a);

// |sum of mu(d) over divisors d of a with p | d|: 1 iff a is a positive power
// of p. (The signed sum is -1 on such powers; it is only ever used inside
// absolute values, so the magnitude is the useful quantity.)
int mu_divisor_sum_through_prime(uint64_t a, uint64_t p);

struct Primorial {
    uint64_t D = 1;
    mpz_class value;  // product of all primes <= D (1 when none)
    std::vector<uint32_t> primes;
};

Primorial primorial(uint64_t D);

struct ZetaValue {
    int s = 2;
    double value = 0;
    double tail_bound = 0;  // |value - zeta(s)| <= tail_bound
};

// Partial sum of n^-s plus the midpoint of the integral bracket for the tail;
// the default length keeps tail_bound <= 1e-12 for every s >= 2.
ZetaValue zeta(int s);
ZetaValue zeta(int s, uint64_t partial_terms);

}  // namespace coprime
