#include "coprime/sieve.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace coprime {

int MobiusTable::mu(uint64_t n) const {
    if (n < 1 || n > limit) throw std::out_of_range("mu: n outside table");
    return values[n];
}

MobiusTable mobius_sieve(uint64_t limit) {
    if (limit < 1) throw std::invalid_argument("mobius_sieve: limit must be >= 1");
    if (limit > (uint64_t(1) << 31))
        throw std::length_error("mobius_sieve: limit exceeds memory budget");
    MobiusTable t;
    t.limit = limit;
    t.values.assign(limit + 1, 0);
    t.values[1] = 1;
    std::vector<uint32_t>& primes = t.primes;
    std::vector<bool> composite(limit + 1, false);
    for (uint64_t i = 2; i <= limit; ++i) {
        if (!composite[i]) {
            primes.push_back((uint32_t)i);
            t.values[i] = -1;
        }
        for (uint32_t p : primes) {
            if (i * p > limit) break;
            composite[i * p] = true;
            if (i % p == 0) {
                t.values[i * p] = 0;
                break;
            }
            t.values[i * p] = -t.values[i];
        }
    }
    return t;
}

namespace {

// mu by trial division; exact for any x whose square part is reachable
int mu_of(uint64_t x) {
    if (x == 0) throw std::invalid_argument("mu_of: zero");
    int k = 0;
    for (uint64_t p = 2; p * p <= x; p += (p == 2 ? 1 : 2)) {
        if (x % p == 0) {
            x /= p;
            if (x % p == 0) return 0;
            ++k;
        }
    }
    if (x > 1) ++k;
    return (k % 2 == 0) ? 1 : -1;
}

}  // namespace

int mu_divisor_sum(uint64_t a) {
    if (a == 0) throw std::invalid_argument("mu_divisor_sum: a must be positive");
    int sum = 0;
    for (uint64_t d = 1; d * d <= a; ++d) {
        if (a % d != 0) continue;
        sum += mu_of(d);
        uint64_t e = a / d;
        if (e != d) sum += mu_of(e);
    }
    return sum;
}

int mu_divisor_sum_through_prime(uint64_t a, uint64_t p) {
    if (a == 0) throw std::invalid_argument("mu_divisor_sum_through_prime: a must be positive");
    if (p < 2 || mu_of(p) != -1 || [&] {
            for (uint64_t q = 2; q * q <= p; ++q)
                if (p % q == 0) return true;
            return false;
        }())
        throw std::invalid_argument("mu_divisor_sum_through_prime: p must be prime");
    int sum = 0;
    for (uint64_t d = 1; d * d <= a; ++d) {
        if (a % d != 0) continue;
        if (d % p == 0) sum += mu_of(d);
        uint64_t e = a / d;
        if (e != d && e % p == 0) sum += mu_of(e);
    }
    return std::abs(sum);
}

Primorial primorial(uint64_t D) {
    if (D < 1) throw std::invalid_argument("primorial: D must be >= 1");
    Primorial r;
    r.D = D;
    r.value = 1;
    if (D >= 2) {
        MobiusTable t = mobius_sieve(D);
        r.primes = t.primes;
        for (uint32_t p : r.primes) r.value *= p;
    }
    return r;
}

ZetaValue zeta(int s, uint64_t partial_terms) {
    if (s < 2) throw std::invalid_argument("zeta: s must be >= 2");
    if (partial_terms < 2) throw std::invalid_argument("zeta: partial length too small");
    // Neumaier-compensated long double sum, ascending values (n descending)
    long double sum = 0.0L, comp = 0.0L;
    for (uint64_t n = partial_terms; n >= 1; --n) {
        long double term = powl((long double)n, (long double)-s);
        long double t = sum + term;
        if (fabsl(sum) >= fabsl(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
    }
    long double partial = sum + comp;
    // integral bracket for the tail: (M+1)^(1-s)/(s-1) <= tail <= M^(1-s)/(s-1)
    long double lo = powl((long double)(partial_terms + 1), (long double)(1 - s)) / (s - 1);
    long double hi = powl((long double)partial_terms, (long double)(1 - s)) / (s - 1);
    ZetaValue z;
    z.s = s;
    z.value = (double)(partial + (lo + hi) / 2);
    z.tail_bound = (double)((hi - lo) / 2) + 1e-14;  // + summation/rounding slack
    return z;
}

ZetaValue zeta(int s) { return zeta(s, uint64_t(1) << 20); }

}  // namespace coprime
