#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coprime/sieve.hpp"

#include <cmath>
#include <numbers>

using namespace coprime;

TEST_CASE("mobius sieve values") {
    auto t = mobius_sieve(1000);
    CHECK_EQ(t.mu(1), 1);
    CHECK_EQ(t.mu(2), -1);
    CHECK_EQ(t.mu(6), 1);
    CHECK_EQ(t.mu(12), 0);   // 2^2 | 12
    CHECK_EQ(t.mu(30), -1);  // three prime factors
    CHECK_EQ(t.mu(100), 0);
    CHECK_EQ(t.mu(997), -1);  // prime

    int m10 = 0, m100 = 0;
    for (int n = 1; n <= 10; ++n) m10 += t.mu(n);
    for (int n = 1; n <= 100; ++n) m100 += t.mu(n);
    CHECK_EQ(m10, -1);   // Mertens
    CHECK_EQ(m100, 1);

    CHECK_EQ(t.primes.front(), 2);
    CHECK_EQ(t.primes.back(), 997);
    auto small = mobius_sieve(100);
    CHECK_EQ(small.primes.size(), 25);
}

TEST_CASE("mobius divisor-sum identities") {
    // sum over divisors is the unit-detection identity
    CHECK_EQ(mu_divisor_sum(1), 1);
    for (uint64_t a = 2; a <= 5000; ++a) CHECK_EQ(mu_divisor_sum(a), 0);

    // restricted to divisors through p: magnitude 1 exactly on powers of p
    CHECK_EQ(mu_divisor_sum_through_prime(8, 2), 1);
    CHECK_EQ(mu_divisor_sum_through_prime(49, 7), 1);
    CHECK_EQ(mu_divisor_sum_through_prime(12, 2), 0);  // 12 = 2^2 * 3
    CHECK_EQ(mu_divisor_sum_through_prime(7, 3), 0);   // p does not divide a
    CHECK_EQ(mu_divisor_sum_through_prime(1, 5), 0);
    for (uint64_t a = 1; a <= 2000; ++a) {
        for (uint64_t p : {2, 3, 5}) {
            bool power_of_p = false;
            uint64_t q = p;
            while (q <= a) {
                if (q == a) power_of_p = true;
                q *= p;
            }
            CHECK_EQ(mu_divisor_sum_through_prime(a, p), power_of_p ? 1 : 0);
        }
    }
}

TEST_CASE("primorials") {
    CHECK_EQ(primorial(1).value, 1);
    CHECK_EQ(primorial(2).value, 2);
    CHECK_EQ(primorial(7).value, 210);
    CHECK_EQ(primorial(13).value, 30030);
    CHECK_EQ(primorial(13).primes.size(), 6);
    CHECK_EQ(primorial(12).value, primorial(11).value);
}

TEST_CASE("zeta partial sums with certified tails") {
    auto z2 = zeta(2);
    CHECK(z2.tail_bound <= 1e-12);
    CHECK_EQ(z2.value, doctest::Approx(std::numbers::pi * std::numbers::pi / 6.0)
                           .epsilon(1e-12));
    CHECK_EQ(z2.value, doctest::Approx(1.6449340668482264365).epsilon(1e-12));
    CHECK(std::abs(z2.value - std::numbers::pi * std::numbers::pi / 6.0) <= z2.tail_bound);

    auto z3 = zeta(3);
    CHECK(z3.tail_bound <= 1e-12);
    CHECK_EQ(z3.value, doctest::Approx(1.2020569031595942854).epsilon(1e-13));

    auto z4 = zeta(4);
    CHECK(z4.tail_bound <= 1e-12);
    CHECK_EQ(z4.value, doctest::Approx(std::pow(std::numbers::pi, 4) / 90.0).epsilon(1e-13));

    // reciprocals are the density targets
    CHECK_EQ(1.0 / z2.value, doctest::Approx(0.60792710185402662866).epsilon(1e-12));
    CHECK_EQ(1.0 / z3.value, doctest::Approx(0.83190737258070746868).epsilon(1e-12));
    CHECK_EQ(1.0 / z4.value, doctest::Approx(0.92393840292159016702).epsilon(1e-12));

    // doubling the partial length moves the value by less than the tail bound
    auto z2b = zeta(2, uint64_t(1) << 21);
    CHECK(std::abs(z2b.value - z2.value) <= z2.tail_bound);
    CHECK(z2b.tail_bound < z2.tail_bound);
}
