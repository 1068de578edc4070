#pragma once
// Fractional-part point sets theta_{d,n} = ({f_1(dn)/d}, ..., {f_k(dn)/d}) in
// [0,1)^k, half-open box counts, exact brute-force star discrepancy (k <= 2),
// and the Erdos-Turan-Koksma discrepancy bound.

#include "coprime/density.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace coprime {

struct PointSet {
    size_t k = 0;
    size_t N = 0;
    std::vector<double> coords;  // row-major, N * k entries in [0,1)

    double at(size_t n, size_t i) const { return coords[n * k + i]; }
};

// Point n (1-based scan index, stored 0-based) has coordinate i equal to
// frac_eval(f_i, n, d) = {f_i(d*n)/d}, certified to >= 53 bits.
PointSet theta_points(const TupleSpec& spec, uint64_t d, uint64_t count);

struct Box {
    std::vector<double> a, b;  // product of half-open [a_i, b_i)
};

struct BoxCount {
    uint64_t count = 0;
    double volume = 0;
    double R = 0;  // count/N - volume
};

BoxCount box_count(const PointSet& ps, const Box& box);

// Exact star discrepancy by critical-box enumeration over the coordinate
// grids; O(N log N) for k = 1 and O(N^2) for k = 2.  Throws beyond the
// desk-scale budget N <= 10^4, k <= 2.
double star_discrepancy_bruteforce(const PointSet& ps);

struct EtkBound {
    uint64_t H = 0;
    double C_k = 0;
    // tau -> |1/N sum_n e(<theta_n, tau>)| over tau in [-H,H]^k \ {0}
    std::map<std::vector<int64_t>, double> weighted_sums;
    double value = 0;  // C_k * (1/(H+1) + sum_tau prod_i (1+|tau_i|)^-1 * mag)
};

// C_k <= 0 selects the default 3^k.
EtkBound etk_bound(const PointSet& ps, uint64_t H, double C_k = 0);

}  // namespace coprime
