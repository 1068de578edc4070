#include "coprime/density.hpp"

#include "coprime/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace coprime {

namespace {

constexpr uint64_t kBlockSize = 65536;

// Accumulators for one contiguous range [lo, hi].
struct BlockResult {
    uint64_t lo = 0, hi = 0;
    uint64_t coprime = 0;
    uint64_t uncertified = 0;
    std::vector<uint64_t> divis;  // indexed like the divisor set
};

std::optional<uint64_t> xi_with(const std::vector<FloorEvaluator>& evals,
                                bool include_n, uint64_t n) {
    uint64_t g = include_n ? n : 0;
    for (const auto& ev : evals) {
        int64_t v;
        try {
            v = ev.floor_i64(n);
        } catch (const CertificationFailure&) {
            return std::nullopt;
        }
        uint64_t mag = v >= 0 ? (uint64_t)v : (uint64_t)(-(v + 1)) + 1;
        g = std::gcd(g, mag);
    }
    return g;
}

void scan_block(const std::vector<FloorEvaluator>& evals, bool include_n,
                const std::vector<uint64_t>& ds, BlockResult& out) {
    out.coprime = 0;
    out.uncertified = 0;
    out.divis.assign(ds.size(), 0);
    for (uint64_t n = out.lo; n <= out.hi; ++n) {
        auto g = xi_with(evals, include_n, n);
        if (!g) {
            ++out.uncertified;
            continue;
        }
        if (*g == 1) ++out.coprime;
        if (*g == 0) {
            // every d divides 0
            for (size_t i = 0; i < ds.size(); ++i) ++out.divis[i];
            continue;
        }
        for (size_t i = 0; i < ds.size() && ds[i] <= *g; ++i)
            if (*g % ds[i] == 0) ++out.divis[i];
    }
}

std::vector<FloorEvaluator> compile_evaluators(const TupleSpec& spec) {
    if (spec.functions.empty()) throw std::invalid_argument("tuple spec has no functions");
    if (spec.N == 0) throw std::invalid_argument("tuple spec has N = 0");
    std::vector<FloorEvaluator> evals;
    evals.reserve(spec.functions.size());
    for (const auto& f : spec.functions) evals.emplace_back(f, spec.policy);
    return evals;
}

std::vector<uint64_t> checkpoint_values(uint64_t start, uint64_t N) {
    std::vector<uint64_t> cps;
    for (uint64_t p = 1; p <= N; ) {
        if (p >= start) cps.push_back(p);
        if (p > N / 10) break;
        p *= 10;
    }
    if (cps.empty() || cps.back() != N) cps.push_back(N);
    return cps;
}

}  // namespace

uint64_t TupleSpec::t0() const {
    uint64_t t = 1;
    for (const auto& f : functions) t = std::max(t, f.t0());
    return t;
}

std::optional<uint64_t> xi(const TupleSpec& spec, uint64_t n) {
    return xi_with(compile_evaluators(spec), spec.include_n, n);
}

std::vector<uint64_t> default_divisor_set() {
    std::vector<uint64_t> ds;
    for (uint64_t d = 1; d <= 64; ++d) ds.push_back(d);
    for (uint32_t p : mobius_sieve(256).primes) ds.push_back(p);
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return ds;
}

DensityReport scan(const TupleSpec& spec, const std::vector<uint64_t>& divisor_set,
                   int threads) {
    auto evals = compile_evaluators(spec);
    std::vector<uint64_t> ds = divisor_set;
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    if (!ds.empty() && ds.front() == 0)
        throw std::invalid_argument("divisor set contains 0");

    const uint64_t start = std::max<uint64_t>(1, spec.t0());
    const auto cps = checkpoint_values(start, spec.N);

    // Fixed block layout: kBlockSize-sized ranges, additionally cut at every
    // checkpoint so running totals are exact there.  The layout (and hence the
    // merged result) does not depend on the thread count.
    std::vector<BlockResult> blocks;
    if (start <= spec.N) {
        size_t next_cp = 0;
        for (uint64_t lo = start; lo <= spec.N; ) {
            while (next_cp < cps.size() && cps[next_cp] < lo) ++next_cp;
            uint64_t hi = std::min(lo + (kBlockSize - 1), spec.N);
            if (next_cp < cps.size()) hi = std::min(hi, cps[next_cp]);
            BlockResult b;
            b.lo = lo;
            b.hi = hi;
            blocks.push_back(std::move(b));
            lo = hi + 1;
        }
    }

    int nthreads = std::max(1, threads);
    if ((size_t)nthreads > blocks.size() && !blocks.empty())
        nthreads = (int)blocks.size();
    if (nthreads <= 1 || blocks.size() <= 1) {
        for (auto& b : blocks) scan_block(evals, spec.include_n, ds, b);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= blocks.size()) return;
                scan_block(evals, spec.include_n, ds, blocks[i]);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve((size_t)nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    DensityReport rep;
    rep.N = spec.N;
    rep.gcd_arity = spec.gcd_arity();
    rep.target = rep.gcd_arity >= 2 ? 1.0 / zeta((uint32_t)rep.gcd_arity).value : 0.0;

    uint64_t coprime = 0, uncert = 0;
    std::vector<uint64_t> divis(ds.size(), 0);
    size_t next_cp = 0;
    auto snapshot = [&](uint64_t at) {
        DensityReport::Checkpoint cp;
        cp.n = at;
        cp.coprime_count = coprime;
        cp.uncertified = uncert;
        for (size_t i = 0; i < ds.size(); ++i) cp.divis_counts[ds[i]] = divis[i];
        rep.checkpoints.push_back(std::move(cp));
    };
    for (const auto& b : blocks) {
        coprime += b.coprime;
        uncert += b.uncertified;
        for (size_t i = 0; i < ds.size(); ++i) divis[i] += b.divis[i];
        while (next_cp < cps.size() && cps[next_cp] == b.hi) {
            snapshot(cps[next_cp]);
            ++next_cp;
        }
    }
    // checkpoints below the scan start (possible when t0 > 1) are still
    // reported, with the zero totals accumulated so far
    while (next_cp < cps.size()) {
        if (cps[next_cp] < start) snapshot(cps[next_cp]);
        ++next_cp;
    }
    std::sort(rep.checkpoints.begin(), rep.checkpoints.end(),
              [](const auto& a, const auto& b) { return a.n < b.n; });

    rep.coprime_count = coprime;
    rep.uncertified_count = uncert;
    rep.density = (double)coprime / (double)spec.N;
    rep.abs_error = rep.target > 0 ? std::abs(rep.density - rep.target) : 0.0;
    for (size_t i = 0; i < ds.size(); ++i) rep.divis_counts[ds[i]] = divis[i];
    return rep;
}

DensityReport scan(const TupleSpec& spec) { return scan(spec, default_divisor_set(), 1); }

std::map<uint64_t, Deviation> divisibility_deviation(const DensityReport& report) {
    std::map<uint64_t, Deviation> out;
    for (const auto& [d, S] : report.divis_counts) {
        double expect = (double)report.N / std::pow((double)d, (double)report.gcd_arity);
        Deviation dev;
        dev.raw = (double)S - expect;
        dev.normalized = (double)d * std::abs(dev.raw) / (double)report.N;
        out[d] = dev;
    }
    return out;
}

SieveDecomposition truncated_sieve(const TupleSpec& spec) {
    if (spec.D > 52)
        throw std::invalid_argument("truncation bound too large for a 64-bit primorial");
    auto evals = compile_evaluators(spec);

    std::vector<uint64_t> ps;
    if (spec.D >= 2)
        for (uint32_t p : mobius_sieve(spec.D).primes) ps.push_back(p);
    uint64_t prim = 1;
    for (uint64_t p : ps) prim *= p;

    // squarefree divisors of the primorial as (d, mu(d)) via subset products
    std::vector<std::pair<uint64_t, int>> divs{{1, 1}};
    for (uint64_t p : ps) {
        size_t sz = divs.size();
        for (size_t i = 0; i < sz; ++i) divs.push_back({divs[i].first * p, -divs[i].second});
    }
    std::sort(divs.begin(), divs.end());

    std::vector<uint64_t> cnt(divs.size(), 0);
    uint64_t A = 0, uncert = 0;
    const uint64_t start = std::max<uint64_t>(1, spec.t0());
    for (uint64_t n = start; n <= spec.N; ++n) {
        auto g = xi_with(evals, spec.include_n, n);
        if (!g) {
            ++uncert;
            continue;
        }
        if (std::gcd(*g, prim) == 1) ++A;
        if (*g == 0) {
            for (size_t i = 0; i < divs.size(); ++i) ++cnt[i];
            continue;
        }
        for (size_t i = 0; i < divs.size() && divs[i].first <= *g; ++i)
            if (*g % divs[i].first == 0) ++cnt[i];
    }

    SieveDecomposition dec;
    dec.D = spec.D;
    dec.primorial = prim;
    dec.A_DN_direct = A;
    dec.uncertified_count = uncert;
    for (size_t i = 0; i < divs.size(); ++i) {
        dec.sigma1 += (int64_t)divs[i].second * (int64_t)cnt[i];
        dec.target_partial += (double)divs[i].second /
                              std::pow((double)divs[i].first, (double)spec.gcd_arity());
    }
    return dec;
}

double prime_tail(const TupleSpec& spec, uint64_t D, uint64_t P_max) {
    if (P_max > (uint64_t)1 << 31) throw std::invalid_argument("prime tail bound too large");
    std::vector<uint64_t> ps;
    for (uint32_t p : mobius_sieve(P_max).primes)
        if (p > D) ps.push_back(p);
    if (ps.empty()) return 0.0;
    auto rep = scan(spec, ps, 1);
    uint64_t total = 0;
    for (const auto& [d, S] : rep.divis_counts) {
        (void)d;
        total += S;
    }
    return (double)total / (double)spec.N;
}

}  // namespace coprime
