#include "coprime/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace coprime {

namespace {

struct Neumaier {
    double sum = 0, comp = 0;
    void add(double v) {
        double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

double star_1d(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const double N = (double)xs.size();
    double best = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        best = std::max(best, (double)(i + 1) / N - xs[i]);
        best = std::max(best, xs[i] - (double)i / N);
    }
    return best;
}

// Exact 2-D star discrepancy: sweep u over distinct x-values (plus 1); for
// each u scan the sorted y-values of the points inside, taking the one-sided
// suprema of count/N - uv at the critical corners.
double star_2d(const PointSet& ps) {
    const size_t N = ps.N;
    std::vector<std::pair<double, double>> pts(N);
    for (size_t n = 0; n < N; ++n) pts[n] = {ps.at(n, 0), ps.at(n, 1)};
    std::sort(pts.begin(), pts.end());

    const double dN = (double)N;
    std::vector<double> ys;  // sorted y's of the points processed so far
    ys.reserve(N);
    double best = 0;

    auto scan_at = [&](double u, bool open_side) {
        // open_side: ys holds points with x < u; sup of uv - (#y < v)/N over
        // v at each distinct y (approached from below) and at v = 1.
        // closed side: ys holds points with x <= u; sup of (#y <= v)/N - uv.
        size_t m = ys.size();
        if (open_side) {
            size_t below = 0;
            for (size_t j = 0; j < m; ) {
                size_t j2 = j;
                while (j2 < m && ys[j2] == ys[j]) ++j2;
                best = std::max(best, u * ys[j] - (double)below / dN);
                below = j2;
                j = j2;
            }
            best = std::max(best, u - (double)m / dN);
        } else {
            for (size_t j = 0; j < m; ) {
                size_t j2 = j;
                while (j2 < m && ys[j2] == ys[j]) ++j2;
                best = std::max(best, (double)j2 / dN - u * ys[j]);
                j = j2;
            }
        }
    };

    size_t i = 0;
    while (i < N) {
        double u = pts[i].first;
        scan_at(u, true);  // points with x < u
        size_t i2 = i;
        while (i2 < N && pts[i2].first == u) {
            auto it = std::upper_bound(ys.begin(), ys.end(), pts[i2].second);
            ys.insert(it, pts[i2].second);
            ++i2;
        }
        scan_at(u, false);  // points with x <= u
        i = i2;
    }
    scan_at(1.0, true);  // full set against the unit square edge
    scan_at(1.0, false);
    return best;
}

}  // namespace

PointSet theta_points(const TupleSpec& spec, uint64_t d, uint64_t count) {
    if (spec.functions.empty()) throw std::invalid_argument("tuple spec has no functions");
    if (d == 0 || count == 0) throw std::invalid_argument("d and count must be positive");
    std::vector<FloorEvaluator> evals;
    evals.reserve(spec.functions.size());
    for (const auto& f : spec.functions) evals.emplace_back(f, spec.policy);

    PointSet ps;
    ps.k = spec.functions.size();
    ps.N = count;
    ps.coords.reserve(count * ps.k);
    for (uint64_t n = 1; n <= count; ++n)
        for (const auto& ev : evals) ps.coords.push_back(ev.frac_eval(n, d));
    return ps;
}

BoxCount box_count(const PointSet& ps, const Box& box) {
    if (ps.N == 0) throw std::invalid_argument("empty point set");
    if (box.a.size() != ps.k || box.b.size() != ps.k)
        throw std::invalid_argument("box dimension differs from point set");
    double vol = 1;
    for (size_t i = 0; i < ps.k; ++i) {
        if (!(box.a[i] >= 0) || !(box.b[i] <= 1) || !(box.a[i] < box.b[i]))
            throw std::invalid_argument("malformed box");
        vol *= box.b[i] - box.a[i];
    }
    uint64_t count = 0;
    for (size_t n = 0; n < ps.N; ++n) {
        bool in = true;
        for (size_t i = 0; i < ps.k && in; ++i) {
            double x = ps.at(n, i);
            in = x >= box.a[i] && x < box.b[i];
        }
        count += in;
    }
    BoxCount bc;
    bc.count = count;
    bc.volume = vol;
    bc.R = (double)count / (double)ps.N - vol;
    return bc;
}

double star_discrepancy_bruteforce(const PointSet& ps) {
    if (ps.N == 0) throw std::invalid_argument("empty point set");
    if (ps.N > 10000 || ps.k > 2 || ps.k == 0)
        throw std::invalid_argument("star discrepancy budget is N <= 10^4, k <= 2");
    if (ps.k == 1) {
        std::vector<double> xs(ps.N);
        for (size_t n = 0; n < ps.N; ++n) xs[n] = ps.at(n, 0);
        return star_1d(std::move(xs));
    }
    return star_2d(ps);
}

EtkBound etk_bound(const PointSet& ps, uint64_t H, double C_k) {
    if (ps.N == 0) throw std::invalid_argument("empty point set");
    if (H == 0) throw std::invalid_argument("H must be positive");
    double n_sums = std::pow(2.0 * (double)H + 1.0, (double)ps.k) - 1.0;
    if (n_sums > 2e6 || n_sums * (double)ps.N > 4e9)
        throw std::invalid_argument("frequency sweep exceeds the evaluation budget");

    EtkBound out;
    out.H = H;
    out.C_k = C_k > 0 ? C_k : std::pow(3.0, (double)ps.k);

    // per-point tables of e(tau * theta_i) for tau in [-H, H]
    const size_t W = 2 * (size_t)H + 1;
    std::vector<std::complex<double>> table(ps.N * ps.k * W);
    for (size_t n = 0; n < ps.N; ++n)
        for (size_t i = 0; i < ps.k; ++i) {
            double ang = 2.0 * std::numbers::pi * ps.at(n, i);
            std::complex<double> w{std::cos(ang), std::sin(ang)};
            std::complex<double>* row = &table[(n * ps.k + i) * W];
            row[H] = 1.0;
            for (size_t t = 1; t <= H; ++t) {
                row[H + t] = row[H + t - 1] * w;
                row[H - t] = std::conj(row[H + t]);
            }
        }

    std::vector<int64_t> tau(ps.k, -(int64_t)H);
    Neumaier total;
    for (;;) {
        bool zero = std::all_of(tau.begin(), tau.end(), [](int64_t t) { return t == 0; });
        if (!zero) {
            Neumaier re, im;
            for (size_t n = 0; n < ps.N; ++n) {
                std::complex<double> prod{1.0, 0.0};
                for (size_t i = 0; i < ps.k; ++i)
                    prod *= table[(n * ps.k + i) * W + (size_t)(tau[i] + (int64_t)H)];
                re.add(prod.real());
                im.add(prod.imag());
            }
            double mag = std::hypot(re.value(), im.value()) / (double)ps.N;
            out.weighted_sums[tau] = mag;
            double weight = 1;
            for (int64_t t : tau) weight /= 1.0 + (double)std::llabs(t);
            total.add(weight * mag);
        }
        size_t i = 0;
        while (i < ps.k && tau[i] == (int64_t)H) tau[i++] = -(int64_t)H;
        if (i == ps.k) break;
        ++tau[i];
    }
    out.value = out.C_k * (1.0 / ((double)H + 1.0) + total.value());
    return out;
}

}  // namespace coprime
