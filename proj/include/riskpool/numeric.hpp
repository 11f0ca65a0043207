#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <thread>
#include <utility>
#include <vector>

namespace riskpool {

/// Neumaier-compensated accumulator. Deterministic for a fixed add order.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_total(std::span<const double> xs) {
    CompensatedSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

/// Safeguarded Newton on a bracketing interval. `fdf(x)` returns {f(x), f'(x)};
/// f must be monotone on [lo, hi] with f(lo) and f(hi) of opposite (or zero)
/// sign. Falls back to bisection whenever the Newton step leaves the bracket
/// or fails to shrink it. Returns the best abscissa found; the caller checks
/// the final residual against its own tolerance.
template <class FDF>
double newton_bisect(FDF&& fdf, double lo, double hi, double f_lo, double f_hi,
                     double f_tol, int max_iter = 200) {
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    const double sgn = (f_hi > f_lo) ? 1.0 : -1.0;  // orient so g is increasing

    double x = 0.5 * (lo + hi);
    double step_prev = std::abs(hi - lo);
    auto [f, df] = fdf(x);
    double best_x = x;
    double best_f = std::abs(f);

    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(f) <= f_tol) return x;
        if (std::abs(f) < best_f) {
            best_f = std::abs(f);
            best_x = x;
        }
        const double g = sgn * f;
        const double dg = sgn * df;
        if (g < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        double x_new;
        bool bisect = !(dg > 0.0) || !std::isfinite(dg);
        if (!bisect) {
            x_new = x - g / dg;
            // reject steps that leave the bracket or stop making progress
            if (!(x_new > lo && x_new < hi) || std::abs(x_new - x) > 0.5 * step_prev) bisect = true;
        }
        if (bisect) x_new = 0.5 * (lo + hi);
        step_prev = std::abs(x_new - x);
        if (x_new == x || !(hi - lo > 0.0)) break;  // interval exhausted at this precision
        x = x_new;
        std::tie(f, df) = fdf(x);
    }
    return (std::abs(f) <= best_f) ? x : best_x;
}

/// Runs `body(begin, end)` over [0, n) split into fixed-size blocks. The block
/// layout never depends on the worker count, so any per-block state (warm
/// starts and the like) gives bit-identical results at any parallelism level.
template <class Body>
void parallel_blocks(std::size_t n, std::size_t block, unsigned threads, Body&& body) {
    if (n == 0) return;
    if (block == 0) block = 1;
    const std::size_t n_blocks = (n + block - 1) / block;
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads <= 1 || n_blocks <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) {
            body(b * block, std::min(n, (b + 1) * block));
        }
        return;
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_blocks));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks) return;
            body(b * block, std::min(n, (b + 1) * block));
        }
    };
    std::vector<std::thread> crew;
    crew.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) crew.emplace_back(worker);
    for (auto& th : crew) th.join();
}

inline double l1_norm(std::span<const double> v) {
    CompensatedSum acc;
    for (double x : v) acc.add(std::abs(x));
    return acc.value();
}

inline double linf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace riskpool
