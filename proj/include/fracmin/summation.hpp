#pragma once

// Reproducible floating point reductions and a small thread helper.
//
// Every reduction here has a fixed association order that depends only on
// the input length, so results are bitwise identical for any thread count.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <span>
#include <thread>
#include <vector>

namespace fracmin {

/// Pairwise (cascade) summation. Blocks of 8 are summed left to right, then
/// halves are combined recursively. Error grows like O(eps log n).
inline double pairwise_sum(std::span<const double> xs) {
    constexpr std::size_t block = 8;
    if (xs.size() <= block) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

/// Kahan-Babuska (Neumaier) compensated accumulator.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Worker count for the O(n^2) kernels. FRACMIN_THREADS caps it; it never
/// influences results, only speed.
inline unsigned kernel_threads() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FRACMIN_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    }
    return hw;
}

/// Runs body(i) for i in [0, count). Rows are dealt round-robin to workers;
/// body must only write to slots owned by its index.
template <class Body>
void parallel_rows(std::size_t count, Body&& body, std::size_t min_rows_per_thread = 64) {
    const std::size_t wanted = std::max<std::size_t>(1, count / min_rows_per_thread);
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(kernel_threads(), wanted));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) body(i);
        });
    }
}

} // namespace fracmin
