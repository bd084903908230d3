#include "expander/parallel.hpp"

#include <algorithm>
#include <vector>

#include <omp.h>

namespace expander {

namespace {
constexpr std::size_t kDotBlock = 4096;
}

void set_thread_count(int threads) { omp_set_num_threads(std::max(1, threads)); }

int thread_count() { return omp_get_max_threads(); }

double dot(std::span<const double> a, std::span<const double> b)
{
    const std::size_t n = std::min(a.size(), b.size());
    const std::size_t blocks = (n + kDotBlock - 1) / kDotBlock;
    if (blocks <= 1)
        return serial::dot(a, b);
    std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(blocks); ++blk) {
        const std::size_t lo = std::size_t(blk) * kDotBlock, hi = std::min(n, lo + kDotBlock);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += a[i] * b[i];
        partial[blk] = s;
    }
    double total = 0.0;
    for (double s : partial)
        total += s;
    return total;
}

namespace serial {

double dot(std::span<const double> a, std::span<const double> b)
{
    const std::size_t n = std::min(a.size(), b.size());
    double total = 0.0;
    for (std::size_t lo = 0; lo < n; lo += kDotBlock) {
        const std::size_t hi = std::min(n, lo + kDotBlock);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += a[i] * b[i];
        total += s;
    }
    return total;
}

} // namespace serial

} // namespace expander
