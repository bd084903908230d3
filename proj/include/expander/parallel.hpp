#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>

namespace expander {

/// Caps the OpenMP worker count for every kernel in the library.
void set_thread_count(int threads);
int thread_count();

/// SplitMix64 finalizer; used to derive independent per-task seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for task `index` of a run seeded with `seed`. Independent of scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
    return mix_seed(seed ^ mix_seed(index + 1));
}

/// Dot product with a fixed blocking, so the rounding is identical for any thread count.
double dot(std::span<const double> a, std::span<const double> b);

/// Collects the first exception thrown inside a parallel region so it can be
/// rethrown after the region ends.
class ExceptionSink {
public:
    template <class F>
    void run(F&& f) noexcept
    {
        try {
            f();
        } catch (...) {
            std::lock_guard lock(mutex_);
            if (!error_)
                error_ = std::current_exception();
        }
    }
    void rethrow() const
    {
        if (error_)
            std::rethrow_exception(error_);
    }

private:
    std::mutex mutex_;
    std::exception_ptr error_;
};

namespace serial {
double dot(std::span<const double> a, std::span<const double> b);
}

} // namespace expander
