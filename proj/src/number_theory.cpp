#include "expander/number_theory.hpp"

#include "expander/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace expander {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr std::uint32_t kTrialLimit = 1000000;

const std::vector<std::uint32_t>& trial_primes()
{
    static const std::vector<std::uint32_t> primes = primes_up_to(kTrialLimit);
    return primes;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m)
{
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

constexpr u64 kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

bool mr_round(u64 n, u64 a, u64 d, unsigned s)
{
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (unsigned r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

bool fits_u64(const BigInt& x) { return x >= 0 && x <= BigInt(std::numeric_limits<u64>::max()); }

u64 gcd64(u64 a, u64 b)
{
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// Pollard-Brent on a 64-bit odd composite.
u64 rho64(u64 n)
{
    if (n % 2 == 0)
        return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i)
                y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd64(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

BigInt rho_big(const BigInt& n)
{
    if (n % 2 == 0)
        return 2;
    for (unsigned c = 1;; ++c) {
        BigInt y = 2, x = 2, g = 1, q = 1, ys = 2;
        const unsigned m = 128;
        std::uint64_t r = 1;
        auto f = [&](const BigInt& v) { return BigInt((v * v + c) % n); };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = f(y);
            std::uint64_t k = 0;
            do {
                ys = y;
                for (std::uint64_t i = 0; i < std::min<std::uint64_t>(m, r - k); ++i) {
                    y = f(y);
                    q = (q * abs(x - y)) % n;
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(BigInt(abs(x - ys)), n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void split(const BigInt& n, std::map<BigInt, unsigned>& out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    BigInt d = fits_u64(n) ? BigInt(rho64(static_cast<u64>(n))) : rho_big(n);
    split(d, out);
    split(BigInt(n / d), out);
}

} // namespace

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit)
{
    std::vector<std::uint32_t> primes;
    if (limit < 2)
        return primes;
    std::vector<bool> composite(std::size_t(limit) + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i])
            continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    return primes;
}

std::uint64_t prime_pi(std::uint64_t x)
{
    if (x > std::numeric_limits<std::uint32_t>::max())
        throw CapExceeded("prime_pi: x above 2^32");
    return primes_up_to(static_cast<std::uint32_t>(x)).size();
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (u64 p : kBases) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (int i = 0; i < 12; ++i)
        if (!mr_round(n, kBases[i], d, s))
            return false;
    return true;
}

bool is_prime(const BigInt& n)
{
    if (n < 2)
        return false;
    if (fits_u64(n))
        return is_prime(static_cast<u64>(n));
    for (u64 p : kBases)
        if (n % p == 0)
            return false;
    BigInt d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    const BigInt nm1 = n - 1;
    for (u64 a : kBases) {
        BigInt x = boost::multiprecision::powm(BigInt(a), d, n);
        if (x == 1 || x == nm1)
            continue;
        bool witness = true;
        for (unsigned r = 1; r < s; ++r) {
            x = (x * x) % n;
            if (x == nm1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

Factorization factorize(const BigInt& x)
{
    if (x == 0)
        throw PreconditionError("factorize: x = 0");
    BigInt rest = abs(x);
    std::map<BigInt, unsigned> found;
    for (std::uint32_t p : trial_primes()) {
        if (BigInt(p) * p > rest)
            break;
        while (rest % p == 0) {
            rest /= p;
            ++found[BigInt(p)];
        }
    }
    Factorization f;
    if (rest > 1) {
        if (BigInt(kTrialLimit) * kTrialLimit > rest || is_prime(rest))
            ++found[rest];
        else if (bit_length(rest) > 128)
            f.complete = false;
        else
            split(rest, found);
    }
    f.factors.assign(found.begin(), found.end());
    return f;
}

std::optional<unsigned> nu(const BigInt& x)
{
    if (x == 0)
        throw PreconditionError("nu: x = 0");
    const auto f = factorize(x);
    if (!f.complete)
        return std::nullopt;
    unsigned total = 0;
    for (const auto& [p, e] : f.factors)
        total += e;
    return total;
}

unsigned nu(std::int64_t x) { return *nu(BigInt(x)); }

int mobius(std::uint64_t n)
{
    if (n == 0)
        throw PreconditionError("mobius: n must be positive");
    int sign = 1;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        sign = -sign;
    }
    return n > 1 ? -sign : sign;
}

std::int64_t legendre_count(std::uint64_t x)
{
    if (x < 4)
        throw PreconditionError("legendre_count: x must be at least 4");
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(x)));
    while (r * r > x)
        --r;
    while ((r + 1) * (r + 1) <= x)
        ++r;
    const auto primes = primes_up_to(static_cast<std::uint32_t>(r));
    if (primes.size() > kLegendrePrimeCap)
        throw CapExceeded("legendre_count: " + std::to_string(primes.size()) + " primes below sqrt(x), cap " +
                              std::to_string(kLegendrePrimeCap),
                          primes.size());
    std::int64_t sum = 0;
    // Subsets whose product exceeds x contribute 0, as do all their supersets.
    auto walk = [&](auto&& self, std::size_t i, u64 prod, int sign) -> void {
        sum += sign * static_cast<std::int64_t>(x / prod);
        for (std::size_t j = i; j < primes.size(); ++j) {
            const u64 next = prod * primes[j];
            if (next > x)
                break;
            self(self, j + 1, next, -sign);
        }
    };
    walk(walk, 0, 1, 1);
    return sum - 1;
}

std::uint64_t beta(const Polynomial& f, std::uint64_t d)
{
    if (d == 0)
        throw PreconditionError("beta: modulus must be positive");
    if (f.arity() > 1)
        throw PreconditionError("beta: polynomial must be univariate");
    std::uint64_t count = 0;
    for (std::uint64_t m = 0; m < d; ++m)
        if (f.at(BigInt(m)) % d == 0)
            ++count;
    return count;
}

std::uint64_t sieve_sum(const Polynomial& f, std::uint64_t x, std::uint64_t z)
{
    if (z > x)
        throw PreconditionError("sieve_sum: requires z <= x");
    if (f.arity() > 1)
        throw PreconditionError("sieve_sum: polynomial must be univariate");
    if (z < 2)
        return x;
    if (z > kTrialLimit)
        throw CapExceeded("sieve_sum: sieve level above 1e6");
    const auto primes = primes_up_to(static_cast<std::uint32_t>(z));
    std::uint64_t count = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        const BigInt v = f.at(BigInt(n));
        bool coprime = true;
        for (std::uint32_t p : primes)
            if (v % p == 0) {
                coprime = false;
                break;
            }
        count += coprime;
    }
    return count;
}

BigInt fibonacci(std::int64_t n)
{
    const std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    BigInt a = 0, b = 1;
    for (std::uint64_t i = 0; i < m; ++i) {
        BigInt c = a + b;
        a = std::move(b);
        b = std::move(c);
    }
    if (n < 0 && m % 2 == 0)
        return -a;
    return a;
}

} // namespace expander
