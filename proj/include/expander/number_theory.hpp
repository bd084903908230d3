#pragma once

#include "expander/zmatrix.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace expander {

class Polynomial;

/// Primes p <= limit, ascending (Eratosthenes).
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);
/// pi(x) by a direct sieve.
std::uint64_t prime_pi(std::uint64_t x);

bool is_prime(std::uint64_t n);
/// Miller-Rabin; deterministic below 3.3e24, first 20 prime bases above.
bool is_prime(const BigInt& n);

struct Factorization {
    std::vector<std::pair<BigInt, unsigned>> factors; ///< ascending primes
    bool complete = true;                           ///< false when |x| > 2^128
};

/// Trial division to 1e6, then Pollard-Brent rho with a fixed seed. x != 0.
Factorization factorize(const BigInt& x);

/// Number of prime factors with multiplicity; sign ignored, nu(+-1) = 0.
/// Throws PreconditionError for 0; nullopt when |x| > 2^128 is left unfactored.
std::optional<unsigned> nu(const BigInt& x);
unsigned nu(std::int64_t x);

int mobius(std::uint64_t n);

inline constexpr std::size_t kLegendrePrimeCap = 25;

/// -1 + sum over subsets S of primes <= sqrt(x) of (-1)^|S| floor(x / prod S).
/// Throws CapExceeded when more than 25 primes lie below sqrt(x).
std::int64_t legendre_count(std::uint64_t x);

/// |{m mod d : f(m) = 0 mod d}| for univariate f.
std::uint64_t beta(const Polynomial& f, std::uint64_t d);

/// #{1 <= n <= x : gcd(f(n), P(z)) = 1}, P(z) the product of primes <= z.
std::uint64_t sieve_sum(const Polynomial& f, std::uint64_t x, std::uint64_t z);

/// Fibonacci number F_n for any integer n (F_{-n} = (-1)^{n+1} F_n).
BigInt fibonacci(std::int64_t n);

} // namespace expander
