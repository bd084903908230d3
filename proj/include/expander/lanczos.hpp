#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace expander {

/// y = A x for a symmetric operator.
using LinearOperator = std::function<void(std::span<const double> x, std::span<double> y)>;

struct LanczosOptions {
    unsigned nev = 1;          ///< number of largest eigenvalues wanted
    unsigned basis = 40;       ///< Krylov basis size before a restart
    double tol = 1e-8;         ///< residual bound ||A v - theta v|| per Ritz pair
    unsigned max_restarts = 2000;
    std::uint64_t seed = 1;    ///< start vector seed
};

struct LanczosResult {
    std::vector<double> values;    ///< descending
    std::vector<double> residuals; ///< matching residual norms
    unsigned restarts = 0;
    bool invariant_subspace = false;
};

/// Thick-restart Lanczos for the largest eigenvalues of a symmetric operator
/// restricted to the orthogonal complement of `deflate` (orthonormal vectors).
/// Throws ConvergenceError after max_restarts.
LanczosResult lanczos_largest(std::size_t n, const LinearOperator& op,
                              std::span<const std::vector<double>> deflate, const LanczosOptions& opt);

/// Same, for the smallest eigenvalues (ascending).
LanczosResult lanczos_smallest(std::size_t n, const LinearOperator& op,
                               std::span<const std::vector<double>> deflate, const LanczosOptions& opt);

} // namespace expander
