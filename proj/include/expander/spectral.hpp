#pragma once

#include "expander/graph.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace expander {

inline constexpr double kSpectralTol = 1e-9;
inline constexpr double kMultiplicityTol = 1e-6;
inline constexpr std::uint32_t kDenseCap = 4096;

struct SpectrumOptions {
    double tol = kSpectralTol;
    double residual_tol = 1e-8;    ///< iterative route only
    std::uint32_t dense_cap = kDenseCap;
    bool force_iterative = false;
    unsigned basis = 40;
    std::uint64_t seed = 1;
};

/// Adjacency eigenvalues, descending. A partial spectrum (iterative route)
/// holds only the extremes: lambda0, the top of the complement of the
/// constants, and the bottom, plus one more value at each end whenever the
/// extreme sits at +-k.
struct Spectrum {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::vector<double> eigenvalues;
    bool partial = false;
    double tol = kSpectralTol;
    double residual = 0.0; ///< worst Ritz residual on the iterative route

    double lambda0() const { return eigenvalues.front(); }
    double lambda1() const { return eigenvalues.at(1); }
    double lambda_min() const { return eigenvalues.back(); }

    /// (value, multiplicity) groups at kMultiplicityTol; exact only for full spectra.
    std::vector<std::pair<double, std::uint32_t>> multiplicities() const;
};

Spectrum spectrum(const Graph& g, const SpectrumOptions& opt = {});

/// Dense eigenvalues with eigenvectors (columns, ascending like Eigen).
struct Eigensystem {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};
Eigensystem eigensystem(const Graph& g);

/// y = A x using the rotation map; rows are independent, so the result is
/// identical for every thread count.
void adjacency_apply(const Graph& g, std::span<const double> x, std::span<double> y);

/// lambda(X): max |lambda| over eigenvalues with |lambda| < k - tol; 0 if none.
double lambda_abs(const Spectrum& s, double k);
double lambda_abs(const Spectrum& s);

/// max over i >= 1 of |lambda_i|: only the top eigenvalue is dropped.
double lambda_nontrivial(const Spectrum& s);

struct Connectivity {
    bool connected = false;
    bool bipartite = false;
};

/// Spectral flags only: connected iff lambda1 < k - tol, bipartite iff lambda_min <= -k + tol.
Connectivity connectivity_tests(const Spectrum& s, double k);

/// Spectral flags checked against BFS components and 2-coloring; throws
/// InconsistencyError when they disagree.
Connectivity connectivity_tests(const Graph& g, const Spectrum& s);

struct RamanujanResult {
    bool ramanujan = false;
    double lambda = 0.0;
    double bound = 0.0;
    double margin = 0.0;
};

RamanujanResult is_ramanujan(const Spectrum& s);
RamanujanResult is_ramanujan(const Graph& g);

struct CheegerBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// ((k - lambda1)/2, sqrt((k + lambda1)(k - lambda1))).
CheegerBounds cheeger_bounds(const Spectrum& s, double k);

struct MixingProfile {
    std::vector<double> measured; ///< ||Delta^t mu0 - u||_2, t = 0..tmax
    std::vector<double> bound;    ///< (lambda/k)^t ||mu0 - u||_2
    double ratio = 0.0;           ///< lambda/k
};

/// Random-walk distances to uniform. Throws PreconditionError on a bipartite
/// graph (naming a vertex on each side) and DisconnectedError when disconnected.
MixingProfile mixing_profile(const Graph& g, std::span<const double> mu0, unsigned tmax);
MixingProfile mixing_profile(const Graph& g, const Spectrum& s, std::span<const double> mu0, unsigned tmax);

/// 2 sqrt(k - 1); k < 3 rejected.
double alon_boppana_floor(std::uint32_t k);

/// sqrt(2 (k - lambda1) / k) for a Cayley graph with |Sigma| = k.
double kazhdan_lower_bound(const Spectrum& s);
double kazhdan_lower_bound(const Graph& g);

} // namespace expander
