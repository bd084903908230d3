#pragma once

#include "expander/error.hpp"
#include "expander/graph.hpp"
#include "expander/spectral.hpp"

#include <cstdint>
#include <vector>

namespace expander {

inline constexpr std::uint32_t kFamilyVertexCap = 1'000'000;

/// Zig-Zag product of an (n, m)-graph x with an (m, d)-graph y: an (nm, d^2)-graph.
/// Vertex (v, i) is v * m + i; port (a, b) is a * d + b.
Graph zigzag(const Graph& x, const Graph& y);

/// Configuration model: the n*k ports are shuffled with a seeded
/// mt19937_64 and paired consecutively. Loops and multi-edges are kept.
Graph random_regular(std::uint32_t n, std::uint32_t k, std::uint64_t seed);

/// Configuration model that also accepts odd n*k: the one unpaired port
/// becomes a half-loop (adds 1 to A_vv). Used for (d^4, d) base graphs with d odd.
Graph random_base_graph(std::uint32_t n, std::uint32_t k, std::uint64_t seed);
Graph random_connected_base(std::uint32_t n, std::uint32_t k, std::uint64_t seed, unsigned max_attempts = 1000);

/// random_regular redrawn with derived seeds until connected.
Graph random_connected_regular(std::uint32_t n, std::uint32_t k, std::uint64_t seed, unsigned max_attempts = 1000);

/// Thrown when a randomized search runs out of trials; carries the best value seen.
class SearchExhausted : public CapExceeded {
public:
    SearchExhausted(const std::string& what, double best) : CapExceeded(what), best_(best) {}
    double best() const noexcept { return best_; }

private:
    double best_;
};

struct BaseSearchResult {
    Graph graph;
    double ratio = 0.0; ///< lambda/d of the winner
    unsigned trial = 0;
};

/// Best of `trials` random connected d-regular graphs on d^4 vertices by
/// lambda/d (top eigenvalue excluded); trial t uses derive_seed(seed, t).
/// Throws SearchExhausted when the best ratio exceeds `threshold`.
BaseSearchResult base_graph_search(std::uint32_t d, std::uint64_t seed, unsigned trials, double threshold = 0.9);

struct FamilyLevel {
    unsigned level = 0;
    Graph graph;
    double lambda_normalized = 0.0; ///< lambda / degree, top eigenvalue excluded
    bool partial_spectrum = false;
    double residual = 0.0;
};

struct ZigZagFamily {
    Graph base;
    double base_ratio = 0.0;
    std::vector<FamilyLevel> levels;
    bool truncated = false;
};

/// X_1 = X^2, X_{n+1} = X_n^2 zigzag X. Levels above kFamilyVertexCap are not
/// built and the family is flagged truncated.
ZigZagFamily iterate_family(const Graph& base, unsigned levels, const SpectrumOptions& opt = {});

} // namespace expander
