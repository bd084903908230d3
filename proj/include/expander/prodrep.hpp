#pragma once

#include "expander/graph.hpp"
#include "expander/group.hpp"

#include <cstdint>
#include <vector>

namespace expander {

inline constexpr std::size_t kOmegaCap = 1'000'000;

using GenTuple = std::vector<std::uint32_t>; ///< table indices h_1..h_r

enum class Side { left, right };

/// One product-replacement move. Left: h_j <- h_i^{+-1} h_j; right: h_j <- h_j h_i^{+-1}.
struct Move {
    Side side = Side::right;
    std::uint32_t i = 0;
    std::uint32_t j = 1;
    bool positive = true;
};

GenTuple apply_move(const GroupTable& tbl, const GenTuple& t, const Move& m);

/// The 4r(r-1) moves in port order: side (L, R), then i, then j != i, then sign (+, -).
std::vector<Move> move_ports(std::uint32_t r);
/// Port of the inverse move (sign flipped).
std::uint32_t inverse_port(std::uint32_t port);

struct OmegaGraph {
    Graph graph;
    std::vector<GenTuple> tuples; ///< vertex -> tuple, lexicographic order
    std::uint32_t r = 0;

    std::uint32_t vertex_of(const GroupTable& tbl, const GenTuple& t) const;
    std::vector<std::int64_t> index; ///< mixed-radix tuple code -> vertex or -1
};

/// All generating r-tuples with one port per move. r >= 2.
OmegaGraph omega_graph(const GroupTable& tbl, std::uint32_t r);

/// Start tuple (g_1, ..., g_k, e, ..., e).
GenTuple padded_start(std::span<const std::uint32_t> gens, std::uint32_t r);

struct WalkSample {
    GenTuple tuple;
    std::uint32_t element = 0;
};

/// `steps` uniformly random moves (lazy: stay with probability 1/2), then a
/// uniformly random coordinate.
WalkSample pr_walk(const GroupTable& tbl, std::uint32_t r, const GenTuple& start, unsigned steps,
                   std::uint64_t seed, bool lazy = false);

struct TvProfile {
    std::vector<double> empirical;
    std::vector<double> exact;
    std::vector<double> bound; ///< (1/2) sqrt(N) (lambda/k)^t ||mu0 - u||_2
    std::vector<std::vector<std::uint64_t>> counts; ///< per step, per vertex
    std::size_t states = 0;
    double ratio = 0.0;
};

/// Empirical TV from `trials` walks (trial i seeded derive_seed(seed, i))
/// against exact powering of the walk matrix.
TvProfile tv_profile(const GroupTable& tbl, std::uint32_t r, const GenTuple& start, unsigned tmax, unsigned trials,
                     std::uint64_t seed, bool lazy = false);

/// Exact distributions pi_t = mu0 P^t, t = 0..tmax.
std::vector<std::vector<double>> exact_walk_distributions(const Graph& g, std::uint32_t start, unsigned tmax,
                                                          bool lazy);

} // namespace expander
