#pragma once

#include "expander/error.hpp"
#include "expander/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace expander {

/// Thrown by operations that need a connected graph; carries two
/// mutually unreachable vertices.
class DisconnectedError : public PreconditionError {
public:
    DisconnectedError(std::uint32_t u, std::uint32_t v);
    std::uint32_t u() const noexcept { return u_; }
    std::uint32_t v() const noexcept { return v_; }

private:
    std::uint32_t u_, v_;
};

/// Malformed graph text; carries the 1-based line number.
class GraphFormatError : public PreconditionError {
public:
    GraphFormatError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// One end of an edge: port `port` of vertex `vertex`.
struct Port {
    std::uint32_t vertex = 0;
    std::uint32_t port = 0;

    friend bool operator==(const Port&, const Port&) = default;
    friend auto operator<=>(const Port&, const Port&) = default;
};

/// "port p of v is matched to port q of w".
struct PortPairing {
    std::uint32_t v = 0, p = 0, w = 0, q = 0;

    friend bool operator==(const PortPairing&, const PortPairing&) = default;
};

/// A k-regular multigraph stored as a rotation map.
///
/// The rotation map sends (v, p) to the port at the other end of the edge
/// leaving v through p. It is an involution. A pairing of two ports of the
/// same vertex is a loop adding 2 to A_vv; a port paired with itself is a
/// half-loop adding 1. Every port contributes exactly 1 to its row of the
/// adjacency matrix, so row sums are k.
class Graph {
public:
    Graph() = default;

    /// Validates that `rotation` (indexed v * k + p) is an involution on
    /// in-range ports; throws PreconditionError otherwise.
    Graph(std::uint32_t n, std::uint32_t k, std::vector<Port> rotation);

    std::uint32_t n() const noexcept { return n_; }
    std::uint32_t k() const noexcept { return k_; }

    const Port& rot(std::uint32_t v, std::uint32_t p) const noexcept { return rot_[std::size_t(v) * k_ + p]; }
    std::uint32_t neighbor(std::uint32_t v, std::uint32_t p) const noexcept { return rot(v, p).vertex; }
    std::span<const Port> ports(std::uint32_t v) const noexcept
    {
        return {rot_.data() + std::size_t(v) * k_, k_};
    }
    const std::vector<Port>& rotation() const noexcept { return rot_; }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::uint32_t n_ = 0;
    std::uint32_t k_ = 0;
    std::vector<Port> rot_;
};

/// Subset of {0..n-1}, bit-packed.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::uint32_t n) : n_(n), words_((n + 63) / 64, 0) {}
    VertexSet(std::uint32_t n, std::span<const std::uint32_t> members);
    VertexSet(std::uint32_t n, std::initializer_list<std::uint32_t> members)
        : VertexSet(n, std::span<const std::uint32_t>(members.begin(), members.size()))
    {
    }

    static VertexSet from_mask(std::uint32_t n, std::uint64_t mask);
    static VertexSet all(std::uint32_t n);

    std::uint32_t universe() const noexcept { return n_; }
    bool contains(std::uint32_t v) const noexcept { return (words_[v >> 6] >> (v & 63)) & 1U; }
    void insert(std::uint32_t v);
    void erase(std::uint32_t v) noexcept { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    std::uint32_t size() const noexcept;
    bool empty() const noexcept { return size() == 0; }
    std::vector<std::uint32_t> members() const;
    VertexSet complement() const;

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    std::uint32_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Dense symmetric integer matrix, row-major.
struct AdjacencyMatrix {
    std::uint32_t n = 0;
    std::vector<std::int32_t> entries;

    std::int32_t operator()(std::uint32_t i, std::uint32_t j) const { return entries[std::size_t(i) * n + j]; }
    std::int32_t& operator()(std::uint32_t i, std::uint32_t j) { return entries[std::size_t(i) * n + j]; }
    AdjacencyMatrix squared() const;

    friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;
};

/// Neighbor lists of a general (possibly irregular) multigraph; a loop at v
/// appears as v in its own list once per port.
using AdjacencyLists = std::vector<std::vector<std::uint32_t>>;

/// Largest n for which exhaustive cut enumeration is allowed.
inline constexpr std::uint32_t kExactCutCap = 24;

/// Result of an exhaustive cut search: the optimum and one minimizing set
/// (the smallest bitmask among minimizers, so it is schedule-independent).
struct CutResult {
    Rational value;
    VertexSet witness;
};

Graph from_edge_list(std::uint32_t n, std::uint32_t k, std::span<const PortPairing> pairings);

/// Builds a regular graph from undirected simple/multi edges, assigning ports
/// in ascending order of appearance after sorting the edge list.
Graph from_simple_edges(std::uint32_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);

/// Canonical pairing list: one entry per edge, (v,p) <= (w,q), ascending.
std::vector<PortPairing> pairings(const Graph& g);

AdjacencyMatrix adjacency_matrix(const Graph& g);
AdjacencyLists adjacency_lists(const Graph& g);

VertexSet boundary(const Graph& g, const VertexSet& y);

/// Component label per vertex, labels numbered in order of first vertex.
std::vector<std::uint32_t> connected_components(const Graph& g);
bool is_connected(const Graph& g);

/// One side of a proper 2-coloring (the side holding vertex 0 of each
/// component), or nullopt if some odd cycle exists.
std::optional<VertexSet> bipartition(const Graph& g);

/// ε(X): min |∂Y|/|Y| over 1 <= |Y| <= n/2. Disconnected graphs give 0 with the
/// smallest component as witness; n above kExactCutCap throws CapExceeded.
CutResult expansion_exact(const Graph& g);

/// h(X): min |E(Y, V\Y)| / min(|Y|, |V\Y|), edges counted with multiplicity.
CutResult cheeger_exact(const Graph& g);

/// Shortest cycle length; nullopt for acyclic graphs. Loops give 1 and
/// repeated edges give 2.
std::optional<std::uint32_t> girth(const Graph& g);
std::optional<std::uint32_t> girth(const AdjacencyLists& adj);

/// Shortest cycle seen by a BFS from `root`. Equals the girth when the graph
/// is vertex-transitive (e.g. a Cayley graph).
std::optional<std::uint32_t> girth_at(const AdjacencyLists& adj, std::uint32_t root);

/// Largest BFS eccentricity; throws DisconnectedError when disconnected.
std::uint32_t diameter(const Graph& g);
std::uint32_t eccentricity(const Graph& g, std::uint32_t v);

/// (n, k^2)-graph: port p*k + q of v follows port p, then port q.
Graph square(const Graph& g);

/// Vertex-disjoint union of two graphs of equal degree.
Graph disjoint_union(const Graph& a, const Graph& b);

Graph complete_graph(std::uint32_t n);
Graph cycle_graph(std::uint32_t n);
Graph petersen_graph();

/// Text format: "n k" then one "v p w q" line per pairing.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

namespace serial {
// Direct per-subset evaluation; reference for the Gray-code kernels.
CutResult expansion_exact(const Graph& g);
CutResult cheeger_exact(const Graph& g);
std::optional<std::uint32_t> girth(const AdjacencyLists& adj);
} // namespace serial

} // namespace expander
