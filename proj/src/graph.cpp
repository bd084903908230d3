#include "expander/graph.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>

#include <omp.h>

namespace expander {

DisconnectedError::DisconnectedError(std::uint32_t u, std::uint32_t v)
    : PreconditionError("graph is disconnected: vertices " + std::to_string(u) + " and " +
                        std::to_string(v) + " are mutually unreachable"),
      u_(u), v_(v)
{
}

GraphFormatError::GraphFormatError(std::size_t line, const std::string& what)
    : PreconditionError("line " + std::to_string(line) + ": " + what), line_(line)
{
}

namespace {

std::string port_str(std::uint32_t v, std::uint32_t p)
{
    return "(" + std::to_string(v) + "," + std::to_string(p) + ")";
}

constexpr Port kUnset{std::numeric_limits<std::uint32_t>::max(), std::numeric_limits<std::uint32_t>::max()};

} // namespace

Graph::Graph(std::uint32_t n, std::uint32_t k, std::vector<Port> rotation)
    : n_(n), k_(k), rot_(std::move(rotation))
{
    if (n_ == 0)
        throw PreconditionError("graph needs at least one vertex");
    if (rot_.size() != std::size_t(n_) * k_)
        throw PreconditionError("rotation map size does not match n*k");
    for (std::uint32_t v = 0; v < n_; ++v) {
        for (std::uint32_t p = 0; p < k_; ++p) {
            const Port& t = rot(v, p);
            if (t.vertex >= n_ || t.port >= k_)
                throw PreconditionError("port " + port_str(v, p) + " maps out of range");
            const Port& back = rot(t.vertex, t.port);
            if (back.vertex != v || back.port != p)
                throw PreconditionError("rotation map is not an involution at " + port_str(v, p));
        }
    }
}

VertexSet::VertexSet(std::uint32_t n, std::span<const std::uint32_t> members) : VertexSet(n)
{
    for (auto v : members)
        insert(v);
}

VertexSet VertexSet::from_mask(std::uint32_t n, std::uint64_t mask)
{
    VertexSet s(n);
    if (!s.words_.empty())
        s.words_[0] = mask;
    return s;
}

VertexSet VertexSet::all(std::uint32_t n)
{
    VertexSet s(n);
    for (std::uint32_t v = 0; v < n; ++v)
        s.insert(v);
    return s;
}

void VertexSet::insert(std::uint32_t v)
{
    if (v >= n_)
        throw PreconditionError("vertex " + std::to_string(v) + " outside vertex range");
    words_[v >> 6] |= std::uint64_t{1} << (v & 63);
}

std::uint32_t VertexSet::size() const noexcept
{
    std::uint32_t s = 0;
    for (auto w : words_)
        s += static_cast<std::uint32_t>(std::popcount(w));
    return s;
}

std::vector<std::uint32_t> VertexSet::members() const
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < n_; ++v)
        if (contains(v))
            out.push_back(v);
    return out;
}

VertexSet VertexSet::complement() const
{
    VertexSet c(n_);
    for (std::uint32_t v = 0; v < n_; ++v)
        if (!contains(v))
            c.insert(v);
    return c;
}

AdjacencyMatrix AdjacencyMatrix::squared() const
{
    AdjacencyMatrix out{n, std::vector<std::int32_t>(entries.size(), 0)};
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t l = 0; l < n; ++l) {
            const auto a = (*this)(i, l);
            if (a == 0)
                continue;
            for (std::uint32_t j = 0; j < n; ++j)
                out(i, j) += a * (*this)(l, j);
        }
    return out;
}

Graph from_edge_list(std::uint32_t n, std::uint32_t k, std::span<const PortPairing> pairings)
{
    if (n == 0)
        throw PreconditionError("graph needs at least one vertex");
    std::vector<Port> rot(std::size_t(n) * k, kUnset);
    auto claim = [&](std::uint32_t v, std::uint32_t p, Port target) {
        if (v >= n || p >= k)
            throw PreconditionError("port " + port_str(v, p) + " out of range");
        auto& slot = rot[std::size_t(v) * k + p];
        if (slot != kUnset)
            throw PreconditionError("duplicate port " + port_str(v, p));
        slot = target;
    };
    for (const auto& e : pairings) {
        if (e.w >= n || e.q >= k)
            throw PreconditionError("port " + port_str(e.w, e.q) + " out of range");
        claim(e.v, e.p, {e.w, e.q});
        if (e.v != e.w || e.p != e.q)
            claim(e.w, e.q, {e.v, e.p});
    }
    for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t p = 0; p < k; ++p)
            if (rot[std::size_t(v) * k + p] == kUnset)
                throw PreconditionError("dangling port " + port_str(v, p));
    return Graph(n, k, std::move(rot));
}

Graph from_simple_edges(std::uint32_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> edges)
{
    std::vector<std::pair<std::uint32_t, std::uint32_t>> sorted(edges.begin(), edges.end());
    for (auto& [u, w] : sorted)
        if (u > w)
            std::swap(u, w);
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::uint32_t> next(n, 0);
    std::vector<PortPairing> pairs;
    for (auto [u, w] : sorted) {
        if (u >= n || w >= n)
            throw PreconditionError("edge endpoint out of range");
        const std::uint32_t pu = next[u]++;
        const std::uint32_t pw = next[w]++;
        pairs.push_back({u, pu, w, pw});
    }
    const std::uint32_t k = n ? next[0] : 0;
    for (std::uint32_t v = 0; v < n; ++v)
        if (next[v] != k)
            throw PreconditionError("edge list is not regular: vertex " + std::to_string(v) + " has degree " +
                                    std::to_string(next[v]) + ", vertex 0 has " + std::to_string(k));
    return from_edge_list(n, k, pairs);
}

std::vector<PortPairing> pairings(const Graph& g)
{
    std::vector<PortPairing> out;
    out.reserve(std::size_t(g.n()) * g.k() / 2 + 1);
    for (std::uint32_t v = 0; v < g.n(); ++v)
        for (std::uint32_t p = 0; p < g.k(); ++p) {
            const Port& t = g.rot(v, p);
            if (Port{v, p} <= t)
                out.push_back({v, p, t.vertex, t.port});
        }
    return out;
}

AdjacencyMatrix adjacency_matrix(const Graph& g)
{
    AdjacencyMatrix a{g.n(), std::vector<std::int32_t>(std::size_t(g.n()) * g.n(), 0)};
    for (std::uint32_t v = 0; v < g.n(); ++v)
        for (const Port& t : g.ports(v))
            a(v, t.vertex) += 1;
    return a;
}

AdjacencyLists adjacency_lists(const Graph& g)
{
    AdjacencyLists adj(g.n());
    for (std::uint32_t v = 0; v < g.n(); ++v)
        for (const Port& t : g.ports(v))
            adj[v].push_back(t.vertex);
    return adj;
}

VertexSet boundary(const Graph& g, const VertexSet& y)
{
    if (y.universe() != g.n())
        throw PreconditionError("vertex set universe does not match the graph");
    VertexSet out(g.n());
    for (std::uint32_t v = 0; v < g.n(); ++v) {
        if (!y.contains(v))
            continue;
        for (const Port& t : g.ports(v))
            if (!y.contains(t.vertex))
                out.insert(t.vertex);
    }
    return out;
}

std::vector<std::uint32_t> connected_components(const Graph& g)
{
    constexpr auto unseen = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> label(g.n(), unseen);
    std::uint32_t next = 0;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < g.n(); ++s) {
        if (label[s] != unseen)
            continue;
        label[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (const Port& t : g.ports(v))
                if (label[t.vertex] == unseen) {
                    label[t.vertex] = next;
                    stack.push_back(t.vertex);
                }
        }
        ++next;
    }
    return label;
}

bool is_connected(const Graph& g)
{
    const auto label = connected_components(g);
    return std::all_of(label.begin(), label.end(), [](auto l) { return l == 0; });
}

std::optional<VertexSet> bipartition(const Graph& g)
{
    std::vector<int> color(g.n(), -1);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s = 0; s < g.n(); ++s) {
        if (color[s] >= 0)
            continue;
        color[s] = 0;
        stack.push_back(s);
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (const Port& t : g.ports(v)) {
                if (color[t.vertex] < 0) {
                    color[t.vertex] = 1 - color[v];
                    stack.push_back(t.vertex);
                } else if (color[t.vertex] == color[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    VertexSet side(g.n());
    for (std::uint32_t v = 0; v < g.n(); ++v)
        if (color[v] == 0)
            side.insert(v);
    return side;
}

namespace {

// Smallest component (ties: lowest label) as the zero-expansion witness.
std::optional<CutResult> disconnected_cut(const Graph& g)
{
    const auto label = connected_components(g);
    const auto count = *std::max_element(label.begin(), label.end()) + 1;
    if (count == 1)
        return std::nullopt;
    std::vector<std::uint32_t> sizes(count, 0);
    for (auto l : label)
        ++sizes[l];
    const auto best = static_cast<std::uint32_t>(std::min_element(sizes.begin(), sizes.end()) - sizes.begin());
    VertexSet w(g.n());
    for (std::uint32_t v = 0; v < g.n(); ++v)
        if (label[v] == best)
            w.insert(v);
    return CutResult{Rational(0), w};
}

void check_exact_cap(const Graph& g)
{
    if (g.n() < 2)
        throw PreconditionError("exact cut search needs at least two vertices");
    if (g.n() > kExactCutCap)
        throw CapExceeded("exact mode refused: n = " + std::to_string(g.n()) + " exceeds cap " +
                              std::to_string(kExactCutCap) + "; use spectral bounds",
                          g.n());
}

struct Candidate {
    std::int64_t num = 1;
    std::int64_t den = 0; // den == 0 means "no candidate yet"
    std::uint64_t mask = 0;

    bool better_than(const Candidate& o) const
    {
        if (o.den == 0)
            return den != 0;
        if (den == 0)
            return false;
        const auto l = num * o.den, r = o.num * den;
        return l < r || (l == r && mask < o.mask);
    }
};

struct CutPair {
    Candidate expansion;
    Candidate cheeger;
};

// Distinct neighbors with multiplicity, plus the diagonal entry.
struct NeighborTable {
    std::vector<std::vector<std::pair<std::uint32_t, std::int32_t>>> nbrs;
    std::vector<std::int32_t> self;
};

NeighborTable neighbor_table(const Graph& g)
{
    NeighborTable t;
    t.nbrs.resize(g.n());
    t.self.assign(g.n(), 0);
    const auto a = adjacency_matrix(g);
    for (std::uint32_t v = 0; v < g.n(); ++v) {
        t.self[v] = a(v, v);
        for (std::uint32_t w = 0; w < g.n(); ++w)
            if (w != v && a(v, w) > 0)
                t.nbrs[v].emplace_back(w, a(v, w));
    }
    return t;
}

// Incremental state of Y under single-vertex toggles.
struct GrayState {
    const NeighborTable* t;
    std::int64_t k;
    std::uint64_t mask = 0;
    std::vector<std::int32_t> hits; // # of Y-vertices adjacent to w (w itself excluded)
    std::int64_t boundary = 0;
    std::int64_t cut = 0;

    GrayState(const NeighborTable& table, std::int64_t degree, std::uint32_t n)
        : t(&table), k(degree), hits(n, 0)
    {
    }

    bool in(std::uint32_t v) const { return (mask >> v) & 1U; }

    void toggle(std::uint32_t u)
    {
        std::int64_t into = 0;
        for (auto [w, m] : t->nbrs[u])
            if (in(w))
                into += m;
        if (!in(u)) {
            cut += k - t->self[u] - 2 * into;
            if (hits[u] > 0)
                --boundary;
            mask |= std::uint64_t{1} << u;
            for (auto [w, m] : t->nbrs[u])
                if (hits[w]++ == 0 && !in(w))
                    ++boundary;
        } else {
            mask &= ~(std::uint64_t{1} << u);
            cut -= k - t->self[u] - 2 * into;
            for (auto [w, m] : t->nbrs[u])
                if (--hits[w] == 0 && !in(w))
                    --boundary;
            if (hits[u] > 0)
                ++boundary;
        }
    }
};

void offer(CutPair& best, std::uint64_t mask, std::int64_t boundary, std::int64_t cut, std::uint32_t n)
{
    const auto size = std::popcount(mask);
    if (size == 0 || 2 * static_cast<std::uint32_t>(size) > n)
        return;
    const Candidate e{boundary, size, mask};
    if (e.better_than(best.expansion))
        best.expansion = e;
    const Candidate h{cut, size, mask};
    if (h.better_than(best.cheeger))
        best.cheeger = h;
}

CutPair exact_cuts(const Graph& g)
{
    const auto n = g.n();
    const auto table = neighbor_table(g);
    const std::uint64_t total = std::uint64_t{1} << n;
    const std::uint64_t chunks = std::min<std::uint64_t>(total, 256);
    const std::uint64_t len = total / chunks;
    std::vector<CutPair> partial(chunks);

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
        const std::uint64_t lo = std::uint64_t(c) * len;
        const std::uint64_t hi = lo + len;
        GrayState s(table, g.k(), n);
        const std::uint64_t start = lo ^ (lo >> 1);
        for (std::uint32_t v = 0; v < n; ++v)
            if ((start >> v) & 1U)
                s.toggle(v);
        CutPair best;
        for (std::uint64_t i = lo; i < hi; ++i) {
            offer(best, s.mask, s.boundary, s.cut, n);
            if (i + 1 < hi)
                s.toggle(static_cast<std::uint32_t>(std::countr_zero(i + 1)));
        }
        partial[c] = best;
    }

    CutPair best;
    for (const auto& p : partial) {
        if (p.expansion.better_than(best.expansion))
            best.expansion = p.expansion;
        if (p.cheeger.better_than(best.cheeger))
            best.cheeger = p.cheeger;
    }
    return best;
}

CutResult to_result(const Candidate& c, std::uint32_t n)
{
    return {Rational(c.num, c.den), VertexSet::from_mask(n, c.mask)};
}

} // namespace

CutResult expansion_exact(const Graph& g)
{
    if (auto d = disconnected_cut(g))
        return *d;
    check_exact_cap(g);
    return to_result(exact_cuts(g).expansion, g.n());
}

CutResult cheeger_exact(const Graph& g)
{
    if (auto d = disconnected_cut(g))
        return *d;
    check_exact_cap(g);
    return to_result(exact_cuts(g).cheeger, g.n());
}

namespace serial {

namespace {

CutPair direct_cuts(const Graph& g)
{
    const auto n = g.n();
    const auto a = adjacency_matrix(g);
    std::vector<std::uint64_t> nbr_mask(n, 0);
    for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t w = 0; w < n; ++w)
            if (a(v, w) > 0)
                nbr_mask[v] |= std::uint64_t{1} << w;
    CutPair best;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        if (2 * static_cast<std::uint32_t>(std::popcount(mask)) > n)
            continue;
        std::uint64_t reach = 0;
        std::int64_t cut = 0;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (!((mask >> v) & 1U))
                continue;
            reach |= nbr_mask[v];
            for (std::uint32_t w = 0; w < n; ++w)
                if (!((mask >> w) & 1U))
                    cut += a(v, w);
        }
        offer(best, mask, std::popcount(reach & ~mask), cut, n);
    }
    return best;
}

} // namespace

CutResult expansion_exact(const Graph& g)
{
    check_exact_cap(g);
    return to_result(direct_cuts(g).expansion, g.n());
}

CutResult cheeger_exact(const Graph& g)
{
    check_exact_cap(g);
    return to_result(direct_cuts(g).cheeger, g.n());
}

} // namespace serial

namespace {

std::optional<std::uint32_t> loop_or_multi_edge(const AdjacencyLists& adj)
{
    std::optional<std::uint32_t> best;
    std::vector<std::uint32_t> seen;
    for (std::uint32_t v = 0; v < adj.size(); ++v) {
        seen = adj[v];
        std::sort(seen.begin(), seen.end());
        for (std::size_t i = 0; i < seen.size(); ++i) {
            if (seen[i] == v)
                return 1;
            if (i > 0 && seen[i] == seen[i - 1])
                best = 2;
        }
    }
    return best;
}

// Shortest cycle detected from root, ignoring anything of length >= cutoff.
std::uint32_t bfs_cycle(const AdjacencyLists& adj, std::uint32_t root, std::uint32_t cutoff,
                        std::vector<std::uint32_t>& dist, std::vector<std::uint32_t>& parent,
                        std::vector<std::uint32_t>& touched)
{
    constexpr auto inf = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t best = cutoff;
    std::queue<std::uint32_t> q;
    dist[root] = 0;
    parent[root] = inf;
    touched.push_back(root);
    q.push(root);
    while (!q.empty()) {
        const auto u = q.front();
        q.pop();
        if (2 * dist[u] + 1 >= best)
            break;
        for (auto w : adj[u]) {
            if (dist[w] == inf) {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                touched.push_back(w);
                q.push(w);
            } else if (parent[u] != w) {
                best = std::min(best, dist[u] + dist[w] + 1);
            }
        }
    }
    for (auto v : touched)
        dist[v] = inf;
    touched.clear();
    return best;
}

} // namespace

std::optional<std::uint32_t> girth_at(const AdjacencyLists& adj, std::uint32_t root)
{
    if (auto small = loop_or_multi_edge(adj))
        return small;
    constexpr auto inf = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> dist(adj.size(), inf), parent(adj.size(), inf), touched;
    const auto best = bfs_cycle(adj, root, inf, dist, parent, touched);
    if (best == inf)
        return std::nullopt;
    return best;
}

std::optional<std::uint32_t> girth(const AdjacencyLists& adj)
{
    if (auto small = loop_or_multi_edge(adj))
        return small;
    constexpr auto inf = std::numeric_limits<std::uint32_t>::max();
    const auto n = static_cast<std::int64_t>(adj.size());
    std::uint32_t best = inf;
#pragma omp parallel
    {
        std::vector<std::uint32_t> dist(adj.size(), inf), parent(adj.size(), inf), touched;
        std::uint32_t local = inf;
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t r = 0; r < n; ++r)
            local = std::min(local, bfs_cycle(adj, static_cast<std::uint32_t>(r), local, dist, parent, touched));
#pragma omp critical
        best = std::min(best, local);
    }
    if (best == inf)
        return std::nullopt;
    return best;
}

std::optional<std::uint32_t> girth(const Graph& g) { return girth(adjacency_lists(g)); }

namespace serial {

std::optional<std::uint32_t> girth(const AdjacencyLists& adj)
{
    if (auto small = loop_or_multi_edge(adj))
        return small;
    constexpr auto inf = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> dist(adj.size(), inf), parent(adj.size(), inf), touched;
    std::uint32_t best = inf;
    for (std::uint32_t r = 0; r < adj.size(); ++r)
        best = std::min(best, bfs_cycle(adj, r, inf, dist, parent, touched));
    if (best == inf)
        return std::nullopt;
    return best;
}

} // namespace serial

std::uint32_t eccentricity(const Graph& g, std::uint32_t v)
{
    constexpr auto inf = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> dist(g.n(), inf);
    std::queue<std::uint32_t> q;
    dist[v] = 0;
    q.push(v);
    std::uint32_t far = 0;
    while (!q.empty()) {
        const auto u = q.front();
        q.pop();
        far = std::max(far, dist[u]);
        for (const Port& t : g.ports(u))
            if (dist[t.vertex] == inf) {
                dist[t.vertex] = dist[u] + 1;
                q.push(t.vertex);
            }
    }
    for (std::uint32_t w = 0; w < g.n(); ++w)
        if (dist[w] == inf)
            throw DisconnectedError(v, w);
    return far;
}

std::uint32_t diameter(const Graph& g)
{
    std::uint32_t d = 0;
    for (std::uint32_t v = 0; v < g.n(); ++v)
        d = std::max(d, eccentricity(g, v));
    return d;
}

Graph square(const Graph& g)
{
    const auto k = g.k();
    const auto k2 = k * k;
    std::vector<Port> rot(std::size_t(g.n()) * k2);
    for (std::uint32_t v = 0; v < g.n(); ++v)
        for (std::uint32_t p = 0; p < k; ++p) {
            const Port mid = g.rot(v, p);
            for (std::uint32_t q = 0; q < k; ++q) {
                const Port end = g.rot(mid.vertex, q);
                rot[std::size_t(v) * k2 + p * k + q] = {end.vertex, end.port * k + mid.port};
            }
        }
    return Graph(g.n(), k2, std::move(rot));
}

Graph disjoint_union(const Graph& a, const Graph& b)
{
    if (a.k() != b.k())
        throw PreconditionError("disjoint union needs equal degrees");
    std::vector<Port> rot = a.rotation();
    for (const Port& t : b.rotation())
        rot.push_back({t.vertex + a.n(), t.port});
    return Graph(a.n() + b.n(), a.k(), std::move(rot));
}

Graph complete_graph(std::uint32_t n)
{
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            edges.emplace_back(i, j);
    return from_simple_edges(n, edges);
}

Graph cycle_graph(std::uint32_t n)
{
    if (n < 2)
        throw PreconditionError("cycle needs at least two vertices");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < n; ++i)
        edges.emplace_back(i, (i + 1) % n);
    return from_simple_edges(n, edges);
}

Graph petersen_graph()
{
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(i, i + 5);
        edges.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    return from_simple_edges(10, edges);
}

Graph read_graph(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                return true;
        }
        return false;
    };
    auto parse = [&](std::size_t want) {
        std::istringstream ss(line);
        std::vector<long long> vals;
        std::string tok;
        while (ss >> tok) {
            std::size_t used = 0;
            long long x = 0;
            try {
                x = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size() || x < 0 || x > std::numeric_limits<std::uint32_t>::max())
                throw GraphFormatError(lineno, "expected a non-negative integer, got '" + tok + "'");
            vals.push_back(x);
        }
        if (vals.size() != want)
            throw GraphFormatError(lineno, "expected " + std::to_string(want) + " integers, got " +
                                               std::to_string(vals.size()));
        return vals;
    };

    if (!next_line())
        throw GraphFormatError(lineno + 1, "missing header 'n k'");
    const auto header = parse(2);
    const auto n = static_cast<std::uint32_t>(header[0]);
    const auto k = static_cast<std::uint32_t>(header[1]);
    if (n == 0)
        throw GraphFormatError(lineno, "n must be positive");

    std::vector<Port> rot(std::size_t(n) * k, kUnset);
    auto claim = [&](std::uint32_t v, std::uint32_t p, Port t) {
        if (v >= n || p >= k)
            throw GraphFormatError(lineno, "port " + port_str(v, p) + " out of range");
        auto& slot = rot[std::size_t(v) * k + p];
        if (slot != kUnset)
            throw GraphFormatError(lineno, "duplicate port " + port_str(v, p));
        slot = t;
    };
    while (next_line()) {
        const auto f = parse(4);
        const auto v = static_cast<std::uint32_t>(f[0]), p = static_cast<std::uint32_t>(f[1]);
        const auto w = static_cast<std::uint32_t>(f[2]), q = static_cast<std::uint32_t>(f[3]);
        if (w >= n || q >= k)
            throw GraphFormatError(lineno, "port " + port_str(w, q) + " out of range");
        claim(v, p, {w, q});
        if (v != w || p != q)
            claim(w, q, {v, p});
    }
    for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t p = 0; p < k; ++p)
            if (rot[std::size_t(v) * k + p] == kUnset)
                throw GraphFormatError(lineno + 1, "dangling port " + port_str(v, p));
    return Graph(n, k, std::move(rot));
}

void write_graph(std::ostream& out, const Graph& g)
{
    out << g.n() << ' ' << g.k() << '\n';
    for (const auto& e : pairings(g))
        out << e.v << ' ' << e.p << ' ' << e.w << ' ' << e.q << '\n';
}

} // namespace expander
