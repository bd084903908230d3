#include "expander/prodrep.hpp"

#include "expander/parallel.hpp"
#include "expander/spectral.hpp"

#include <cmath>
#include <map>
#include <random>
#include <string>

#include <omp.h>

namespace expander {

std::vector<Move> move_ports(std::uint32_t r)
{
    std::vector<Move> moves;
    for (Side side : {Side::left, Side::right})
        for (std::uint32_t i = 0; i < r; ++i)
            for (std::uint32_t j = 0; j < r; ++j) {
                if (i == j)
                    continue;
                moves.push_back({side, i, j, true});
                moves.push_back({side, i, j, false});
            }
    return moves;
}

std::uint32_t inverse_port(std::uint32_t port) { return port ^ 1U; }

GenTuple apply_move(const GroupTable& tbl, const GenTuple& t, const Move& m)
{
    if (m.i == m.j)
        throw PreconditionError("move indices must differ (i = j = " + std::to_string(m.i) + ")");
    if (m.i >= t.size() || m.j >= t.size())
        throw PreconditionError("move index out of range for an " + std::to_string(t.size()) + "-tuple");
    GenTuple out = t;
    const auto hi = m.positive ? t[m.i] : tbl.inverse(t[m.i]);
    out[m.j] = m.side == Side::left ? tbl.multiply(hi, t[m.j]) : tbl.multiply(t[m.j], hi);
    return out;
}

namespace {

// Memoized joins in the subgroup lattice: subgroup id x element -> subgroup id.
class SubgroupLattice {
public:
    explicit SubgroupLattice(const GroupTable& tbl) : tbl_(tbl)
    {
        std::vector<std::uint32_t> none;
        trivial_ = intern(subgroup_closure(tbl, none), none);
    }

    std::uint32_t trivial() const { return trivial_; }
    bool is_whole(std::uint32_t id) const { return members_[id].size() == tbl_.order(); }

    std::uint32_t join(std::uint32_t id, std::uint32_t h)
    {
        const auto key = std::make_pair(id, h);
        if (auto it = joins_.find(key); it != joins_.end())
            return it->second;
        auto gens = gens_[id];
        gens.push_back(h);
        const auto members = subgroup_closure(tbl_, gens);
        const auto out = members == members_[id] ? id : intern(members, gens);
        joins_.emplace(key, out);
        return out;
    }

private:
    std::uint32_t intern(const std::vector<std::uint32_t>& members, const std::vector<std::uint32_t>& gens)
    {
        if (auto it = ids_.find(members); it != ids_.end())
            return it->second;
        const auto id = static_cast<std::uint32_t>(members_.size());
        members_.push_back(members);
        gens_.push_back(gens);
        ids_.emplace(members, id);
        return id;
    }

    const GroupTable& tbl_;
    std::vector<std::vector<std::uint32_t>> members_;
    std::vector<std::vector<std::uint32_t>> gens_;
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> joins_;
    std::uint32_t trivial_ = 0;
};

std::uint64_t tuple_code(const GenTuple& t, std::uint64_t base)
{
    std::uint64_t c = 0;
    for (auto x : t)
        c = c * base + x;
    return c;
}

// One walk step on the omega graph; draws match pr_walk exactly.
std::uint32_t step_port(std::mt19937_64& rng, std::uint32_t nports, bool lazy, bool& stay)
{
    stay = lazy && (rng() & 1U);
    if (stay)
        return 0;
    return std::uniform_int_distribution<std::uint32_t>(0, nports - 1)(rng);
}

} // namespace

std::uint32_t OmegaGraph::vertex_of(const GroupTable& tbl, const GenTuple& t) const
{
    if (t.size() != r)
        throw PreconditionError("tuple width does not match r");
    const auto code = tuple_code(t, tbl.order());
    if (code >= index.size() || index[code] < 0)
        throw PreconditionError("tuple does not generate the group");
    return static_cast<std::uint32_t>(index[code]);
}

OmegaGraph omega_graph(const GroupTable& tbl, std::uint32_t r)
{
    if (r < 2)
        throw PreconditionError("product replacement needs r >= 2 (no moves exist for r = " + std::to_string(r) + ")");
    const double total_d = std::pow(double(tbl.order()), double(r));
    if (total_d > 2e7)
        throw CapExceeded("|G|^r = " + std::to_string(total_d) + " tuples exceeds the enumeration cap",
                          static_cast<std::uint64_t>(total_d));
    const auto total = static_cast<std::uint64_t>(std::llround(total_d));
    const auto base = tbl.order();
    OmegaGraph og;
    og.r = r;
    og.index.assign(total, -1);

    SubgroupLattice lattice(tbl);
    GenTuple t(r);
    for (std::uint64_t code = 0; code < total; ++code) {
        auto c = code;
        for (std::uint32_t i = r; i-- > 0;) {
            t[i] = static_cast<std::uint32_t>(c % base);
            c /= base;
        }
        std::uint32_t h = lattice.trivial();
        for (auto x : t)
            h = lattice.join(h, x);
        if (!lattice.is_whole(h))
            continue;
        if (og.tuples.size() >= kOmegaCap)
            throw CapExceeded("|Omega_r(G)| exceeds vertex cap " + std::to_string(kOmegaCap), og.tuples.size());
        og.index[code] = static_cast<std::int64_t>(og.tuples.size());
        og.tuples.push_back(t);
    }

    const auto moves = move_ports(r);
    const auto k = static_cast<std::uint32_t>(moves.size());
    const auto n = static_cast<std::uint32_t>(og.tuples.size());
    std::vector<Port> rot(std::size_t(n) * k);
    for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t p = 0; p < k; ++p) {
            const auto w = apply_move(tbl, og.tuples[v], moves[p]);
            rot[std::size_t(v) * k + p] = {og.vertex_of(tbl, w), inverse_port(p)};
        }
    og.graph = Graph(n, k, std::move(rot));
    return og;
}

GenTuple padded_start(std::span<const std::uint32_t> gens, std::uint32_t r)
{
    if (gens.size() > r)
        throw PreconditionError("more generators than tuple slots");
    GenTuple t(gens.begin(), gens.end());
    t.resize(r, 0);
    return t;
}

WalkSample pr_walk(const GroupTable& tbl, std::uint32_t r, const GenTuple& start, unsigned steps,
                   std::uint64_t seed, bool lazy)
{
    if (r < 2 || start.size() != r)
        throw PreconditionError("start tuple must have r >= 2 entries");
    if (!generates(tbl, start))
        throw PreconditionError("start tuple does not generate the group");
    const auto moves = move_ports(r);
    std::mt19937_64 rng(seed);
    WalkSample s{start, 0};
    for (unsigned t = 0; t < steps; ++t) {
        bool stay = false;
        const auto p = step_port(rng, static_cast<std::uint32_t>(moves.size()), lazy, stay);
        if (!stay)
            s.tuple = apply_move(tbl, s.tuple, moves[p]);
    }
    s.element = s.tuple[std::uniform_int_distribution<std::uint32_t>(0, r - 1)(rng)];
    return s;
}

std::vector<std::vector<double>> exact_walk_distributions(const Graph& g, std::uint32_t start, unsigned tmax,
                                                          bool lazy)
{
    std::vector<std::vector<double>> out;
    std::vector<double> pi(g.n(), 0.0), next(g.n());
    pi.at(start) = 1.0;
    const double k = g.k();
    for (unsigned t = 0; t <= tmax; ++t) {
        out.push_back(pi);
        adjacency_apply(g, pi, next);
        for (std::uint32_t v = 0; v < g.n(); ++v)
            pi[v] = lazy ? 0.5 * (pi[v] + next[v] / k) : next[v] / k;
    }
    return out;
}

TvProfile tv_profile(const GroupTable& tbl, std::uint32_t r, const GenTuple& start, unsigned tmax, unsigned trials,
                     std::uint64_t seed, bool lazy)
{
    if (trials == 0)
        throw PreconditionError("need at least one trial");
    const auto og = omega_graph(tbl, r);
    const auto& g = og.graph;
    const auto v0 = og.vertex_of(tbl, start);
    const auto n = g.n();
    const auto k = g.k();

    TvProfile tv;
    tv.states = n;
    tv.counts.assign(tmax + 1, std::vector<std::uint64_t>(n, 0));
#pragma omp parallel
    {
        std::vector<std::vector<std::uint64_t>> local(tmax + 1, std::vector<std::uint64_t>(n, 0));
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(trials); ++i) {
            std::mt19937_64 rng(derive_seed(seed, std::uint64_t(i)));
            auto v = v0;
            ++local[0][v];
            for (unsigned t = 1; t <= tmax; ++t) {
                bool stay = false;
                const auto p = step_port(rng, k, lazy, stay);
                if (!stay)
                    v = g.rot(v, p).vertex;
                ++local[t][v];
            }
        }
#pragma omp critical
        for (unsigned t = 0; t <= tmax; ++t)
            for (std::uint32_t v = 0; v < n; ++v)
                tv.counts[t][v] += local[t][v];
    }

    const auto exact = exact_walk_distributions(g, v0, tmax, lazy);
    const auto s = spectrum(g);
    tv.ratio = lazy ? 0.5 * (1.0 + s.lambda1() / k) : lambda_nontrivial(s) / k;
    const double u = 1.0 / n;
    const double l2_0 = std::sqrt((1.0 - u) * (1.0 - u) + (n - 1) * u * u);
    for (unsigned t = 0; t <= tmax; ++t) {
        double te = 0.0, tx = 0.0;
        for (std::uint32_t v = 0; v < n; ++v) {
            te += std::abs(double(tv.counts[t][v]) / trials - u);
            tx += std::abs(exact[t][v] - u);
        }
        tv.empirical.push_back(0.5 * te);
        tv.exact.push_back(0.5 * tx);
        tv.bound.push_back(0.5 * std::sqrt(double(n)) * std::pow(tv.ratio, double(t)) * l2_0);
    }
    return tv;
}

} // namespace expander
