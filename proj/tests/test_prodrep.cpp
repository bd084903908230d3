#include "expander/graph.hpp"
#include "expander/group.hpp"
#include "expander/parallel.hpp"
#include "expander/prodrep.hpp"
#include "expander/stats.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace expander;

namespace {

GroupTable cyclic(std::uint32_t p)
{
    return GroupTable::close(cyclic_law(p), std::vector<Element>{{1}});
}

GenTuple start_for(const GroupTable& tbl, std::uint32_t r)
{
    const std::uint32_t g = tbl.index_of(Element{1});
    return padded_start(std::span<const std::uint32_t>(&g, 1), r);
}

bool generating(const GroupTable& tbl, const GenTuple& t)
{
    return generates(tbl, t);
}

} // namespace

TEST_CASE("moves")
{
    const auto z5 = cyclic(5);
    const std::uint32_t a = z5.index_of(Element{1});
    const GenTuple t{a, 0};
    const GenTuple r = apply_move(z5, t, {Side::right, 0, 1, true});
    CHECK(r == GenTuple{a, a});
    const GenTuple back = apply_move(z5, apply_move(z5, t, {Side::left, 0, 1, false}), {Side::left, 0, 1, true});
    CHECK(back == t);
    CHECK_THROWS_AS(apply_move(z5, t, {Side::left, 1, 1, true}), PreconditionError);

    const auto ports = move_ports(3);
    CHECK(ports.size() == 4 * 3 * 2);
    for (std::uint32_t p = 0; p < ports.size(); ++p) {
        const Move& m = ports[p];
        const Move& inv = ports[inverse_port(p)];
        CHECK(inv.side == m.side);
        CHECK(inv.i == m.i);
        CHECK(inv.j == m.j);
        CHECK(inv.positive != m.positive);
    }
}

TEST_CASE("omega graphs")
{
    const auto z5 = cyclic(5);
    const auto om = omega_graph(z5, 2);
    CHECK(om.graph.n() == 24);
    CHECK(om.graph.k() == 8);
    CHECK(std::find(om.tuples.begin(), om.tuples.end(), GenTuple{0, 0}) == om.tuples.end());
    for (std::uint32_t p : {3u, 7u, 11u})
        CHECK(omega_graph(cyclic(p), 2).graph.n() == p * p - 1);
    CHECK_THROWS_AS(omega_graph(cyclic(2), 1), PreconditionError);

    for (std::uint32_t v = 0; v < om.graph.n(); ++v) {
        CHECK(om.vertex_of(z5, om.tuples[v]) == v);
        CHECK(generating(z5, om.tuples[v]));
        for (std::uint32_t p = 0; p < om.graph.k(); ++p) {
            const Port e = om.graph.rot(v, p);
            CHECK(om.graph.rot(e.vertex, e.port) == Port{v, p});
            CHECK(om.tuples[e.vertex] == apply_move(z5, om.tuples[v], move_ports(2)[p]));
        }
    }

    const Element t12{1, 0, 2}, c3{1, 2, 0};
    const auto s3 = GroupTable::close(permutation_law(3), std::vector<Element>{t12, c3});
    const auto o3 = omega_graph(s3, 3);
    CHECK(o3.graph.k() == 24);
    for (const auto& t : o3.tuples)
        CHECK(generating(s3, t));
}

TEST_CASE("walks")
{
    const auto z5 = cyclic(5);
    const auto start = start_for(z5, 2);
    CHECK(pr_walk(z5, 2, start, 0, 7).tuple == start);
    const GenTuple bad{0, 0};
    CHECK_THROWS_AS(pr_walk(z5, 2, bad, 3, 1), PreconditionError);
    for (std::uint64_t s = 0; s < 200; ++s)
        CHECK(generating(z5, pr_walk(z5, 2, start, 20, s).tuple));

    // Sampled elements after 50 steps against the exact sampling law.
    const auto om = omega_graph(z5, 2);
    const auto exact = exact_walk_distributions(om.graph, om.vertex_of(z5, start), 50, false).back();
    std::vector<double> expect(5, 0.0);
    for (std::uint32_t v = 0; v < om.graph.n(); ++v)
        for (std::uint32_t c = 0; c < 2; ++c)
            expect[om.tuples[v][c]] += exact[v] / 2;
    std::vector<std::uint64_t> hist(5, 0);
    const unsigned trials = 10000;
    for (unsigned i = 0; i < trials; ++i)
        ++hist[pr_walk(z5, 2, start, 50, derive_seed(9, i)).element];
    double chi = 0;
    for (std::uint32_t g = 0; g < 5; ++g) {
        const double e = expect[g] * trials;
        chi += (hist[g] - e) * (hist[g] - e) / e;
        CHECK(std::abs(double(hist[g]) - e) <= 3 * std::sqrt(e * (1 - expect[g])));
    }
    CHECK(chi_square_pvalue(chi, 4) > 1e-3);
}

TEST_CASE("TV profile")
{
    const auto z5 = cyclic(5);
    const auto start = start_for(z5, 2);
    const auto p = tv_profile(z5, 2, start, 20, 10000, 3);
    CHECK(p.states == 24);
    CHECK(p.exact[0] == doctest::Approx(1 - 1.0 / 24));
    CHECK(p.empirical[0] == doctest::Approx(1 - 1.0 / 24));
    for (unsigned t = 0; t <= 20; ++t) {
        CHECK(std::abs(p.empirical[t] - p.exact[t]) <= 5 / std::sqrt(10000.0));
        CHECK(p.exact[t] <= p.bound[t] + 1e-12);
    }
    CHECK(p.exact[20] < 0.05);

    set_thread_count(8);
    const auto p8 = tv_profile(z5, 2, start, 20, 10000, 3);
    set_thread_count(1);
    CHECK(p8.empirical == p.empirical);
    CHECK(p8.counts == p.counts);
}

TEST_CASE("property: exact TV decays at the spectral rate")
{
    for (std::uint32_t q : {5u, 7u}) {
        const auto z = cyclic(q);
        const auto start = start_for(z, 2);
        for (bool lazy : {false, true}) {
            const auto p = tv_profile(z, 2, start, 60, 10, 1, lazy);
            double lo = 1e300, hi = 0;
            for (unsigned t = 10; t <= 60; ++t) {
                if (p.exact[t] < 1e-13)
                    break;
                const double ratio = p.exact[t] / std::pow(p.ratio, t);
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
            CHECK(hi > 0);
            CHECK(hi / lo <= 10);
        }
    }
}
