#include "expander/graph.hpp"
#include "expander/group.hpp"
#include "expander/spectral.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

using namespace expander;

namespace {

std::vector<Element> elementary_mod(std::uint32_t m)
{
    std::vector<Element> out;
    for (const auto& z : elementary_generators(2))
        out.push_back(reduce(z, m));
    return out;
}

std::vector<std::uint32_t> indices(const GroupTable& tbl, const std::vector<Element>& es)
{
    std::vector<std::uint32_t> out;
    for (const auto& e : es)
        out.push_back(tbl.index_of(e));
    return out;
}

// Brute-force |SL2(Z/m)|.
std::uint64_t count_sl2(std::uint32_t m)
{
    std::uint64_t c = 0;
    for (std::uint32_t a = 0; a < m; ++a)
        for (std::uint32_t b = 0; b < m; ++b)
            for (std::uint32_t cc = 0; cc < m; ++cc)
                for (std::uint32_t d = 0; d < m; ++d)
                    c += (a * d + m * m - b * cc) % m == 1 % m;
    return c;
}

} // namespace

TEST_CASE("closure orders")
{
    CHECK(GroupTable::close(matrix_law(2, 3), elementary_mod(3)).order() == 24);
    CHECK(GroupTable::close(matrix_law(2, 5), elementary_mod(5)).order() == 120);
    CHECK(count_sl2(3) == 24);
    CHECK(count_sl2(5) == 120);
    const Element id{1, 0, 0, 1};
    CHECK(GroupTable::close(matrix_law(2, 7), std::vector<Element>{id}).order() == 1);
    CHECK_THROWS_AS(GroupTable::close(matrix_law(2, 7), elementary_mod(7), 100), CapExceeded);
    try {
        GroupTable::close(matrix_law(2, 7), elementary_mod(7), 100);
    } catch (const CapExceeded& e) {
        CHECK(e.partial() >= 100);
    }
}

TEST_CASE("group table is closed")
{
    const auto tbl = GroupTable::close(matrix_law(2, 3), elementary_mod(3));
    CHECK(tbl.format(0) == tbl.law().format(tbl.law().identity()));
    for (std::uint32_t a = 0; a < tbl.order(); ++a) {
        CHECK(tbl.multiply(a, tbl.inverse(a)) == 0);
        for (std::uint32_t b = 0; b < tbl.order(); ++b)
            CHECK(tbl.multiply(a, b) < tbl.order());
    }
}

TEST_CASE("Cayley graph fixtures")
{
    const Element one{1};
    const auto z6 = GroupTable::close(cyclic_law(6), std::vector<Element>{one});
    const Graph c6 = cayley_graph(z6, GenSet::from_elements(z6, std::vector<Element>{{1}, {5}}));
    CHECK(adjacency_matrix(c6) == adjacency_matrix(cycle_graph(6)));

    const auto z4 = GroupTable::close(cyclic_law(4), std::vector<Element>{one});
    const Graph k4 = cayley_graph(z4, GenSet::from_elements(z4, std::vector<Element>{{1}, {3}, {2}}));
    CHECK(adjacency_matrix(k4) == adjacency_matrix(complete_graph(4)));

    const auto sl = GroupTable::close(matrix_law(2, 3), elementary_mod(3));
    const Graph g = cayley_graph(sl, GenSet::from_elements(sl, elementary_mod(3)));
    CHECK(g.n() == 24);
    CHECK(g.k() == 4);
    CHECK(is_connected(g));
}

TEST_CASE("GenSet validation")
{
    const Element one{1};
    const auto z6 = GroupTable::close(cyclic_law(6), std::vector<Element>{one});
    CHECK_THROWS_AS(GenSet::from_elements(z6, std::vector<Element>{{1}}), PreconditionError);
    CHECK_THROWS_AS(GenSet::from_elements(z6, std::vector<Element>{{1}, {5}, {1}}), PreconditionError);
    const auto s = GenSet::from_elements(z6, std::vector<Element>{{1}, {5}, {3}});
    CHECK(s.inverse_ports() == std::vector<std::uint32_t>{1, 0, 2});
}

TEST_CASE("Schreier graphs")
{
    const auto sl = GroupTable::close(matrix_law(2, 3), elementary_mod(3));
    const auto sigma = GenSet::from_elements(sl, elementary_mod(3));
    CHECK(schreier_graph(sl, sigma) == cayley_graph(sl, sigma));

    const Graph p1 = projective_line_graph(elementary_mod(3), sigma.inverse_ports(), 3);
    CHECK(p1.n() == 4);
    CHECK(p1.k() == 4);
    CHECK(is_connected(p1));

    const std::uint32_t inv[] = {1, 0, 2};
    const Graph triv = schreier_graph(5, inv, [](std::uint32_t x, std::uint32_t) { return std::int64_t(x); });
    const auto a = adjacency_matrix(triv);
    for (std::uint32_t i = 0; i < 5; ++i)
        for (std::uint32_t j = 0; j < 5; ++j)
            CHECK(a(i, j) == (i == j ? 3 : 0));

    CHECK_THROWS_AS(schreier_graph(5, inv, [](std::uint32_t x, std::uint32_t) { return std::int64_t(x) + 1; }),
                    PreconditionError);
}

TEST_CASE("1-2-3 generators, girth and strong approximation")
{
    for (std::int64_t t : {1, 3}) {
        const auto gens = sl2_onetwothree_generators(t, 5);
        CHECK(GroupTable::close(matrix_law(2, 5), gens).order() == 120);
    }
    CHECK_THROWS_AS(sl2_onetwothree_generators(2, 2), PreconditionError);

    const std::uint32_t primes[] = {5, 7, 11, 13};
    for (const auto& row : girth_vs_logp_experiment(3, primes)) {
        REQUIRE(row.girth.has_value());
        CHECK(*row.girth >= 3);
        CHECK(row.ratio == doctest::Approx(*row.girth / std::log(double(row.p))));
    }
    const std::uint32_t five[] = {5};
    const auto one = girth_vs_logp_experiment(1, five);
    const auto sl = GroupTable::close(matrix_law(2, 5), elementary_mod(5));
    CHECK(one[0].girth == girth(cayley_graph(sl, GenSet::from_elements(sl, elementary_mod(5)))));

    const auto lambda = sl2_onetwothree_integer(3);
    CHECK(strong_approx_check(lambda, 5).onto);
    CHECK_FALSE(strong_approx_check(lambda, 3).onto);
    const auto e4 = strong_approx_check(elementary_generators(2), 4);
    CHECK(e4.onto);
    CHECK(e4.sl_order == count_sl2(4));
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 6u, 8u, 9u, 10u, 12u})
        CHECK(sl_order_formula(2, q) == sl_order_enumerated(2, q));
    CHECK(sl_order_formula(3, 2) == 168);
}

TEST_CASE("triple products")
{
    const auto tbl = GroupTable::close(matrix_law(2, 5), elementary_mod(5));
    std::vector<std::uint32_t> all(tbl.order());
    std::iota(all.begin(), all.end(), 0u);
    const auto full = triple_product_growth(tbl, all);
    CHECK(full.size_aaa == tbl.order());
    CHECK(*full.exponent == doctest::Approx(1));
    const std::uint32_t id[] = {0};
    const auto triv = triple_product_growth(tbl, id);
    CHECK(triv.size_aaa == 1);
    CHECK_FALSE(triv.exponent.has_value());

    auto a = indices(tbl, elementary_mod(5));
    a.push_back(0);
    std::set<std::uint32_t> brute;
    for (auto x : a)
        for (auto y : a)
            for (auto z : a)
                brute.insert(tbl.multiply(tbl.multiply(x, y), z));
    const auto r = triple_product_growth(tbl, a);
    CHECK(r.size_aaa == brute.size());
    CHECK(r.size_aaa > r.size_a);
    CHECK(r.generates);
}

TEST_CASE("invariable generation and power sets")
{
    const Element t12{1, 0, 2}, c3{1, 2, 0};
    const auto s3 = GroupTable::close(permutation_law(3), std::vector<Element>{t12, c3});
    REQUIRE(s3.order() == 6);
    const std::uint32_t pair[] = {s3.index_of(t12), s3.index_of(c3)};
    CHECK(invariable_generation_check(s3, pair));
    const std::uint32_t single[] = {s3.index_of(t12)};
    CHECK_FALSE(invariable_generation_check(s3, single));
    std::vector<std::uint32_t> all(6);
    std::iota(all.begin(), all.end(), 0u);
    CHECK(invariable_generation_check(s3, all));

    const auto sl3 = GroupTable::close(matrix_law(2, 3), elementary_mod(3));
    CHECK(m_power_set(sl3, 1).size() == sl3.order());
    CHECK(m_power_set(sl3, sl3.order()) == std::vector<std::uint32_t>{0});
    std::set<std::uint32_t> squares;
    for (std::uint32_t g = 0; g < sl3.order(); ++g)
        squares.insert(sl3.multiply(g, g));
    const auto z2 = m_power_set(sl3, 2);
    CHECK(std::vector<std::uint32_t>(squares.begin(), squares.end()) == z2);
}

TEST_CASE("property: Cayley graphs are vertex-transitive and connected iff generating")
{
    std::mt19937_64 rng(31);
    const std::uint32_t moduli[] = {3, 4, 5, 6, 7};
    for (int i = 0; i < 200; ++i) {
        const std::uint32_t m = moduli[i % 5];
        const auto tbl = GroupTable::close(matrix_law(2, m), elementary_mod(m));
        std::vector<std::uint32_t> sigma;
        const unsigned pairs = 1 + rng() % 2;
        for (unsigned j = 0; j < pairs; ++j) {
            const auto g = std::uint32_t(1 + rng() % (tbl.order() - 1));
            if (std::find(sigma.begin(), sigma.end(), g) != sigma.end())
                continue;
            sigma.push_back(g);
            if (tbl.inverse(g) != g)
                sigma.push_back(tbl.inverse(g));
        }
        const Graph g = cayley_graph(tbl, GenSet(tbl, sigma));
        const bool connected = is_connected(g);
        CHECK(connected == generates(tbl, sigma));
        CHECK(connected == (subgroup_closure(tbl, sigma).size() == tbl.order()));
        if (connected) {
            const auto e0 = eccentricity(g, 0);
            for (std::uint32_t v = 1; v < g.n(); ++v)
                CHECK(eccentricity(g, v) == e0);
        }
        for (std::uint32_t v = 0; v < g.n(); ++v)
            for (std::uint32_t p = 0; p < g.k(); ++p) {
                const Port e = g.rot(v, p);
                CHECK(g.rot(e.vertex, e.port) == Port{v, p});
            }
    }
}

TEST_CASE("property: triple product bounds and conjugation-closed power sets")
{
    std::mt19937_64 rng(32);
    const auto tbl = GroupTable::close(matrix_law(2, 5), elementary_mod(5));
    for (int i = 0; i < 30; ++i) {
        std::set<std::uint32_t> a;
        const unsigned size = 1 + rng() % 12;
        while (a.size() < size)
            a.insert(std::uint32_t(rng() % tbl.order()));
        const std::vector<std::uint32_t> av(a.begin(), a.end());
        const auto r = triple_product_growth(tbl, av);
        CHECK(r.size_a == a.size());
        CHECK(r.size_a <= r.size_aaa);
        CHECK(r.size_aaa <= std::min<std::size_t>(tbl.order(), r.size_a * r.size_a * r.size_a));
    }
    for (std::uint64_t m : {2, 3, 4, 5, 6, 10}) {
        const auto z = m_power_set(tbl, m);
        const std::set<std::uint32_t> zs(z.begin(), z.end());
        for (auto x : z)
            for (std::uint32_t g = 0; g < tbl.order(); ++g)
                CHECK(zs.count(tbl.conjugate(x, g)));
    }
}

TEST_CASE("generator file round trip")
{
    GeneratorFile f{2, 0, sl2_onetwothree_integer(3)};
    std::ostringstream out;
    write_generators(out, f);
    std::istringstream in(out.str());
    const auto back = read_generators(in);
    CHECK(back.d == 2);
    CHECK(back.modulus == 0);
    CHECK(back.matrices == f.matrices);
    std::ostringstream again;
    write_generators(again, back);
    CHECK(again.str() == out.str());
    for (const auto& z : f.matrices)
        CHECK(z.det() == 1);
}
