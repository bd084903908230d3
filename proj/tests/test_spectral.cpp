#include "expander/constructions.hpp"
#include "expander/graph.hpp"
#include "expander/group.hpp"
#include "expander/parallel.hpp"
#include "expander/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace expander;

namespace {

void check_values(const Spectrum& s, std::vector<double> want)
{
    REQUIRE(s.eigenvalues.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
        CHECK(s.eigenvalues[i] == doctest::Approx(want[i]).epsilon(1e-9));
}

Graph random_graph(std::mt19937_64& rng, std::uint32_t nmax)
{
    const std::uint32_t k = std::uniform_int_distribution<std::uint32_t>(2, 6)(rng);
    std::uint32_t n;
    do
        n = std::uniform_int_distribution<std::uint32_t>(2, nmax)(rng);
    while ((n * k) % 2);
    return random_regular(n, k, rng());
}

} // namespace

TEST_CASE("fixture spectra")
{
    check_values(spectrum(complete_graph(4)), {3, -1, -1, -1});
    check_values(spectrum(cycle_graph(4)), {2, 0, 0, -2});
    check_values(spectrum(petersen_graph()), {3, 1, 1, 1, 1, 1, -2, -2, -2, -2});
    const auto m = spectrum(petersen_graph()).multiplicities();
    REQUIRE(m.size() == 3);
    CHECK(m[1].second == 5);
    CHECK(m[2].second == 4);
}

TEST_CASE("lambda_abs and Ramanujan")
{
    CHECK(lambda_abs(spectrum(complete_graph(4))) == doctest::Approx(1));
    CHECK(lambda_abs(spectrum(cycle_graph(4))) == doctest::Approx(0).epsilon(1e-9));
    CHECK(lambda_abs(spectrum(petersen_graph())) == doctest::Approx(2));
    const auto p = is_ramanujan(petersen_graph());
    CHECK(p.ramanujan);
    CHECK(p.margin == doctest::Approx(2 * std::sqrt(2.0) - 2));
    CHECK(is_ramanujan(complete_graph(4)).ramanujan);
    const auto c6 = is_ramanujan(cycle_graph(6));
    CHECK(c6.ramanujan);
    CHECK(c6.lambda == doctest::Approx(1));
}

TEST_CASE("connectivity tests")
{
    auto c = connectivity_tests(cycle_graph(6), spectrum(cycle_graph(6)));
    CHECK(c.connected);
    CHECK(c.bipartite);
    c = connectivity_tests(cycle_graph(5), spectrum(cycle_graph(5)));
    CHECK(c.connected);
    CHECK_FALSE(c.bipartite);
    const Graph two = disjoint_union(complete_graph(4), complete_graph(4));
    c = connectivity_tests(two, spectrum(two));
    CHECK_FALSE(c.connected);
    CHECK_FALSE(c.bipartite);
}

TEST_CASE("Cheeger bounds")
{
    auto b = cheeger_bounds(spectrum(complete_graph(4)), 4 - 1);
    CHECK(b.lower == doctest::Approx(2));
    CHECK(b.upper == doctest::Approx(std::sqrt(8.0)));
    b = cheeger_bounds(spectrum(cycle_graph(6)), 2);
    CHECK(b.lower == doctest::Approx(0.5));
    CHECK(b.upper == doctest::Approx(std::sqrt(3.0)));
    const Graph two = disjoint_union(cycle_graph(3), cycle_graph(3));
    b = cheeger_bounds(spectrum(two), 2);
    CHECK(b.lower == doctest::Approx(0).epsilon(1e-9));
    CHECK(b.upper == doctest::Approx(0).epsilon(1e-6));
}

TEST_CASE("mixing profile examples")
{
    std::vector<double> delta(4, 0.0);
    delta[0] = 1;
    const auto k4 = mixing_profile(complete_graph(4), delta, 1);
    // Delta delta_0 = (0, 1/3, 1/3, 1/3); distance to u is sqrt(1/16 + 3/144).
    CHECK(k4.measured[1] == doctest::Approx(std::sqrt(1.0 / 16 + 3.0 / 144)));
    CHECK(k4.ratio == doctest::Approx(1.0 / 3));
    CHECK(k4.measured[1] <= k4.bound[1] + 1e-12);

    const std::vector<double> u(10, 0.1);
    const auto flat = mixing_profile(petersen_graph(), u, 5);
    for (double d : flat.measured)
        CHECK(d == doctest::Approx(0).epsilon(1e-12));

    std::vector<double> pt(10, 0.0);
    pt[0] = 1;
    const auto pet = mixing_profile(petersen_graph(), pt, 5);
    CHECK(pet.measured[5] <= std::pow(2.0 / 3, 5) * pet.measured[0] + 1e-12);

    std::vector<double> c6(6, 0.0);
    c6[0] = 1;
    CHECK_THROWS_AS(mixing_profile(cycle_graph(6), c6, 3), PreconditionError);
}

TEST_CASE("Alon-Boppana floor and Kazhdan bound")
{
    CHECK(alon_boppana_floor(3) == doctest::Approx(2.8284).epsilon(1e-4));
    CHECK(alon_boppana_floor(4) == doctest::Approx(3.4641).epsilon(1e-4));
    CHECK(alon_boppana_floor(7) == doctest::Approx(4.8990).epsilon(1e-4));
    CHECK_THROWS_AS(alon_boppana_floor(2), PreconditionError);

    const Element one{1}, two{2};
    const Element gens[] = {one};
    const auto z4 = GroupTable::close(cyclic_law(4), gens);
    const GenSet k4set(z4, {z4.index_of(Element{1}), z4.index_of(Element{3}), z4.index_of(two)});
    CHECK(kazhdan_lower_bound(cayley_graph(z4, k4set)) == doctest::Approx(std::sqrt(8.0 / 3)));

    const auto z6 = GroupTable::close(cyclic_law(6), gens);
    const GenSet c6set(z6, {z6.index_of(Element{1}), z6.index_of(Element{5})});
    CHECK(kazhdan_lower_bound(cayley_graph(z6, c6set)) == doctest::Approx(1));

    CHECK(kazhdan_lower_bound(spectrum(disjoint_union(cycle_graph(3), cycle_graph(3)))) ==
          doctest::Approx(0).epsilon(1e-6));
}

TEST_CASE("property: spectrum invariants")
{
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        const Graph g = random_graph(rng, 64);
        const auto s = spectrum(g);
        REQUIRE(s.eigenvalues.size() == g.n());
        CHECK(s.lambda0() <= g.k() + kSpectralTol);
        CHECK(s.lambda_min() >= -double(g.k()) - kSpectralTol);
        CHECK(std::is_sorted(s.eigenvalues.rbegin(), s.eigenvalues.rend()));
        const auto a = adjacency_matrix(g);
        double trace = 0;
        for (std::uint32_t v = 0; v < g.n(); ++v)
            trace += a(v, v);
        CHECK(std::abs(std::accumulate(s.eigenvalues.begin(), s.eigenvalues.end(), 0.0) - trace) <=
              g.n() * kSpectralTol);
        if (is_connected(g)) {
            CHECK(s.lambda0() == doctest::Approx(g.k()).epsilon(1e-9));
            const auto es = eigensystem(g);
            const auto top = es.vectors.col(es.vectors.cols() - 1);
            CHECK(top.maxCoeff() - top.minCoeff() <= 1e-8);
        }
    }
}

TEST_CASE("property: spectral connectivity agrees with BFS")
{
    std::mt19937_64 rng(22);
    for (int i = 0; i < 500; ++i) {
        const Graph g = random_graph(rng, 64);
        const auto c = connectivity_tests(g, spectrum(g));
        CHECK(c.connected == is_connected(g));
        CHECK(c.bipartite == bipartition(g).has_value());
    }
}

bool is_simple(const Graph& g)
{
    const auto a = adjacency_matrix(g);
    for (std::uint32_t i = 0; i < g.n(); ++i)
        for (std::uint32_t j = 0; j < g.n(); ++j)
            if (a(i, j) > (i == j ? 0 : 1))
                return false;
    return true;
}

bool h_upper_ok(const Graph& g)
{
    return cheeger_exact(g).value.to_double() <= cheeger_bounds(spectrum(g), g.k()).upper + kSpectralTol;
}

TEST_CASE("the upper Cheeger bound fails on K3 and the doubled triangle")
{
    const auto k3 = cheeger_bounds(spectrum(complete_graph(3)), 2);
    CHECK(cheeger_exact(complete_graph(3)).value == Rational(2));
    CHECK(k3.upper == doctest::Approx(std::sqrt(3.0)));
    const std::pair<std::uint32_t, std::uint32_t> e[] = {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {0, 2}, {0, 2}};
    const Graph doubled = from_simple_edges(3, e);
    CHECK(cheeger_exact(doubled).value == Rational(4));
    CHECK(cheeger_bounds(spectrum(doubled), 4).upper == doctest::Approx(std::sqrt(12.0)));
}

TEST_CASE("property: Cheeger sandwich")
{
    std::mt19937_64 rng(23);
    unsigned upper_checked = 0;
    for (int i = 0; i < 300; ++i) {
        const Graph g = random_graph(rng, 16);
        const auto s = spectrum(g);
        const auto b = cheeger_bounds(s, g.k());
        const double h = cheeger_exact(g).value.to_double();
        CHECK(b.lower <= h + kSpectralTol);
        CHECK(h <= std::sqrt(2.0 * g.k() * std::max(0.0, g.k() - s.lambda1())) + kSpectralTol);
        if (is_simple(g) && g.n() > 3) {
            ++upper_checked;
            CHECK(h <= b.upper + kSpectralTol);
        }
    }
    while (upper_checked < 150) {
        const std::uint32_t k = std::uniform_int_distribution<std::uint32_t>(2, 4)(rng);
        std::uint32_t n;
        do
            n = std::uniform_int_distribution<std::uint32_t>(k + 2, 16)(rng);
        while ((n * k) % 2);
        const Graph g = random_regular(n, k, rng());
        if (!is_simple(g))
            continue;
        ++upper_checked;
        CHECK(h_upper_ok(g));
    }
}

TEST_CASE("property: mixing is monotone and under the bound")
{
    std::mt19937_64 rng(24);
    int checked = 0;
    while (checked < 40) {
        const Graph g = random_graph(rng, 64);
        if (!is_connected(g) || bipartition(g))
            continue;
        ++checked;
        std::vector<double> mu(g.n());
        for (double& x : mu)
            x = std::uniform_real_distribution<double>(0, 1)(rng);
        const double total = std::accumulate(mu.begin(), mu.end(), 0.0);
        for (double& x : mu)
            x /= total;
        const auto p = mixing_profile(g, mu, 40);
        for (unsigned t = 0; t <= 40; ++t) {
            CHECK(p.measured[t] <= p.bound[t] + 1e-9);
            if (t)
                CHECK(p.measured[t] <= p.measured[t - 1] + 1e-12);
        }
    }
}

TEST_CASE("property: dense and iterative solvers agree")
{
    std::mt19937_64 rng(25);
    for (int i = 0; i < 20; ++i) {
        std::uint32_t n = std::uniform_int_distribution<std::uint32_t>(100, 600)(rng) * 2;
        const std::uint32_t k = 3 + i % 3;
        const Graph g = random_connected_regular(n, k, rng());
        const auto d = spectrum(g);
        SpectrumOptions opt;
        opt.force_iterative = true;
        const auto it = spectrum(g, opt);
        CHECK(it.partial);
        CHECK(std::abs(it.lambda0() - d.lambda0()) <= 10 * kSpectralTol);
        CHECK(std::abs(it.lambda1() - d.lambda1()) <= 10 * kSpectralTol);
        CHECK(std::abs(it.lambda_min() - d.lambda_min()) <= 10 * kSpectralTol);
        CHECK(std::abs(lambda_abs(it) - lambda_abs(d)) <= 10 * kSpectralTol);
    }
}

TEST_CASE("thread count does not change results")
{
    const Graph g = random_connected_regular(3000, 3, 7);
    std::vector<double> x(g.n());
    std::iota(x.begin(), x.end(), 0.0);
    std::vector<double> y1(g.n()), y8(g.n());
    SpectrumOptions opt;
    opt.force_iterative = true;
    set_thread_count(1);
    adjacency_apply(g, x, y1);
    const auto s1 = spectrum(g, opt);
    const double d1 = dot(x, y1);
    set_thread_count(8);
    adjacency_apply(g, x, y8);
    const auto s8 = spectrum(g, opt);
    CHECK(y1 == y8);
    CHECK(dot(x, y8) == d1);
    CHECK(s1.eigenvalues == s8.eigenvalues);
    CHECK(serial::dot(x, y1) == doctest::Approx(d1));
    set_thread_count(1);
}
