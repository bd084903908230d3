#include "expander/codes.hpp"
#include "expander/constructions.hpp"
#include "expander/graph.hpp"
#include "expander/parallel.hpp"
#include "expander/spectral.hpp"

#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

using namespace expander;

namespace {

// Every codeword by brute force over all 2^n words.
std::set<Bits> codewords(const LinearCode& c)
{
    std::set<Bits> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << c.n); ++m) {
        Bits w(c.n);
        for (std::uint32_t i = 0; i < c.n; ++i)
            w[i] = (m >> i) & 1U;
        const Bits s = syndrome(c, w);
        if (std::all_of(s.begin(), s.end(), [](std::uint8_t b) { return b == 0; }))
            out.insert(w);
    }
    return out;
}

std::uint32_t brute_min_distance(const LinearCode& c)
{
    std::uint32_t best = c.n + 1;
    for (const Bits& w : codewords(c)) {
        const auto wt = std::uint32_t(std::count(w.begin(), w.end(), 1));
        if (wt)
            best = std::min(best, wt);
    }
    return best;
}

Graph random_cubic(std::mt19937_64& rng, std::uint32_t nmin, std::uint32_t nmax)
{
    const std::uint32_t n = 2 * std::uniform_int_distribution<std::uint32_t>(nmin / 2, nmax / 2)(rng);
    return random_connected_regular(n, 3, rng());
}

} // namespace

TEST_CASE("cycle codes")
{
    const auto k4 = cycle_code(complete_graph(4));
    CHECK(k4.code.n == 6);
    CHECK(k4.code.dim == 3);
    CHECK(min_distance_exact(k4.code) == 3u);
    CHECK(codewords(k4.code).size() == 8);

    const auto pet = cycle_code(petersen_graph());
    CHECK(pet.code.n == 15);
    CHECK(pet.code.dim == 6);
    CHECK(min_distance_exact(pet.code) == 5u);
    CHECK(brute_min_distance(pet.code) == 5);

    const auto c6 = cycle_code(cycle_graph(6));
    CHECK(c6.code.dim == 1);
    const auto words = codewords(c6.code);
    CHECK(words.count(Bits(6, 1)));
    CHECK(min_distance_exact(c6.code) == 6u);

    const auto two = cycle_code(disjoint_union(complete_graph(4), complete_graph(4)));
    CHECK_FALSE(two.connected);
    CHECK(two.components == 2);
    CHECK(two.code.dim == 12 - 8 + 2);
    CHECK(two.expected_dim == two.code.dim);
}

TEST_CASE("Tanner codes")
{
    const Graph k4 = complete_graph(4);
    const auto t = tanner_code(k4, even_weight_code(3), default_labeling(k4));
    CHECK(codewords(t) == codewords(cycle_code(k4).code));
    CHECK(with_min_distance(t).mindist == 3u);
    CHECK(tanner_code(k4, full_space_code(3), default_labeling(k4)).dim == 6);
    CHECK(tanner_code(k4, zero_code(3), default_labeling(k4)).dim == 0);
    CHECK_THROWS_AS(tanner_code(k4, even_weight_code(4), default_labeling(k4)), PreconditionError);
    EdgeLabeling bad = default_labeling(k4);
    bad.label[1] = bad.label[0];
    CHECK_THROWS_AS(tanner_code(k4, even_weight_code(3), bad), PreconditionError);
}

TEST_CASE("rate-distance certificate")
{
    const Graph k4 = complete_graph(4);
    const auto c = rate_distance_certificate(k4, even_weight_code(3), default_labeling(k4));
    CHECK(c.r0 == doctest::Approx(2.0 / 3));
    CHECK(c.delta0 == doctest::Approx(2.0 / 3));
    CHECK(c.lambda_normalized == doctest::Approx(1.0 / 3));
    CHECK(c.rate_bound == doctest::Approx(1.0 / 3));
    CHECK(c.rate == doctest::Approx(0.5));
    CHECK(c.delta_bound == doctest::Approx(0.25));
    REQUIRE(c.delta.has_value());
    CHECK(*c.delta == doctest::Approx(0.5));
    CHECK(c.rate_ok);
    CHECK(c.distance_ok == true);

    // delta0 = 1/3 = lambda/r.
    BitMatrix h(1, 3);
    h.set(0, 0, true);
    const auto weak = make_code(h);
    CHECK(with_min_distance(weak).mindist == 1u);
    CHECK_THROWS_AS(rate_distance_certificate(k4, weak, default_labeling(k4)), CertificateRefused);

    const auto rep = rate_distance_certificate(petersen_graph(), repetition_code(3),
                                               default_labeling(petersen_graph()));
    CHECK(rep.rate_bound_vacuous);
}

TEST_CASE("Tanner certificate on random 8-regular graphs")
{
    const auto inner = inner_code_search(8, Rational(0), 2 / std::sqrt(8.0), 3, 2000);
    REQUIRE(inner.success);
    REQUIRE(inner.code.mindist.has_value());
    CHECK(double(*inner.code.mindist) / 8 > 2 / std::sqrt(8.0));
    std::mt19937_64 rng(51);
    unsigned certified = 0, distance_checked = 0;
    for (int i = 0; i < 20; ++i) {
        const Graph g = random_connected_regular(16 + 2 * (i % 5), 8, rng());
        try {
            const auto c = rate_distance_certificate(g, inner.code, random_labeling(g, rng()));
            ++certified;
            CHECK(c.rate + 1e-12 >= c.rate_bound);
            if (c.distance_ok) {
                ++distance_checked;
                CHECK(*c.distance_ok);
            }
        } catch (const CertificateRefused&) {
        }
    }
    CHECK(certified > 10);
    CHECK(distance_checked > 0);
}

TEST_CASE("inner code search")
{
    const auto r = inner_code_search(3, Rational(1, 2), 0.5, 1, 100);
    REQUIRE(r.success);
    CHECK(r.code.dim == 2);
    CHECK(r.code.mindist == 2u);
    CHECK(brute_min_distance(r.code) == 2);
    CHECK_FALSE(inner_code_search(5, Rational(0), 1.0, 1, 50).success);
    for (std::uint32_t n : {6u, 7u, 9u}) {
        const auto s = inner_code_search(n, Rational(1, 3), 0.2, n, 200);
        if (s.code.mindist)
            CHECK(*s.code.mindist == brute_min_distance(s.code));
    }
    CHECK_THROWS_AS(inner_code_search(2, Rational(1, 2), 0.5, 1, 10), PreconditionError);
}

TEST_CASE("small code oracles")
{
    CHECK(min_distance_exact(repetition_code(5)) == 5u);
    CHECK(min_distance_exact(even_weight_code(3)) == 2u);
    CHECK_FALSE(min_distance_exact(zero_code(4)).has_value());
    CHECK_THROWS_AS(min_distance_exact(full_space_code(40)), CapExceeded);
}

TEST_CASE("syndromes")
{
    const auto cc = cycle_code(complete_graph(4)).code;
    for (std::uint32_t i = 0; i < cc.n; ++i) {
        Bits e(cc.n, 0);
        e[i] = 1;
        const Bits s = syndrome(cc, e);
        for (std::uint32_t r = 0; r < cc.h.rows(); ++r)
            CHECK(s[r] == cc.h.get(r, i));
    }
    // Triangle 0-1-2: edges (0,1), (0,2), (1,2).
    const auto eop = edge_of_port(complete_graph(4));
    const Graph k4 = complete_graph(4);
    Bits tri(cc.n, 0);
    for (std::uint32_t v : {0u, 1u, 2u})
        for (std::uint32_t p = 0; p < 3; ++p)
            if (k4.neighbor(v, p) <= 2)
                tri[eop[v * 3 + p]] = 1;
    CHECK(std::count(tri.begin(), tri.end(), 1) == 3);
    const Bits s = syndrome(cc, tri);
    CHECK(std::all_of(s.begin(), s.end(), [](std::uint8_t b) { return b == 0; }));
    CHECK_THROWS_AS(syndrome(cc, Bits(5, 0)), PreconditionError);
}

TEST_CASE("Alon-Chung fixtures")
{
    const Graph k4 = complete_graph(4);
    const auto pair = alon_chung_check(k4, VertexSet(4, {0, 1}));
    CHECK(pair.e_measured == 1);
    CHECK(pair.expected == doctest::Approx(1.5));
    CHECK(pair.deviation == doctest::Approx(0.5));
    CHECK(pair.bound == doctest::Approx(0.5));
    CHECK(pair.ok);
    const auto none = alon_chung_check(k4, VertexSet(4));
    CHECK(none.e_measured == 0);
    CHECK(none.deviation == 0);
    CHECK(none.ok);
    const Graph pet = petersen_graph();
    const auto s = spectrum(pet);
    unsigned five = 0;
    for (std::uint64_t m = 0; m < 1024; ++m)
        if (__builtin_popcountll(m) == 5) {
            ++five;
            CHECK(alon_chung_check(pet, s, VertexSet::from_mask(10, m)).ok);
        }
    CHECK(five == 252);
}

TEST_CASE("code file round trip")
{
    const auto c = cycle_code(petersen_graph()).code;
    std::ostringstream out;
    write_code(out, c);
    std::istringstream in(out.str());
    const auto back = read_code(in);
    CHECK(back.h == c.h);
    CHECK(back.dim == c.dim);
    std::ostringstream again;
    write_code(again, back);
    CHECK(again.str() == out.str());
    std::istringstream bad("1 3\n1a1\n");
    CHECK_THROWS_AS(read_code(bad), PreconditionError);
}

TEST_CASE("property: cycle-code laws")
{
    std::mt19937_64 rng(52);
    for (int i = 0; i < 100; ++i) {
        const Graph g = random_cubic(rng, 4, 40);
        const auto cc = cycle_code(g);
        CHECK(cc.code.dim == edge_count(g) - g.n() + 1);
        CHECK(cc.code.dim == cc.code.n - cc.code.h.rank());
        CHECK(min_distance_exact(cc.code) == girth(g));
    }
}

TEST_CASE("property: Tanner dimension bound and row sparsity")
{
    std::mt19937_64 rng(53);
    for (int i = 0; i < 60; ++i) {
        const std::uint32_t r = 3 + i % 4;
        std::uint32_t n;
        do
            n = std::uniform_int_distribution<std::uint32_t>(r + 1, 20)(rng);
        while ((n * r) % 2);
        const Graph g = random_regular(n, r, rng());
        const auto c0 = inner_code_search(r, Rational(0), 0.0, rng(), 5).code;
        const auto t = tanner_code(g, c0, random_labeling(g, rng()));
        const double r0 = double(c0.dim) / r;
        CHECK(double(t.dim) + 1e-9 >= (2 * r0 - 1) * edge_count(g));
        for (std::uint32_t row = 0; row < t.h.rows(); ++row)
            CHECK(t.h.row_weight(row) <= r);
    }
}

TEST_CASE("property: Alon-Chung on every subset, n <= 12")
{
    std::mt19937_64 rng(54);
    for (int i = 0; i < 15; ++i) {
        const std::uint32_t k = 3 + i % 3;
        std::uint32_t n;
        do
            n = std::uniform_int_distribution<std::uint32_t>(k + 1, 12)(rng);
        while ((n * k) % 2);
        const Graph g = random_regular(n, k, rng());
        const auto s = spectrum(g);
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
            CHECK(alon_chung_check(g, s, VertexSet::from_mask(n, m)).ok);
    }
}

TEST_CASE("minimum distance is thread-count independent")
{
    std::mt19937_64 rng(55);
    for (int i = 0; i < 10; ++i) {
        const auto c = cycle_code(random_cubic(rng, 20, 40)).code;
        const auto s = serial::min_distance_exact(c);
        for (int t : {1, 4, 8}) {
            set_thread_count(t);
            CHECK(min_distance_exact(c) == s);
        }
    }
    set_thread_count(1);
}
