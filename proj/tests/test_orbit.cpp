#include "expander/number_theory.hpp"
#include "expander/orbit.hpp"
#include "expander/parallel.hpp"
#include "expander/polynomial.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace expander;

namespace {

bool contains(const OrbitBall& b, const ZVector& v)
{
    return std::find(b.points.begin(), b.points.end(), v) != b.points.end();
}

BigInt gcd3(const ZVector& v)
{
    BigInt g = 0;
    for (const auto& x : v)
        g = gcd(g, abs(x));
    return g;
}

} // namespace

TEST_CASE("Pell orbit")
{
    const auto b = orbit_ball(pell_generators(), pell_base(), 2);
    CHECK(b.points.front() == pell_base());
    CHECK(contains(b, {1, 1}));
    CHECK(contains(b, {13, 15}));
    CHECK(contains(b, {181, 209}));
    for (const auto& p : b.points)
        CHECK(4 * p[0] * p[0] - 3 * p[1] * p[1] == 1);
    const auto far = orbit_ball(pell_generators(), pell_base(), 12);
    for (const auto& p : far.points) {
        CHECK(4 * p[0] * p[0] - 3 * p[1] * p[1] == 1);
        CHECK_FALSE(is_prime(BigInt(abs(p[1]))));
    }
}

TEST_CASE("Fibonacci orbit")
{
    const auto b = orbit_ball(fibonacci_generators(), fibonacci_base(), 3);
    for (const ZVector& v : {ZVector{2, 1}, ZVector{5, 2}, ZVector{13, 5}, ZVector{34, 13}})
        CHECK(contains(b, v));
    for (const auto& p : b.points)
        CHECK(p[0] * p[0] - 3 * p[0] * p[1] + p[1] * p[1] == -1);
}

TEST_CASE("orbit ball structure and caps")
{
    const auto b = orbit_ball(pell_generators(), pell_base(), 5);
    CHECK(b.points.size() == 11);
    CHECK(b.depth.front() == 0);
    const std::set<ZVector> all(b.points.begin(), b.points.end());
    CHECK(all.size() == b.points.size());
    for (std::size_t i = 1; i < b.points.size(); ++i) {
        bool parent = false;
        for (std::size_t j = 0; j < b.points.size(); ++j)
            if (b.depth[j] + 1 == b.depth[i])
                for (const auto& g : b.generators)
                    parent = parent || g * b.points[j] == b.points[i];
        CHECK(parent);
    }
    OrbitOptions small;
    small.point_cap = 5;
    const auto t = orbit_ball(pell_generators(), pell_base(), 10, small);
    CHECK(t.truncated);
    CHECK(t.points.size() <= 5);
    OrbitOptions narrow;
    narrow.magnitude_bits = 20;
    const auto m = orbit_ball(pell_generators(), pell_base(), 10, narrow);
    CHECK(m.truncated);
    for (const auto& p : m.points)
        CHECK(bit_length(p[1]) <= 20);
    const std::vector<ZMatrix> one{pell_generators()[0]};
    CHECK_THROWS_AS(orbit_ball(one, pell_base(), 2), PreconditionError);
}

TEST_CASE("Descartes form and reflections")
{
    CHECK(descartes_form({18, 23, 27, 146}) == 0);
    CHECK(descartes_form({-1, 2, 2, 3}) == 0);
    CHECK(descartes_form({1, 1, 1, 1}) == -8);
    const auto s = apollonian_generators();
    const ZMatrix q = descartes_gram();
    const ZVector root{18, 23, 27, 146};
    CHECK(s[3] * root == ZVector{18, 23, 27, -10});
    CHECK(s[0] * root == ZVector{374, 23, 27, 146});
    for (const auto& m : s) {
        CHECK(m * m == ZMatrix::identity(4));
        CHECK(m.transpose() * q * m == q);
    }
    for (const ZVector& v : {ZVector{1, 2, 3, 4}, ZVector{-5, 0, 7, 11}})
        CHECK(bilinear(q, v, v) == descartes_form(v));
}

TEST_CASE("Apollonian orbits")
{
    const auto d1 = apollonian_orbit({-1, 2, 2, 3}, 1);
    CHECK(d1.words == std::vector<std::uint64_t>{1, 4});
    for (const auto& p : d1.ball.points)
        CHECK(descartes_form(p) == 0);
    CHECK_THROWS_AS(apollonian_orbit({1, 1, 1, 1}, 2), PreconditionError);

    const auto d6 = apollonian_orbit({18, 23, 27, 146}, 6);
    for (unsigned d = 1; d <= 6; ++d) {
        std::uint64_t expect = 4;
        for (unsigned i = 1; i < d; ++i)
            expect *= 3;
        CHECK(d6.words[d] == expect);
    }
    CHECK(d6.collisions == 0);
    CHECK(d6.ball.points.size() == 1 + 4 + 12 + 36 + 108 + 324 + 972);
    CHECK(std::find(d6.curvatures.begin(), d6.curvatures.end(), BigInt(23)) != d6.curvatures.end());
    // Each coordinate keeps its parity under the reflections, so x4 stays even.
    for (const char* f : {"x4", "x2"}) {
        const auto rep = saturation_report(d6.ball, Polynomial::parse(f));
        const unsigned coord = f[1] - '1';
        const bool prime_seen = std::any_of(d6.ball.points.begin(), d6.ball.points.end(),
                                            [&](const ZVector& p) { return is_prime(abs(p[coord])); });
        CHECK(rep.histogram.count(1) == (prime_seen ? 1u : 0u));
        for (const auto& w : rep.witnesses)
            CHECK(w.nu == *rep.r_star);
    }
    CHECK(saturation_report(d6.ball, Polynomial::parse("x4")).r_star == 2u);
    CHECK(saturation_report(d6.ball, Polynomial::parse("x2")).r_star == 1u);

    // The root (-1,2,2,3) has repeated curvatures, so words collide.
    const auto sym = apollonian_orbit({-1, 2, 2, 3}, 5);
    CHECK(sym.collisions > 0);
    const auto capped = apollonian_orbit({18, 23, 27, 146}, 12, 1000);
    CHECK(capped.ball.truncated);
}

TEST_CASE("Pythagorean generators and orbit")
{
    const ZMatrix q = pythagorean_gram();
    const auto found = bootstrap_pythagorean_generators();
    auto frozen = pythagorean_generators();
    const auto lex = [](const ZMatrix& a, const ZMatrix& b) { return a.entries() < b.entries(); };
    std::sort(frozen.begin(), frozen.end(), lex);
    CHECK(found == frozen);
    REQUIRE(found.size() == 3);
    for (const auto& m : found)
        CHECK(m.transpose() * q * m == q);

    const auto tree = pythagorean_orbit(4);
    CHECK(tree.points.front() == ZVector{3, 4, 5});
    CHECK(tree.points.size() == 1 + 3 + 9 + 27 + 81);
    const std::set<ZVector> distinct(tree.points.begin(), tree.points.end());
    CHECK(distinct.size() == tree.points.size());
    const auto area = Polynomial::parse("x1*x2/2");
    for (const auto& p : tree.points) {
        CHECK(p[0] * p[0] + p[1] * p[1] == p[2] * p[2]);
        CHECK(gcd3(p) == 1);
        CHECK(p[0] > 0);
        CHECK(p[1] > 0);
        CHECK(area(p) % 6 == 0);
    }
    const auto rep = saturation_report(tree, area);
    CHECK(rep.r_star == 2u);
    CHECK(rep.witnesses.front().value == 6);
    CHECK(rep.value_gcd == 6);
}

TEST_CASE("saturation report bookkeeping")
{
    const auto ball = orbit_ball(pell_generators(), pell_base(), 6);
    const auto rep = saturation_report(ball, Polynomial::parse("x2 - 1"));
    std::uint64_t total = 0;
    for (const auto& [nu, count] : rep.histogram)
        total += count;
    CHECK(rep.points == ball.points.size());
    CHECK(rep.zeros == 1);
    CHECK(total + rep.zeros + rep.unfactored == rep.points);
    CHECK(rep.witnesses.size() <= kSieveWitnesses);
    CHECK_THROWS_AS(saturation_report(ball, Polynomial::parse("1")), PreconditionError);
    const auto tree = pythagorean_orbit(2);
    try {
        saturation_report(tree, Polynomial::parse("x1/2"));
        FAIL("expected NonIntegralError");
    } catch (const NonIntegralError& e) {
        CHECK(e.point() == ZVector{3, 4, 5});
    }
}

TEST_CASE("orbit enumeration is thread-count independent")
{
    set_thread_count(1);
    const auto a1 = apollonian_orbit({18, 23, 27, 146}, 7);
    const auto p1 = orbit_ball(apollonian_generators(), {18, 23, 27, 146}, 6);
    const auto r1 = saturation_report(a1.ball, Polynomial::parse("x1*x4"));
    set_thread_count(8);
    const auto a8 = apollonian_orbit({18, 23, 27, 146}, 7);
    const auto p8 = orbit_ball(apollonian_generators(), {18, 23, 27, 146}, 6);
    const auto r8 = saturation_report(a8.ball, Polynomial::parse("x1*x4"));
    set_thread_count(1);
    CHECK(a1.ball.points == a8.ball.points);
    CHECK(a1.curvatures == a8.curvatures);
    CHECK(p1.points == p8.points);
    CHECK(r1.histogram == r8.histogram);
    CHECK(r1.witnesses.size() == r8.witnesses.size());
    for (std::size_t i = 0; i < r1.witnesses.size(); ++i)
        CHECK(r1.witnesses[i].point == r8.witnesses[i].point);
}
