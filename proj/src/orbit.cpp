#include "expander/orbit.hpp"

#include "expander/number_theory.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <numeric>
#include <set>

namespace expander {

namespace {

std::size_t max_coordinate_bits(const ZVector& v)
{
    std::size_t bits = 0;
    for (const auto& x : v)
        bits = std::max(bits, bit_length(x));
    return bits;
}

void check_inverse_closed(const std::vector<ZMatrix>& gens)
{
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const ZMatrix inv = gens[i].inverse();
        if (std::find(gens.begin(), gens.end(), inv) == gens.end())
            throw PreconditionError("orbit_ball: inverse of generator " + std::to_string(i) + " " + gens[i].str() +
                                    " is not in the generator list");
    }
}

ZMatrix reflection(unsigned i)
{
    ZMatrix s = ZMatrix::identity(4);
    for (unsigned j = 0; j < 4; ++j)
        s(i, j) = i == j ? -1 : 2;
    return s;
}

} // namespace

OrbitBall orbit_ball(const std::vector<ZMatrix>& gens, const ZVector& base, unsigned radius, const OrbitOptions& opt)
{
    if (gens.empty())
        throw PreconditionError("orbit_ball: no generators");
    for (const auto& g : gens)
        if (g.dim() != base.size())
            throw PreconditionError("orbit_ball: generator dimension " + std::to_string(g.dim()) +
                                    " does not match base of length " + std::to_string(base.size()));
    if (opt.require_inverse_closed)
        check_inverse_closed(gens);

    OrbitBall ob;
    ob.generators = gens;
    ob.base = base;
    ob.radius = radius;
    ob.points.push_back(base);
    ob.depth.push_back(0);
    std::set<ZVector> seen{base};

    std::vector<std::size_t> frontier{0};
    for (unsigned level = 1; level <= radius && !frontier.empty(); ++level) {
        const std::size_t ng = gens.size();
        std::vector<ZVector> images(frontier.size() * ng);
        const auto total = static_cast<std::int64_t>(images.size());
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t t = 0; t < total; ++t)
            images[t] = gens[t % ng] * ob.points[frontier[t / ng]];

        std::vector<std::size_t> next;
        for (auto& img : images) {
            if (max_coordinate_bits(img) > opt.magnitude_bits) {
                ob.truncated = true;
                ob.reason = "magnitude cap of " + std::to_string(opt.magnitude_bits) + " bits";
                continue;
            }
            if (seen.count(img))
                continue;
            if (ob.points.size() >= opt.point_cap) {
                ob.truncated = true;
                ob.reason = "point cap of " + std::to_string(opt.point_cap);
                return ob;
            }
            seen.insert(img);
            next.push_back(ob.points.size());
            ob.points.push_back(std::move(img));
            ob.depth.push_back(level);
        }
        frontier = std::move(next);
    }
    return ob;
}

BigInt descartes_form(const ZVector& a)
{
    if (a.size() != 4)
        throw PreconditionError("descartes_form: expected 4 entries, got " + std::to_string(a.size()));
    BigInt sq = 0, sum = 0;
    for (const auto& x : a) {
        sq += x * x;
        sum += x;
    }
    return 2 * sq - sum * sum;
}

ZMatrix descartes_gram()
{
    ZMatrix q(4);
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = 0; j < 4; ++j)
            q(i, j) = i == j ? 1 : -1;
    return q;
}

std::vector<ZMatrix> apollonian_generators()
{
    return {reflection(0), reflection(1), reflection(2), reflection(3)};
}

ApollonianOrbit apollonian_orbit(const ZVector& root, unsigned depth, std::size_t cap)
{
    const BigInt f = descartes_form(root);
    if (f != 0)
        throw PreconditionError("apollonian_orbit: root (" + format_vector(root) + ") has F = " + f.str() +
                                ", not on the Descartes cone");
    const auto gens = apollonian_generators();

    ApollonianOrbit ao;
    ao.ball.generators = gens;
    ao.ball.base = root;
    ao.ball.radius = depth;
    ao.ball.points.push_back(root);
    ao.ball.depth.push_back(0);
    ao.words.push_back(1);
    ao.curvatures.assign(root.begin(), root.end());
    std::set<ZVector> seen{root};

    struct Word {
        ZVector quad;
        int last;
    };
    std::vector<Word> frontier{{root, -1}};
    std::uint64_t enumerated = 1;
    for (unsigned level = 1; level <= depth; ++level) {
        std::vector<Word> next;
        next.reserve(frontier.size() * 3);
        for (const auto& w : frontier)
            for (int i = 0; i < 4; ++i) {
                if (i == w.last)
                    continue;
                if (enumerated >= cap) {
                    ao.ball.truncated = true;
                    ao.ball.reason = "word cap of " + std::to_string(cap);
                    ao.words.push_back(next.size());
                    return ao;
                }
                ++enumerated;
                ZVector q = w.quad;
                q[i] = 2 * (q[0] + q[1] + q[2] + q[3] - q[i]) - q[i];
                if (seen.insert(q).second) {
                    ao.ball.points.push_back(q);
                    ao.ball.depth.push_back(level);
                    ao.curvatures.push_back(q[i]);
                } else {
                    ++ao.collisions;
                }
                next.push_back({std::move(q), i});
            }
        ao.words.push_back(next.size());
        frontier = std::move(next);
    }
    return ao;
}

ZMatrix pythagorean_gram() { return ZMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}; }

std::vector<ZMatrix> bootstrap_pythagorean_generators()
{
    const ZMatrix q = pythagorean_gram();
    auto qn = [](const std::array<int, 3>& a, const std::array<int, 3>& b) {
        return a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
    };
    std::vector<std::array<int, 3>> cols;
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b)
            for (int c = -3; c <= 3; ++c)
                cols.push_back({a, b, c});

    std::vector<std::array<long long, 3>> triples;
    for (long long m = 2; m < 12; ++m)
        for (long long n = 1; n < m; ++n)
            if ((m - n) % 2 == 1 && std::gcd(m, n) == 1) {
                triples.push_back({m * m - n * n, 2 * m * n, m * m + n * n});
                triples.push_back({2 * m * n, m * m - n * n, m * m + n * n});
            }

    std::vector<ZMatrix> found;
    for (const auto& c1 : cols) {
        if (qn(c1, c1) != 1)
            continue;
        for (const auto& c2 : cols) {
            if (qn(c2, c2) != 1 || qn(c1, c2) != 0)
                continue;
            for (const auto& c3 : cols) {
                if (qn(c3, c3) != -1 || qn(c1, c3) != 0 || qn(c2, c3) != 0)
                    continue;
                ZMatrix m(3);
                for (unsigned i = 0; i < 3; ++i) {
                    m(i, 0) = c1[i];
                    m(i, 1) = c2[i];
                    m(i, 2) = c3[i];
                }
                if (m.transpose() * q * m != q)
                    continue;
                bool ok = true;
                for (const auto& t : triples) {
                    const ZVector v{t[0], t[1], t[2]};
                    const ZVector w = m * v;
                    if (w[0] <= 0 || w[1] <= 0 || w[2] <= v[2] || (t[0] % 2 == 1 && w[0] % 2 == 0)) {
                        ok = false;
                        break;
                    }
                }
                if (ok)
                    found.push_back(std::move(m));
            }
        }
    }
    std::sort(found.begin(), found.end(),
              [](const ZMatrix& a, const ZMatrix& b) { return a.entries() < b.entries(); });
    return found;
}

std::vector<ZMatrix> pythagorean_generators()
{
    return {
        ZMatrix{{1, -2, 2}, {2, -1, 2}, {2, -2, 3}},
        ZMatrix{{1, 2, 2}, {2, 1, 2}, {2, 2, 3}},
        ZMatrix{{-1, 2, 2}, {-2, 1, 2}, {-2, 2, 3}},
    };
}

OrbitBall pythagorean_orbit(unsigned depth)
{
    OrbitOptions opt;
    opt.require_inverse_closed = false;
    return orbit_ball(pythagorean_generators(), ZVector{3, 4, 5}, depth, opt);
}

std::vector<ZMatrix> pell_generators()
{
    const ZMatrix m{{7, 6}, {8, 7}};
    return {m, m.inverse()};
}

ZVector pell_base() { return {1, 1}; }

std::vector<ZMatrix> fibonacci_generators()
{
    const ZMatrix m{{3, -1}, {1, 0}};
    return {m, m.inverse()};
}

ZVector fibonacci_base() { return {2, 1}; }

SieveReport saturation_report(const std::vector<ZVector>& points, const Polynomial& f)
{
    if (f.is_constant())
        throw PreconditionError("saturation_report: f = " + f.text() + " is constant");
    const auto n = static_cast<std::int64_t>(points.size());
    std::vector<BigInt> values(points.size());
    std::vector<std::optional<unsigned>> nus(points.size());
    std::vector<std::exception_ptr> errors(points.size());

#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            values[i] = f(points[i]);
            if (values[i] != 0)
                nus[i] = nu(values[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    SieveReport r;
    r.points = points.size();
    const std::uint32_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
    for (auto p : small)
        r.divisible[p] = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        r.value_gcd = gcd(r.value_gcd, values[i]);
        for (auto p : small)
            if (values[i] % p == 0)
                ++r.divisible[p];
        if (values[i] == 0)
            ++r.zeros;
        else if (!nus[i])
            ++r.unfactored;
        else
            ++r.histogram[*nus[i]];
    }
    if (!r.histogram.empty()) {
        r.r_star = r.histogram.begin()->first;
        for (std::size_t i = 0; i < points.size() && r.witnesses.size() < kSieveWitnesses; ++i)
            if (values[i] != 0 && nus[i] && *nus[i] == *r.r_star)
                r.witnesses.push_back({points[i], values[i], *nus[i]});
    }
    return r;
}

} // namespace expander
