#include "expander/constructions.hpp"

#include "expander/parallel.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace expander {

Graph zigzag(const Graph& x, const Graph& y)
{
    if (y.n() != x.k())
        throw PreconditionError("zigzag needs |V(y)| = degree(x): |V(y)| = " + std::to_string(y.n()) +
                                ", degree(x) = " + std::to_string(x.k()));
    const std::uint64_t nm = std::uint64_t(x.n()) * y.n();
    if (nm > std::numeric_limits<std::uint32_t>::max())
        throw CapExceeded("zigzag product too large", nm);
    const auto m = y.n(), d = y.k(), d2 = d * d;
    std::vector<Port> rot(nm * d2);
#pragma omp parallel for schedule(static)
    for (std::int64_t vi = 0; vi < static_cast<std::int64_t>(nm); ++vi) {
        const auto v = static_cast<std::uint32_t>(vi / m), i = static_cast<std::uint32_t>(vi % m);
        for (std::uint32_t a = 0; a < d; ++a) {
            const Port s1 = y.rot(i, a);
            const Port s2 = x.rot(v, s1.vertex);
            for (std::uint32_t b = 0; b < d; ++b) {
                const Port s3 = y.rot(s2.port, b);
                rot[std::size_t(vi) * d2 + a * d + b] = {s2.vertex * m + s3.vertex, s3.port * d + s1.port};
            }
        }
    }
    return Graph(static_cast<std::uint32_t>(nm), d2, std::move(rot));
}

namespace {

Graph configuration_model(std::uint32_t n, std::uint32_t k, std::uint64_t seed)
{
    std::vector<std::uint32_t> ports(std::size_t(n) * k);
    std::iota(ports.begin(), ports.end(), 0U);
    std::mt19937_64 rng(seed);
    std::shuffle(ports.begin(), ports.end(), rng);
    std::vector<Port> rot(ports.size());
    std::size_t i = 0;
    for (; i + 1 < ports.size(); i += 2) {
        const Port a{ports[i] / k, ports[i] % k}, b{ports[i + 1] / k, ports[i + 1] % k};
        rot[ports[i]] = b;
        rot[ports[i + 1]] = a;
    }
    if (i < ports.size())
        rot[ports[i]] = {ports[i] / k, ports[i] % k};
    return Graph(n, k, std::move(rot));
}

} // namespace

Graph random_regular(std::uint32_t n, std::uint32_t k, std::uint64_t seed)
{
    if (n == 0 || k == 0)
        throw PreconditionError("random regular graph needs n, k >= 1");
    if ((std::uint64_t(n) * k) % 2)
        throw PreconditionError("n*k must be even (n = " + std::to_string(n) + ", k = " + std::to_string(k) + ")");
    return configuration_model(n, k, seed);
}

Graph random_base_graph(std::uint32_t n, std::uint32_t k, std::uint64_t seed)
{
    if (n == 0 || k == 0)
        throw PreconditionError("random regular graph needs n, k >= 1");
    return configuration_model(n, k, seed);
}

Graph random_connected_base(std::uint32_t n, std::uint32_t k, std::uint64_t seed, unsigned max_attempts)
{
    for (unsigned a = 0; a < max_attempts; ++a) {
        auto g = random_base_graph(n, k, derive_seed(seed, a));
        if (is_connected(g))
            return g;
    }
    throw CapExceeded("no connected sample after " + std::to_string(max_attempts) + " attempts", max_attempts);
}

Graph random_connected_regular(std::uint32_t n, std::uint32_t k, std::uint64_t seed, unsigned max_attempts)
{
    for (unsigned a = 0; a < max_attempts; ++a) {
        auto g = random_regular(n, k, derive_seed(seed, a));
        if (is_connected(g))
            return g;
    }
    throw CapExceeded("no connected sample after " + std::to_string(max_attempts) + " attempts", max_attempts);
}

BaseSearchResult base_graph_search(std::uint32_t d, std::uint64_t seed, unsigned trials, double threshold)
{
    if (d < 3)
        throw PreconditionError("base graph search needs d >= 3");
    if (trials == 0)
        throw PreconditionError("base graph search needs at least one trial");
    const std::uint32_t n = d * d * d * d;
    std::vector<double> ratio(trials, 2.0);
    ExceptionSink sink;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t)
        sink.run([&] {
            const auto g = random_connected_base(n, d, derive_seed(seed, std::uint64_t(t)));
            ratio[t] = lambda_nontrivial(spectrum(g)) / d;
        });
    sink.rethrow();
    const auto best = static_cast<unsigned>(std::min_element(ratio.begin(), ratio.end()) - ratio.begin());
    if (ratio[best] > threshold)
        throw SearchExhausted("base graph search: best lambda/d = " + std::to_string(ratio[best]) +
                                  " after " + std::to_string(trials) + " trials exceeds threshold " +
                                  std::to_string(threshold),
                              ratio[best]);
    return {random_connected_base(n, d, derive_seed(seed, best)), ratio[best], best};
}

ZigZagFamily iterate_family(const Graph& base, unsigned levels, const SpectrumOptions& opt)
{
    const auto d = base.k();
    if (base.n() != d * d * d * d)
        throw PreconditionError("family base must be a (d^4, d)-graph; got n = " + std::to_string(base.n()) +
                                ", d = " + std::to_string(d));
    ZigZagFamily fam;
    fam.base = base;
    fam.base_ratio = lambda_nontrivial(spectrum(base, opt)) / d;
    Graph current;
    for (unsigned level = 1; level <= levels; ++level) {
        const std::uint64_t n = level == 1 ? std::uint64_t(base.n()) : std::uint64_t(current.n()) * base.n();
        if (n > kFamilyVertexCap) {
            fam.truncated = true;
            break;
        }
        current = level == 1 ? square(base) : zigzag(square(current), base);
        const auto s = spectrum(current, opt);
        FamilyLevel fl;
        fl.level = level;
        fl.graph = current;
        fl.lambda_normalized = lambda_nontrivial(s) / current.k();
        fl.partial_spectrum = s.partial;
        fl.residual = s.residual;
        fam.levels.push_back(std::move(fl));
    }
    return fam;
}

} // namespace expander
