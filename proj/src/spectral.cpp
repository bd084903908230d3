#include "expander/spectral.hpp"

#include "expander/lanczos.hpp"
#include "expander/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace expander {

std::vector<std::pair<double, std::uint32_t>> Spectrum::multiplicities() const
{
    std::vector<std::pair<double, std::uint32_t>> out;
    for (double e : eigenvalues) {
        if (!out.empty() && std::abs(out.back().first - e) <= kMultiplicityTol)
            ++out.back().second;
        else
            out.emplace_back(e, 1);
    }
    return out;
}

void adjacency_apply(const Graph& g, std::span<const double> x, std::span<double> y)
{
    const auto n = static_cast<std::int64_t>(g.n());
#pragma omp parallel for schedule(static)
    for (std::int64_t v = 0; v < n; ++v) {
        double s = 0.0;
        for (const Port& t : g.ports(static_cast<std::uint32_t>(v)))
            s += x[t.vertex];
        y[v] = s;
    }
}

namespace {

Eigen::MatrixXd dense_adjacency(const Graph& g)
{
    const auto n = static_cast<Eigen::Index>(g.n());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (std::uint32_t v = 0; v < g.n(); ++v)
        for (const Port& t : g.ports(v))
            a(v, t.vertex) += 1.0;
    return a;
}

void check_dense_cap(const Graph& g, std::uint32_t cap)
{
    if (g.n() > cap)
        throw CapExceeded("dense eigensolver refused: n = " + std::to_string(g.n()) + " exceeds cap " +
                              std::to_string(cap),
                          g.n());
}

bool near(double a, double b, double thr) { return std::abs(a - b) <= thr; }

Spectrum iterative_spectrum(const Graph& g, const SpectrumOptions& opt)
{
    Spectrum s;
    s.n = g.n();
    s.k = g.k();
    s.partial = true;
    s.tol = std::max(opt.tol, opt.residual_tol);
    const double k = g.k();
    s.eigenvalues.push_back(k);
    if (g.n() == 1)
        return s;

    const std::vector<std::vector<double>> deflate{std::vector<double>(g.n(), 1.0 / std::sqrt(double(g.n())))};
    const LinearOperator op = [&g](std::span<const double> x, std::span<double> y) { adjacency_apply(g, x, y); };
    LanczosOptions lo;
    lo.basis = opt.basis;
    lo.tol = opt.residual_tol;
    lo.seed = opt.seed;

    auto run = [&](bool top, unsigned nev) {
        lo.nev = nev;
        return top ? lanczos_largest(g.n(), op, deflate, lo) : lanczos_smallest(g.n(), op, deflate, lo);
    };
    const double edge = std::max(s.tol, 1e-6);
    auto hi = run(true, 1);
    if (!hi.values.empty() && near(hi.values[0], k, edge) && g.n() > 2)
        hi = run(true, 2);
    auto lo_r = run(false, 1);
    if (!lo_r.values.empty() && near(lo_r.values[0], -k, edge) && g.n() > 2)
        lo_r = run(false, 2);

    for (double r : hi.residuals)
        s.residual = std::max(s.residual, r);
    for (double r : lo_r.residuals)
        s.residual = std::max(s.residual, r);
    for (double v : hi.values)
        s.eigenvalues.push_back(v);
    for (auto it = lo_r.values.rbegin(); it != lo_r.values.rend(); ++it)
        s.eigenvalues.push_back(*it);
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>());
    return s;
}

} // namespace

Spectrum spectrum(const Graph& g, const SpectrumOptions& opt)
{
    if (opt.force_iterative || g.n() > opt.dense_cap)
        return iterative_spectrum(g, opt);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_adjacency(g), Eigen::EigenvaluesOnly);
    Spectrum s;
    s.n = g.n();
    s.k = g.k();
    s.tol = opt.tol;
    s.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>());
    return s;
}

Eigensystem eigensystem(const Graph& g)
{
    check_dense_cap(g, kDenseCap);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_adjacency(g));
    return {es.eigenvalues(), es.eigenvectors()};
}

double lambda_abs(const Spectrum& s, double k)
{
    double best = 0.0;
    for (double e : s.eigenvalues)
        if (std::abs(e) < k - s.tol)
            best = std::max(best, std::abs(e));
    return best;
}

double lambda_abs(const Spectrum& s) { return lambda_abs(s, s.k); }

double lambda_nontrivial(const Spectrum& s)
{
    double best = 0.0;
    for (std::size_t i = 1; i < s.eigenvalues.size(); ++i)
        best = std::max(best, std::abs(s.eigenvalues[i]));
    return best;
}

Connectivity connectivity_tests(const Spectrum& s, double k)
{
    std::size_t top = 0, bottom = 0;
    for (double e : s.eigenvalues) {
        if (near(e, k, s.tol))
            ++top;
        if (near(e, -k, s.tol))
            ++bottom;
    }
    return {top == 1, top > 0 && bottom == top};
}

Connectivity connectivity_tests(const Graph& g, const Spectrum& s)
{
    const auto c = connectivity_tests(s, g.k());
    const bool bfs_connected = is_connected(g);
    const bool bfs_bipartite = bipartition(g).has_value();
    if (c.connected != bfs_connected)
        throw InconsistencyError(std::string("spectral connectivity (") + (c.connected ? "connected" : "disconnected") +
                                 ") disagrees with BFS; tolerance too coarse");
    if (c.bipartite != bfs_bipartite)
        throw InconsistencyError(std::string("spectral bipartiteness (") + (c.bipartite ? "bipartite" : "not bipartite") +
                                 ") disagrees with 2-coloring; tolerance too coarse");
    return c;
}

RamanujanResult is_ramanujan(const Spectrum& s)
{
    RamanujanResult r;
    r.lambda = lambda_abs(s);
    r.bound = s.k >= 1 ? 2.0 * std::sqrt(double(s.k) - 1.0) : 0.0;
    r.margin = r.bound - r.lambda;
    r.ramanujan = r.lambda <= r.bound + s.tol;
    return r;
}

RamanujanResult is_ramanujan(const Graph& g) { return is_ramanujan(spectrum(g)); }

CheegerBounds cheeger_bounds(const Spectrum& s, double k)
{
    const double l1 = s.eigenvalues.size() > 1 ? s.lambda1() : k;
    const double gap = std::max(0.0, k - l1);
    return {gap / 2.0, std::sqrt(std::max(0.0, (k + l1) * gap))};
}

MixingProfile mixing_profile(const Graph& g, std::span<const double> mu0, unsigned tmax)
{
    return mixing_profile(g, spectrum(g), mu0, tmax);
}

MixingProfile mixing_profile(const Graph& g, const Spectrum& s, std::span<const double> mu0, unsigned tmax)
{
    const auto n = g.n();
    if (mu0.size() != n)
        throw PreconditionError("initial distribution has length " + std::to_string(mu0.size()) + ", expected " +
                                std::to_string(n));
    double total = 0.0;
    for (std::size_t i = 0; i < mu0.size(); ++i) {
        if (mu0[i] < 0.0)
            throw PreconditionError("initial distribution has a negative entry at " + std::to_string(i));
        total += mu0[i];
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw PreconditionError("initial distribution sums to " + std::to_string(total));
    const auto label = connected_components(g);
    for (std::uint32_t v = 0; v < n; ++v)
        if (label[v] != 0)
            throw DisconnectedError(0, v);
    if (auto side = bipartition(g)) {
        const auto other = side->complement().members();
        throw PreconditionError("graph is bipartite: vertex 0 and vertex " +
                                std::to_string(other.empty() ? 0 : other.front()) + " lie on opposite sides");
    }

    MixingProfile out;
    const double k = g.k();
    out.ratio = lambda_abs(s, k) / k;
    std::vector<double> mu(mu0.begin(), mu0.end()), next(n), diff(n);
    const double u = 1.0 / n;
    auto distance = [&]() {
        for (std::uint32_t i = 0; i < n; ++i)
            diff[i] = mu[i] - u;
        return std::sqrt(dot(diff, diff));
    };
    const double d0 = distance();
    for (unsigned t = 0; t <= tmax; ++t) {
        out.measured.push_back(t == 0 ? d0 : distance());
        out.bound.push_back(std::pow(out.ratio, double(t)) * d0);
        if (t == tmax)
            break;
        adjacency_apply(g, mu, next);
        for (std::uint32_t i = 0; i < n; ++i)
            mu[i] = next[i] / k;
    }
    return out;
}

double alon_boppana_floor(std::uint32_t k)
{
    if (k < 3)
        throw PreconditionError("Alon-Boppana floor needs k >= 3, got " + std::to_string(k));
    return 2.0 * std::sqrt(double(k) - 1.0);
}

double kazhdan_lower_bound(const Spectrum& s)
{
    const double k = s.k;
    const double l1 = s.eigenvalues.size() > 1 ? s.lambda1() : k;
    return std::sqrt(std::max(0.0, 2.0 * (k - l1) / k));
}

double kazhdan_lower_bound(const Graph& g) { return kazhdan_lower_bound(spectrum(g)); }

} // namespace expander
