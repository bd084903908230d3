#include "expander/lanczos.hpp"

#include "expander/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace expander {

namespace {

void project_out(Eigen::VectorXd& x, std::span<const std::vector<double>> deflate)
{
    for (const auto& d : deflate) {
        const Eigen::Map<const Eigen::VectorXd> dv(d.data(), static_cast<Eigen::Index>(d.size()));
        x -= dv.dot(x) * dv;
    }
}

LanczosResult finish(const Eigen::MatrixXd& h, std::size_t size, double beta, unsigned nev, unsigned restarts,
                     bool invariant)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.topLeftCorner(size, size));
    LanczosResult r;
    r.restarts = restarts;
    r.invariant_subspace = invariant;
    const auto& theta = es.eigenvalues();
    const auto& s = es.eigenvectors();
    const auto take = std::min<std::size_t>(nev, size);
    for (std::size_t i = 0; i < take; ++i) {
        const auto idx = static_cast<Eigen::Index>(size - 1 - i);
        r.values.push_back(theta(idx));
        r.residuals.push_back(invariant ? 0.0 : std::abs(beta * s(static_cast<Eigen::Index>(size - 1), idx)));
    }
    return r;
}

} // namespace

LanczosResult lanczos_largest(std::size_t n, const LinearOperator& op, std::span<const std::vector<double>> deflate,
                              const LanczosOptions& opt)
{
    if (deflate.size() >= n)
        return {};
    const std::size_t dim = n - deflate.size();
    const auto m = static_cast<Eigen::Index>(std::min<std::size_t>(std::max(opt.basis, 4U), dim));
    const unsigned nev = std::min<unsigned>(std::max(opt.nev, 1U), static_cast<unsigned>(m));
    const auto keep = std::clamp<Eigen::Index>(std::max<Eigen::Index>(nev + 2, m / 3), 1, std::max<Eigen::Index>(1, m - 2));
    const auto nn = static_cast<Eigen::Index>(n);

    Eigen::MatrixXd v(nn, m);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd w(nn);

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (Eigen::Index i = 0; i < nn; ++i)
        w(i) = unif(rng);
    project_out(w, deflate);
    project_out(w, deflate);
    if (w.norm() == 0.0)
        throw ConvergenceError("lanczos: start vector vanished after deflation", 0.0);
    v.col(0) = w / w.norm();

    Eigen::Index start = 0;
    double beta = 0.0;
    for (unsigned restart = 0;; ++restart) {
        for (Eigen::Index j = start; j < m; ++j) {
            op(std::span<const double>(v.col(j).data(), n), std::span<double>(w.data(), n));
            project_out(w, deflate);
            const double scale = std::max(1.0, w.norm());
            for (int pass = 0; pass < 2; ++pass) {
                const Eigen::VectorXd coef = v.leftCols(j + 1).transpose() * w;
                w.noalias() -= v.leftCols(j + 1) * coef;
                for (Eigen::Index i = 0; i <= j; ++i)
                    h(i, j) = pass == 0 ? coef(i) : h(i, j) + coef(i);
            }
            for (Eigen::Index i = 0; i < j; ++i)
                h(j, i) = h(i, j);
            beta = w.norm();
            if (beta <= 1e-12 * scale)
                return finish(h, static_cast<std::size_t>(j + 1), 0.0, nev, restart, true);
            if (j + 1 < m)
                v.col(j + 1) = w / beta;
        }

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        const auto& theta = es.eigenvalues();
        const auto& s = es.eigenvectors();
        double worst = 0.0;
        for (unsigned i = 0; i < nev; ++i)
            worst = std::max(worst, std::abs(beta * s(m - 1, m - 1 - i)));
        if (worst <= opt.tol)
            return finish(h, static_cast<std::size_t>(m), beta, nev, restart, false);
        if (restart + 1 >= opt.max_restarts)
            throw ConvergenceError("lanczos: no convergence after " + std::to_string(opt.max_restarts) +
                                       " restarts (residual " + std::to_string(worst) + ")",
                                   worst);

        Eigen::MatrixXd sk(m, keep);
        for (Eigen::Index i = 0; i < keep; ++i)
            sk.col(i) = s.col(m - 1 - i);
        const Eigen::MatrixXd ritz = v * sk;
        v.leftCols(keep) = ritz;
        v.col(keep) = w / beta;
        h.setZero();
        for (Eigen::Index i = 0; i < keep; ++i) {
            h(i, i) = theta(m - 1 - i);
            h(i, keep) = h(keep, i) = beta * sk(m - 1, i);
        }
        start = keep;
    }
}

LanczosResult lanczos_smallest(std::size_t n, const LinearOperator& op, std::span<const std::vector<double>> deflate,
                               const LanczosOptions& opt)
{
    const LinearOperator neg = [&op](std::span<const double> x, std::span<double> y) {
        op(x, y);
        for (auto& e : y)
            e = -e;
    };
    auto r = lanczos_largest(n, neg, deflate, opt);
    for (auto& e : r.values)
        e = -e;
    return r;
}

} // namespace expander
