#include "expander/codes.hpp"

#include "expander/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

namespace expander {

void BitMatrix::set(std::uint32_t r, std::uint32_t c, bool v)
{
    const auto bit = std::uint64_t{1} << (c & 63);
    if (v)
        row(r)[c >> 6] |= bit;
    else
        row(r)[c >> 6] &= ~bit;
}

std::uint32_t BitMatrix::row_weight(std::uint32_t r) const
{
    std::uint32_t w = 0;
    for (std::uint32_t i = 0; i < stride_; ++i)
        w += static_cast<std::uint32_t>(std::popcount(row(r)[i]));
    return w;
}

void BitMatrix::append_row(const Bits& bits)
{
    if (bits.size() != cols_)
        throw PreconditionError("row length does not match column count");
    w_.resize(w_.size() + stride_, 0);
    ++rows_;
    for (std::uint32_t c = 0; c < cols_; ++c)
        if (bits[c])
            set(rows_ - 1, c, true);
}

namespace {

// Row-reduces m in place; returns pivot column per pivot row.
std::vector<std::uint32_t> row_reduce(BitMatrix& m)
{
    std::vector<std::uint32_t> pivots;
    std::uint32_t r = 0;
    for (std::uint32_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::uint32_t p = r;
        while (p < m.rows() && !m.get(p, c))
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            std::swap_ranges(m.row(p), m.row(p) + m.stride(), m.row(r));
        for (std::uint32_t i = 0; i < m.rows(); ++i)
            if (i != r && m.get(i, c))
                for (std::uint32_t w = 0; w < m.stride(); ++w)
                    m.row(i)[w] ^= m.row(r)[w];
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

std::uint32_t BitMatrix::rank() const
{
    BitMatrix m = *this;
    return static_cast<std::uint32_t>(row_reduce(m).size());
}

BitMatrix BitMatrix::nullspace() const
{
    BitMatrix m = *this;
    const auto pivots = row_reduce(m);
    std::vector<char> is_pivot(cols_, 0);
    for (auto c : pivots)
        is_pivot[c] = 1;
    BitMatrix basis(0, cols_);
    for (std::uint32_t f = 0; f < cols_; ++f) {
        if (is_pivot[f])
            continue;
        Bits x(cols_, 0);
        x[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (m.get(static_cast<std::uint32_t>(i), f))
                x[pivots[i]] = 1;
        basis.append_row(x);
    }
    return basis;
}

Bits BitMatrix::multiply(const Bits& x) const
{
    if (x.size() != cols_)
        throw PreconditionError("word length " + std::to_string(x.size()) + " does not match code length " +
                                std::to_string(cols_));
    Bits out(rows_, 0);
    for (std::uint32_t r = 0; r < rows_; ++r) {
        std::uint8_t s = 0;
        for (std::uint32_t c = 0; c < cols_; ++c)
            s ^= static_cast<std::uint8_t>(get(r, c) & (x[c] & 1U));
        out[r] = s;
    }
    return out;
}

LinearCode make_code(BitMatrix h)
{
    LinearCode c;
    c.n = h.cols();
    c.dim = c.n - h.rank();
    c.h = std::move(h);
    return c;
}

LinearCode repetition_code(std::uint32_t n)
{
    BitMatrix h(n > 0 ? n - 1 : 0, n);
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
        h.set(i, i, true);
        h.set(i, i + 1, true);
    }
    return make_code(std::move(h));
}

LinearCode even_weight_code(std::uint32_t n)
{
    BitMatrix h(1, n);
    for (std::uint32_t i = 0; i < n; ++i)
        h.set(0, i, true);
    return make_code(std::move(h));
}

LinearCode full_space_code(std::uint32_t n) { return make_code(BitMatrix(0, n)); }

LinearCode zero_code(std::uint32_t n)
{
    BitMatrix h(n, n);
    for (std::uint32_t i = 0; i < n; ++i)
        h.set(i, i, true);
    return make_code(std::move(h));
}

LinearCode read_code(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) -> void {
        throw PreconditionError("line " + std::to_string(lineno) + ": " + what);
    };
    if (!std::getline(in, line)) {
        lineno = 1;
        fail("missing header 'rows n'");
    }
    ++lineno;
    std::istringstream hs(line);
    long long rows = -1, n = -1;
    std::string extra;
    if (!(hs >> rows >> n) || (hs >> extra) || rows < 0 || n < 1 || rows > 1'000'000 || n > 1'000'000)
        fail("header must be 'rows n' with rows >= 0, n >= 1");
    BitMatrix h(0, static_cast<std::uint32_t>(n));
    for (long long r = 0; r < rows; ++r) {
        if (!std::getline(in, line)) {
            ++lineno;
            fail("missing parity row");
        }
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.size() != std::size_t(n))
            fail("expected " + std::to_string(n) + " characters, got " + std::to_string(line.size()));
        Bits bits(line.size());
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] != '0' && line[i] != '1')
                fail(std::string("invalid character '") + line[i] + "'");
            bits[i] = line[i] == '1';
        }
        h.append_row(bits);
    }
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            fail("trailing content after the last row");
    }
    return make_code(std::move(h));
}

void write_code(std::ostream& out, const LinearCode& c)
{
    out << c.h.rows() << ' ' << c.n << '\n';
    for (std::uint32_t r = 0; r < c.h.rows(); ++r) {
        std::string s(c.n, '0');
        for (std::uint32_t i = 0; i < c.n; ++i)
            if (c.h.get(r, i))
                s[i] = '1';
        out << s << '\n';
    }
}

EdgeLabeling default_labeling(const Graph& g)
{
    EdgeLabeling lab{g.k(), std::vector<std::uint32_t>(std::size_t(g.n()) * g.k())};
    for (std::uint32_t v = 0; v < g.n(); ++v)
        for (std::uint32_t p = 0; p < g.k(); ++p)
            lab.label[std::size_t(v) * g.k() + p] = p;
    return lab;
}

EdgeLabeling random_labeling(const Graph& g, std::uint64_t seed)
{
    auto lab = default_labeling(g);
    std::mt19937_64 rng(seed);
    for (std::uint32_t v = 0; v < g.n(); ++v)
        std::shuffle(lab.label.begin() + std::ptrdiff_t(v) * g.k(), lab.label.begin() + std::ptrdiff_t(v + 1) * g.k(),
                     rng);
    return lab;
}

std::vector<std::uint32_t> edge_of_port(const Graph& g)
{
    std::vector<std::uint32_t> edge(std::size_t(g.n()) * g.k());
    const auto prs = pairings(g);
    for (std::size_t e = 0; e < prs.size(); ++e) {
        edge[std::size_t(prs[e].v) * g.k() + prs[e].p] = static_cast<std::uint32_t>(e);
        edge[std::size_t(prs[e].w) * g.k() + prs[e].q] = static_cast<std::uint32_t>(e);
    }
    return edge;
}

std::uint32_t edge_count(const Graph& g) { return static_cast<std::uint32_t>(pairings(g).size()); }

CycleCode cycle_code(const Graph& g)
{
    const auto edge = edge_of_port(g);
    const auto m = edge_count(g);
    BitMatrix h(g.n(), m);
    for (std::uint32_t v = 0; v < g.n(); ++v)
        for (std::uint32_t p = 0; p < g.k(); ++p)
            h.flip(v, edge[std::size_t(v) * g.k() + p]);
    CycleCode cc;
    const auto label = connected_components(g);
    cc.components = *std::max_element(label.begin(), label.end()) + 1;
    cc.connected = cc.components == 1;
    cc.expected_dim = m - g.n() + cc.components;
    cc.code = make_code(std::move(h));
    return cc;
}

LinearCode tanner_code(const Graph& g, const LinearCode& c0, const EdgeLabeling& lab)
{
    const auto k = g.k();
    if (c0.n != k)
        throw PreconditionError("inner code length " + std::to_string(c0.n) + " does not match degree " +
                                std::to_string(k));
    if (lab.k != k || lab.label.size() != std::size_t(g.n()) * k)
        throw PreconditionError("labeling does not match the graph");
    const auto edge = edge_of_port(g);
    std::vector<std::uint32_t> port_of(k);
    BitMatrix h(g.n() * c0.h.rows(), edge_count(g));
    for (std::uint32_t v = 0; v < g.n(); ++v) {
        std::vector<char> seen(k, 0);
        for (std::uint32_t p = 0; p < k; ++p) {
            const auto l = lab.label[std::size_t(v) * k + p];
            if (l >= k || seen[l])
                throw PreconditionError("labeling is not a bijection at vertex " + std::to_string(v));
            seen[l] = 1;
            port_of[l] = p;
        }
        for (std::uint32_t r = 0; r < c0.h.rows(); ++r)
            for (std::uint32_t j = 0; j < k; ++j)
                if (c0.h.get(r, j))
                    h.flip(v * c0.h.rows() + r, edge[std::size_t(v) * k + port_of[j]]);
    }
    return make_code(std::move(h));
}

namespace {

void check_distance_cap(const LinearCode& c)
{
    if (c.dim > kMinDistanceCap)
        throw CapExceeded("exact minimum distance refused: dim = " + std::to_string(c.dim) + " exceeds cap " +
                              std::to_string(kMinDistanceCap),
                          c.dim);
}

std::uint32_t weight(const std::vector<std::uint64_t>& w)
{
    std::uint32_t s = 0;
    for (auto x : w)
        s += static_cast<std::uint32_t>(std::popcount(x));
    return s;
}

} // namespace

std::optional<std::uint32_t> min_distance_exact(const LinearCode& c)
{
    check_distance_cap(c);
    if (c.dim == 0)
        return std::nullopt;
    const auto gen = c.h.nullspace();
    const std::uint32_t dim = gen.rows();
    const std::uint64_t total = std::uint64_t{1} << dim;
    const std::uint64_t chunks = std::min<std::uint64_t>(total, 256);
    const std::uint64_t len = total / chunks;
    const auto stride = gen.stride();
    std::vector<std::uint32_t> best(chunks, std::numeric_limits<std::uint32_t>::max());

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t ch = 0; ch < static_cast<std::int64_t>(chunks); ++ch) {
        const std::uint64_t lo = std::uint64_t(ch) * len, hi = lo + len;
        std::vector<std::uint64_t> word(stride, 0);
        const std::uint64_t start = lo ^ (lo >> 1);
        for (std::uint32_t r = 0; r < dim; ++r)
            if ((start >> r) & 1U)
                for (std::uint32_t w = 0; w < stride; ++w)
                    word[w] ^= gen.row(r)[w];
        std::uint32_t local = std::numeric_limits<std::uint32_t>::max();
        for (std::uint64_t i = lo; i < hi; ++i) {
            if (i != 0)
                local = std::min(local, weight(word));
            if (i + 1 < hi) {
                const auto r = static_cast<std::uint32_t>(std::countr_zero(i + 1));
                for (std::uint32_t w = 0; w < stride; ++w)
                    word[w] ^= gen.row(r)[w];
            }
        }
        best[ch] = local;
    }
    return *std::min_element(best.begin(), best.end());
}

namespace serial {

std::optional<std::uint32_t> min_distance_exact(const LinearCode& c)
{
    check_distance_cap(c);
    if (c.dim == 0)
        return std::nullopt;
    const auto gen = c.h.nullspace();
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint64_t> word(gen.stride());
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << gen.rows()); ++mask) {
        std::fill(word.begin(), word.end(), 0);
        for (std::uint32_t r = 0; r < gen.rows(); ++r)
            if ((mask >> r) & 1U)
                for (std::uint32_t w = 0; w < gen.stride(); ++w)
                    word[w] ^= gen.row(r)[w];
        best = std::min(best, weight(word));
    }
    return best;
}

} // namespace serial

LinearCode with_min_distance(LinearCode c)
{
    c.mindist = min_distance_exact(c);
    return c;
}

Bits syndrome(const LinearCode& c, const Bits& word) { return c.h.multiply(word); }

Certificate rate_distance_certificate(const Graph& g, const LinearCode& c0, const EdgeLabeling& lab)
{
    return rate_distance_certificate(g, spectrum(g), c0, lab);
}

Certificate rate_distance_certificate(const Graph& g, const Spectrum& s, const LinearCode& c0,
                                      const EdgeLabeling& lab)
{
    const double r = g.k();
    const auto inner = c0.mindist ? c0 : with_min_distance(c0);
    if (!inner.mindist)
        throw CertificateRefused("inner code has no nonzero codeword");
    Certificate cert;
    cert.r0 = inner.dim / r;
    cert.delta0 = *inner.mindist / r;
    cert.lambda_normalized = lambda_abs(s, r) / r;
    if (cert.lambda_normalized >= cert.delta0)
        throw CertificateRefused("certificate refused: lambda/r = " + std::to_string(cert.lambda_normalized) +
                                 " >= delta0 = " + std::to_string(cert.delta0));
    cert.rate_bound = 2.0 * cert.r0 - 1.0;
    cert.rate_bound_vacuous = cert.rate_bound < 0.0;
    const double ratio = (cert.delta0 - cert.lambda_normalized) / (1.0 - cert.lambda_normalized);
    cert.delta_bound = ratio * ratio;

    const auto code = tanner_code(g, c0, lab);
    cert.n = code.n;
    cert.dim = code.dim;
    cert.rate = code.rate();
    cert.rate_ok = cert.rate >= cert.rate_bound - 1e-12;
    if (code.dim <= kMinDistanceCap) {
        cert.mindist = min_distance_exact(code);
        if (cert.mindist) {
            cert.delta = double(*cert.mindist) / code.n;
            cert.distance_ok = *cert.delta >= cert.delta_bound - 1e-12;
        } else {
            cert.distance_ok = true;
        }
    }
    return cert;
}

namespace {

// Minimum distance of the code generated by [I_k | P], P given row-wise as (r-k)-bit masks.
std::uint32_t systematic_distance(const std::vector<std::uint32_t>& p, std::uint32_t k)
{
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::uint32_t m = 1; m < (1U << k); ++m) {
        std::uint32_t parity = 0;
        for (std::uint32_t i = 0; i < k; ++i)
            if ((m >> i) & 1U)
                parity ^= p[i];
        best = std::min<std::uint32_t>(best, std::popcount(m) + std::popcount(parity));
    }
    return best;
}

LinearCode systematic_code(const std::vector<std::uint32_t>& p, std::uint32_t k, std::uint32_t r)
{
    // Parity checks [P^T | I_{r-k}].
    BitMatrix h(r - k, r);
    for (std::uint32_t j = 0; j < r - k; ++j) {
        for (std::uint32_t i = 0; i < k; ++i)
            if ((p[i] >> j) & 1U)
                h.set(j, i, true);
        h.set(j, k + j, true);
    }
    return with_min_distance(make_code(std::move(h)));
}

} // namespace

InnerSearchResult inner_code_search(std::uint32_t r, Rational rate_floor, double delta_floor, std::uint64_t seed,
                                    unsigned trials)
{
    if (r < 3)
        throw PreconditionError("inner code search needs r >= 3");
    std::uint32_t kmin = 0;
    for (std::uint32_t k = 1; k <= r; ++k)
        if (Rational(k, r) > rate_floor) {
            kmin = k;
            break;
        }
    InnerSearchResult res;
    if (kmin == 0) {
        res.code = full_space_code(r);
        return res;
    }
    auto qualifies = [&](const LinearCode& c) {
        return Rational(c.dim, r) > rate_floor && c.mindist && double(*c.mindist) / r > delta_floor;
    };
    auto better = [&](const LinearCode& c) {
        if (Rational(c.dim, r) <= rate_floor || !c.mindist)
            return false;
        return !res.code.mindist || Rational(res.code.dim, r) <= rate_floor || *c.mindist > *res.code.mindist;
    };
    res.code = full_space_code(r);
    for (unsigned t = 0; t < trials; ++t) {
        std::mt19937_64 rng(derive_seed(seed, t));
        BitMatrix h(r - kmin, r);
        for (std::uint32_t i = 0; i < h.rows(); ++i)
            for (std::uint32_t j = 0; j < r; ++j)
                h.set(i, j, rng() & 1U);
        auto c = make_code(std::move(h));
        if (c.dim > kMinDistanceCap)
            continue;
        c = with_min_distance(std::move(c));
        res.trials_used = t + 1;
        if (qualifies(c)) {
            res.code = std::move(c);
            res.success = true;
            return res;
        }
        if (better(c))
            res.code = std::move(c);
    }
    const std::uint32_t bits = kmin * (r - kmin);
    if (r <= 14 && bits <= 24 && bits + kmin <= 26) {
        std::vector<std::uint32_t> p(kmin);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
            for (std::uint32_t i = 0; i < kmin; ++i)
                p[i] = static_cast<std::uint32_t>((mask >> (i * (r - kmin))) & ((1U << (r - kmin)) - 1U));
            if (double(systematic_distance(p, kmin)) / r > delta_floor) {
                res.code = systematic_code(p, kmin, r);
                res.success = true;
                res.exhaustive = true;
                return res;
            }
        }
    }
    return res;
}

AlonChung alon_chung_check(const Graph& g, const VertexSet& y) { return alon_chung_check(g, spectrum(g), y); }

AlonChung alon_chung_check(const Graph& g, const Spectrum& s, const VertexSet& y)
{
    if (y.universe() != g.n())
        throw PreconditionError("vertex set universe does not match the graph");
    std::uint64_t inside = 0;
    for (std::uint32_t v = 0; v < g.n(); ++v) {
        if (!y.contains(v))
            continue;
        for (const Port& t : g.ports(v))
            if (y.contains(t.vertex))
                ++inside;
    }
    const double r = g.k(), n = g.n();
    const double gamma = y.size() / n;
    const double lambda = lambda_nontrivial(s) / r;
    AlonChung a;
    a.e_measured = inside / 2.0;
    a.expected = 0.5 * r * gamma * gamma * n;
    a.deviation = std::abs(a.e_measured - a.expected);
    a.bound = 0.5 * r * lambda * gamma * (1.0 - gamma) * n;
    a.ok = a.deviation <= a.bound + 1e-9;
    return a;
}

} // namespace expander
