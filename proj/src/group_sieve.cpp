#include "expander/group_sieve.hpp"

#include "expander/parallel.hpp"
#include "expander/spectral.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace expander {

namespace {

using u64 = std::uint64_t;

void check_symmetric(const std::vector<ZMatrix>& gens)
{
    if (gens.empty())
        throw PreconditionError("walk: empty generator list");
    const unsigned d = gens.front().dim();
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].dim() != d)
            throw PreconditionError("walk: generator " + std::to_string(i) + " has dimension " +
                                    std::to_string(gens[i].dim()) + ", expected " + std::to_string(d));
        const ZMatrix inv = gens[i].inverse();
        if (std::find(gens.begin(), gens.end(), inv) == gens.end())
            throw PreconditionError("walk: inverse of generator " + std::to_string(i) + " " + gens[i].str() +
                                    " is missing");
    }
}

template <class Visit>
bool run_walk(const WalkConfig& cfg, std::uint64_t trial, Visit&& visit)
{
    std::mt19937_64 rng(derive_seed(cfg.seed, trial));
    std::uniform_int_distribution<std::size_t> pick(0, cfg.gens.size() - 1);
    ZMatrix w = ZMatrix::identity(cfg.gens.front().dim());
    visit(0u, w);
    for (unsigned k = 1; k <= cfg.steps; ++k) {
        const bool stay = cfg.lazy && (rng() & 1);
        if (!stay) {
            w = w * cfg.gens[pick(rng)];
            if (w.max_bits() > cfg.magnitude_bits)
                return true;
        }
        visit(k, w);
    }
    return false;
}

ZMatrix reduce_mod(const ZMatrix& a, std::uint32_t p)
{
    ZMatrix r(a.dim());
    for (unsigned i = 0; i < a.dim(); ++i)
        for (unsigned j = 0; j < a.dim(); ++j) {
            BigInt v = a(i, j) % p;
            if (v < 0)
                v += p;
            r(i, j) = v;
        }
    return r;
}

ZMatrix from_element(std::span<const std::int32_t> e, unsigned d)
{
    ZMatrix m(d);
    for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < d; ++j)
            m(i, j) = e[i * d + j];
    return m;
}

unsigned dim_of(const std::vector<ZMatrix>& gens)
{
    if (gens.empty())
        throw PreconditionError("quotient target: empty generator list");
    return gens.front().dim();
}

std::shared_ptr<const GroupTable> image_group(const std::vector<ZMatrix>& gens, std::uint32_t p)
{
    if (p < 2)
        throw PreconditionError("quotient target: modulus must be at least 2");
    const unsigned d = dim_of(gens);
    std::vector<Element> red;
    for (const auto& g : gens)
        red.push_back(reduce(g, p));
    return std::make_shared<const GroupTable>(GroupTable::close(matrix_law(d, p), red));
}

bool disc_zero_mod(const ZMatrix& a, std::uint32_t p)
{
    const BigInt disc = discriminant(charpoly(reduce_mod(a, p)));
    return disc % p == 0;
}

// Polynomials mod p, lowest degree first, no trailing zeros.
using Poly = std::vector<u64>;

void trim(Poly& f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }

u64 invmod(u64 a, u64 p)
{
    u64 r = 1, e = p - 2;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

Poly poly_mod(Poly a, const Poly& m, u64 p)
{
    trim(a);
    const u64 inv = invmod(m.back(), p);
    while (a.size() >= m.size()) {
        const u64 q = mulmod(a.back(), inv, p);
        const std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = (a[shift + i] + p - mulmod(q, m[i], p)) % p;
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    return poly_mod(std::move(r), m, p);
}

Poly poly_gcd(Poly a, Poly b, u64 p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const u64 inv = invmod(a.back(), p);
        for (auto& c : a)
            c = mulmod(c, inv, p);
    }
    return a;
}

Poly poly_div(Poly a, const Poly& b, u64 p)
{
    trim(a);
    if (a.size() < b.size())
        return {};
    Poly q(a.size() - b.size() + 1, 0);
    const u64 inv = invmod(b.back(), p);
    while (a.size() >= b.size()) {
        const u64 c = mulmod(a.back(), inv, p);
        const std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = (a[shift + i] + p - mulmod(c, b[i], p)) % p;
        a.pop_back();
        trim(a);
    }
    return q;
}

Poly poly_powmod(Poly base, u64 e, const Poly& m, u64 p)
{
    Poly r{1};
    base = poly_mod(std::move(base), m, p);
    while (e) {
        if (e & 1)
            r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

Poly sub_x(Poly h, u64 p)
{
    if (h.size() < 2)
        h.resize(2, 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    return h;
}

void partitions(unsigned n, unsigned max_part, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out)
{
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (unsigned k = std::min(n, max_part); k >= 1; --k) {
        cur.push_back(k);
        partitions(n - k, k, cur, out);
        cur.pop_back();
    }
}

} // namespace

WalkTrace walk_trace(const WalkConfig& cfg, std::uint64_t trial)
{
    check_symmetric(cfg.gens);
    WalkTrace t;
    t.truncated = run_walk(cfg, trial, [&](unsigned, const ZMatrix& w) { t.steps.push_back(w); });
    return t;
}

WalkSamples walk_samples(const WalkConfig& cfg)
{
    check_symmetric(cfg.gens);
    WalkSamples s;
    s.samples.resize(cfg.trials);
    s.truncated.assign(cfg.trials, 0);
    const auto n = static_cast<std::int64_t>(cfg.trials);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) {
        ZMatrix last;
        s.truncated[i] = run_walk(cfg, i, [&](unsigned, const ZMatrix& w) { last = w; });
        s.samples[i] = std::move(last);
    }
    return s;
}

std::vector<StepRate> hit_counts(const WalkConfig& cfg, const MatrixPredicate& pred)
{
    check_symmetric(cfg.gens);
    const std::size_t width = cfg.steps + 1;
    // 0 = dead, 1 = miss, 2 = hit
    std::vector<std::uint8_t> marks(cfg.trials * width, 0);
    const auto n = static_cast<std::int64_t>(cfg.trials);
    ExceptionSink sink;
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i)
        sink.run([&] {
            std::uint8_t* row = marks.data() + i * width;
            run_walk(cfg, i, [&](unsigned k, const ZMatrix& w) { row[k] = pred(w) ? 2 : 1; });
        });
    sink.rethrow();
    std::vector<StepRate> rates(width);
    for (std::size_t k = 0; k < width; ++k) {
        auto& r = rates[k];
        r.step = static_cast<unsigned>(k);
        for (std::uint64_t i = 0; i < cfg.trials; ++i) {
            const auto m = marks[i * width + k];
            r.n += m != 0;
            r.hits += m == 2;
        }
        r.p_hat = r.n ? static_cast<double>(r.hits) / static_cast<double>(r.n) : 0.0;
        r.ci = wilson_interval(r.hits, r.n);
    }
    return rates;
}

DecayFit decay_fit(std::vector<StepRate> rates, std::uint64_t trials)
{
    if (rates.size() < 2)
        throw PreconditionError("decay_fit: need at least one step");
    DecayFit f;
    const unsigned kmax = rates.back().step;
    f.fit_from = kmax / 2;
    f.fit_to = kmax;
    if (rates.front().n > rates.back().n)
        f.truncated_walks = rates.front().n - rates.back().n;

    std::vector<double> xs, ys, all_x, all_y;
    bool zero_in_tail = false;
    for (const auto& r : rates) {
        if (r.p_hat > 0) {
            all_x.push_back(r.step);
            all_y.push_back(std::log(r.p_hat));
        }
        if (r.step < f.fit_from)
            continue;
        if (r.p_hat > 0) {
            xs.push_back(r.step);
            ys.push_back(std::log(r.p_hat));
        } else {
            zero_in_tail = true;
        }
    }
    f.alpha_lower_bound_only = zero_in_tail;
    const auto* fx = &xs;
    const auto* fy = &ys;
    if (xs.size() < 2) {
        fx = &all_x;
        fy = &all_y;
    }
    if (fx->size() >= 2) {
        const auto lf = linear_fit(*fx, *fy);
        f.alpha = -lf.slope;
        f.alpha_ci = {-lf.slope_ci.high, -lf.slope_ci.low};
        f.c = std::exp(lf.intercept);
        f.r_squared = lf.r_squared;
        f.fit_points = lf.points;
    }

    // Limit: q_j = (p_k + p_{k-1})/2 at x = k - 1/2, fitted by a + c e^{-αx}.
    std::vector<double> qx, qy;
    const unsigned from = std::max(1u, kmax / 6);
    for (std::size_t k = 1; k < rates.size(); ++k)
        if (rates[k].step >= from) {
            qx.push_back(rates[k].step - 0.5);
            qy.push_back((rates[k].p_hat + rates[k - 1].p_hat) / 2);
        }
    if (qx.size() < 3) {
        f.limit = rates.back().p_hat;
    } else {
        double best_sse = std::numeric_limits<double>::infinity();
        for (int g = 0; g <= 600; ++g) {
            const double a = 1e-4 * std::pow(10.0, g / 100.0);
            const std::size_t m = qx.size();
            double se = 0, sq = 0, see = 0, seq = 0;
            for (std::size_t i = 0; i < m; ++i) {
                const double e = std::exp(-a * qx[i]);
                se += e;
                sq += qy[i];
                see += e * e;
                seq += e * qy[i];
            }
            const double det = m * see - se * se;
            double lim, c;
            if (std::abs(det) < 1e-300) {
                lim = sq / m;
                c = 0;
            } else {
                c = (m * seq - se * sq) / det;
                lim = (sq - c * se) / m;
            }
            double sse = 0;
            for (std::size_t i = 0; i < m; ++i) {
                const double r = qy[i] - lim - c * std::exp(-a * qx[i]);
                sse += r * r;
            }
            if (sse < best_sse) {
                best_sse = sse;
                f.limit = lim;
            }
        }
    }
    f.limit_ci = wilson_interval(std::clamp(f.limit, 0.0, 1.0), trials);
    f.rates = std::move(rates);
    return f;
}

DecayFit hit_probability(const WalkConfig& cfg, const MatrixPredicate& pred)
{
    return decay_fit(hit_counts(cfg, pred), cfg.trials);
}

bool limit_matches(const DecayFit& fit, double exact, double widths)
{
    const double lo = fit.limit - widths * (fit.limit - fit.limit_ci.low);
    const double hi = fit.limit + widths * (fit.limit_ci.high - fit.limit);
    return exact >= lo && exact <= hi;
}

std::vector<BigInt> charpoly(const ZMatrix& a)
{
    const unsigned n = a.dim();
    std::vector<BigInt> c(n + 1);
    c[0] = 1;
    ZMatrix m(n);
    for (unsigned k = 1; k <= n; ++k) {
        ZMatrix next = a * m;
        for (unsigned i = 0; i < n; ++i)
            next(i, i) += c[k - 1];
        m = std::move(next);
        const BigInt t = (a * m).trace();
        c[k] = -t / k;
    }
    return c;
}

BigInt discriminant(const std::vector<BigInt>& f)
{
    if (f.empty() || f.front() != 1)
        throw PreconditionError("discriminant: polynomial must be monic");
    const std::size_t n = f.size() - 1;
    if (n < 1)
        throw PreconditionError("discriminant: constant polynomial");
    if (n == 1)
        return 1;
    std::vector<BigInt> df(n);
    for (std::size_t i = 0; i < n; ++i)
        df[i] = f[i] * static_cast<unsigned>(n - i);
    const std::size_t s = 2 * n - 1;
    std::vector<BigInt> syl(s * s);
    for (std::size_t r = 0; r + 1 < n; ++r)
        for (std::size_t j = 0; j <= n; ++j)
            syl[r * s + r + j] = f[j];
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j)
            syl[(n - 1 + r) * s + r + j] = df[j];
    BigInt res = bareiss_det(std::move(syl), static_cast<unsigned>(s));
    if ((n * (n - 1) / 2) % 2 == 1)
        res = -res;
    return res;
}

MatrixPredicate QuotientTarget::predicate() const
{
    auto grp = group;
    auto mem = std::make_shared<const std::vector<std::uint8_t>>(member);
    const std::uint32_t p = modulus;
    return [grp, mem, p](const ZMatrix& a) {
        const auto idx = grp->find(reduce(a, p));
        return idx && (*mem)[*idx] != 0;
    };
}

MatrixPredicate disc_predicate(std::uint32_t p)
{
    if (p < 2)
        throw PreconditionError("disc_predicate: modulus must be at least 2");
    return [p](const ZMatrix& a) { return disc_zero_mod(a, p); };
}

QuotientTarget disc_target(const std::vector<ZMatrix>& gens, std::uint32_t p)
{
    QuotientTarget t;
    t.group = image_group(gens, p);
    t.modulus = p;
    const unsigned d = dim_of(gens);
    const auto n = static_cast<std::int64_t>(t.group->order());
    t.member.assign(t.group->order(), 0);
#pragma omp parallel for schedule(static, 4096)
    for (std::int64_t i = 0; i < n; ++i)
        t.member[i] = disc_zero_mod(from_element(t.group->element(static_cast<std::uint32_t>(i)), d), p);
    t.size = std::accumulate(t.member.begin(), t.member.end(), std::uint64_t{0});
    t.description = "disc = 0 mod " + std::to_string(p);
    return t;
}

QuotientTarget power_target(const std::vector<ZMatrix>& gens, std::uint32_t p, std::uint64_t m)
{
    if (m < 1)
        throw PreconditionError("power_target: m must be positive");
    QuotientTarget t;
    t.group = image_group(gens, p);
    t.modulus = p;
    t.member.assign(t.group->order(), 0);
    for (auto i : m_power_set(*t.group, m))
        t.member[i] = 1;
    t.size = std::accumulate(t.member.begin(), t.member.end(), std::uint64_t{0});
    t.description = std::to_string(m) + "-th powers mod " + std::to_string(p);
    return t;
}

QuotientTarget subset_target(const std::vector<ZMatrix>& gens, std::uint32_t p, const std::vector<ZMatrix>& subset)
{
    QuotientTarget t;
    t.group = image_group(gens, p);
    t.modulus = p;
    t.member.assign(t.group->order(), 0);
    for (std::size_t i = 0; i < subset.size(); ++i) {
        const auto idx = t.group->find(reduce(subset[i], p));
        if (!idx)
            throw PreconditionError("subset_target: matrix " + std::to_string(i) + " " + subset[i].str() +
                                    " is not in the image mod " + std::to_string(p));
        t.member[*idx] = 1;
    }
    t.size = std::accumulate(t.member.begin(), t.member.end(), std::uint64_t{0});
    t.description = std::to_string(t.size) + " listed elements mod " + std::to_string(p);
    return t;
}

MixingEnvelope mixing_envelope(const QuotientTarget& target, const std::vector<ZMatrix>& gens, unsigned steps)
{
    std::vector<Element> red;
    for (const auto& g : gens)
        red.push_back(reduce(g, target.modulus));
    const auto sigma = GenSet::from_elements(*target.group, red);
    const Graph g = cayley_graph(*target.group, sigma);
    const Spectrum s = spectrum(g);
    const double k = g.k();
    MixingEnvelope env;
    env.lazy = connectivity_tests(s, k).bipartite;
    env.ratio = env.lazy ? (1 + s.lambda1() / k) / 2 : lambda_abs(s, k) / k;
    const double order = static_cast<double>(target.group->order());
    const double scale = std::sqrt(static_cast<double>(target.size)) * std::sqrt(1 - 1 / order);
    for (unsigned t = 0; t <= steps; ++t)
        env.bound.push_back(scale * std::pow(env.ratio, t));
    return env;
}

std::vector<unsigned> factor_pattern(const std::vector<BigInt>& monic, std::uint32_t p)
{
    Poly f(monic.size());
    for (std::size_t i = 0; i < monic.size(); ++i) {
        BigInt v = monic[monic.size() - 1 - i] % p;
        if (v < 0)
            v += p;
        f[i] = static_cast<u64>(v);
    }
    trim(f);
    if (f.size() < 2)
        throw PreconditionError("factor_pattern: polynomial of degree 0 mod " + std::to_string(p));
    Poly df(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i)
        df[i - 1] = mulmod(f[i], i % p, p);
    trim(df);
    if (df.empty() || poly_gcd(f, df, p).size() > 1)
        return {};

    std::vector<unsigned> pattern;
    Poly h{0, 1};
    for (unsigned i = 1; 2 * i <= f.size() - 1; ++i) {
        h = poly_powmod(h, p, f, p);
        const Poly g = poly_gcd(f, sub_x(h, p), p);
        const std::size_t dg = g.size() - 1;
        if (dg > 0) {
            for (std::size_t j = 0; j < dg / i; ++j)
                pattern.push_back(i);
            f = poly_div(f, g, p);
            h = poly_mod(h, f, p);
        }
    }
    if (f.size() > 1)
        pattern.push_back(static_cast<unsigned>(f.size() - 1));
    std::sort(pattern.begin(), pattern.end());
    return pattern;
}

std::string pattern_string(const std::vector<unsigned>& pattern)
{
    std::string s;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (i)
            s += ' ';
        s += std::to_string(pattern[i]);
    }
    return s;
}

bool is_non_generic(const std::vector<BigInt>& f)
{
    BigInt at_one = 0, at_minus = 0;
    for (const auto& c : f) {
        at_one = at_one + c;
        at_minus = -at_minus + c;
    }
    if (at_one == 0 || at_minus == 0)
        return true;
    const BigInt disc = discriminant(f);
    if (disc == 0)
        return true;
    if (disc > 0) {
        const BigInt r = boost::multiprecision::sqrt(disc);
        if (r * r == disc)
            return true;
    }
    return false;
}

PatternHistogram charpoly_pattern_histogram(const WalkConfig& cfg, const std::vector<std::uint32_t>& primes)
{
    check_symmetric(cfg.gens);
    for (auto p : primes)
        if (p < 2)
            throw PreconditionError("charpoly_pattern_histogram: bad prime " + std::to_string(p));
    PatternHistogram h;
    h.d = cfg.gens.front().dim();
    h.primes = primes;

    struct Row {
        bool truncated = false;
        bool non_generic = false;
        std::vector<std::string> patterns; // empty string = bad reduction
    };
    std::vector<Row> rows(cfg.trials);
    const auto n = static_cast<std::int64_t>(cfg.trials);
    ExceptionSink sink;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i)
        sink.run([&] {
            ZMatrix last;
            auto& row = rows[i];
            row.truncated = run_walk(cfg, i, [&](unsigned, const ZMatrix& w) { last = w; });
            if (row.truncated)
                return;
            const auto f = charpoly(last);
            row.non_generic = is_non_generic(f);
            for (auto p : primes)
                row.patterns.push_back(pattern_string(factor_pattern(f, p)));
        });
    sink.rethrow();

    for (const auto& row : rows) {
        if (row.truncated) {
            ++h.truncated;
            continue;
        }
        ++h.samples;
        h.non_generic += row.non_generic;
        for (std::size_t j = 0; j < primes.size(); ++j) {
            if (row.patterns[j].empty()) {
                ++h.skipped;
                continue;
            }
            ++h.per_prime[primes[j]][row.patterns[j]];
            if (!row.non_generic)
                ++h.pooled_generic[row.patterns[j]];
        }
    }
    return h;
}

std::map<std::string, double> symmetric_cycle_types(unsigned d)
{
    if (d < 1 || d > 12)
        throw PreconditionError("symmetric_cycle_types: degree must be in 1..12");
    std::vector<std::vector<unsigned>> parts;
    std::vector<unsigned> cur;
    partitions(d, d, cur, parts);
    std::map<std::string, double> out;
    for (auto part : parts) {
        // |class| / d! = 1 / prod(k^{m_k} m_k!)
        std::map<unsigned, unsigned> mult;
        for (auto k : part)
            ++mult[k];
        double denom = 1;
        for (const auto& [k, m] : mult)
            denom *= std::pow(static_cast<double>(k), m) * std::tgamma(m + 1.0);
        std::sort(part.begin(), part.end());
        out[pattern_string(part)] = 1 / denom;
    }
    return out;
}

std::string verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::consistent:
        return "consistent-with-full-symmetric";
    case Verdict::inconsistent:
        return "inconsistent";
    case Verdict::insufficient:
        return "insufficient";
    }
    return "insufficient";
}

GaloisVerdict generic_galois_verdict(const PatternHistogram& h)
{
    GaloisVerdict v;
    if (h.samples < kVerdictMinSamples || h.primes.size() < kVerdictMinPrimes)
        return v;
    if (2 * h.non_generic > h.samples) {
        v.verdict = Verdict::inconsistent;
        return v;
    }
    const auto law = symmetric_cycle_types(h.d);
    for (const auto& [pat, c] : h.pooled_generic)
        v.generic_events += c;
    if (v.generic_events == 0)
        return v;
    const double total = static_cast<double>(v.generic_events);
    for (const auto& [pat, prob] : law) {
        const auto it = h.pooled_generic.find(pat);
        const double obs = it == h.pooled_generic.end() ? 0.0 : static_cast<double>(it->second);
        const double exp = prob * total;
        v.chi_square += (obs - exp) * (obs - exp) / exp;
    }
    v.dof = static_cast<unsigned>(law.size() - 1);
    v.p_value = chi_square_pvalue(v.chi_square, v.dof);
    v.verdict = v.p_value >= kVerdictLevel ? Verdict::consistent : Verdict::inconsistent;
    return v;
}

} // namespace expander
