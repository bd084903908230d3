#include "expander/group.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace expander {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t m)
{
    const auto r = x % m;
    return r < 0 ? r + m : r;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m)
{
    std::int64_t g = m, x = 0, x1 = 1, b = mod(a, m);
    while (b != 0) {
        const auto q = g / b;
        std::tie(g, b) = std::make_pair(b, g - q * b);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1)
        return -1;
    return mod(x, m);
}

// Determinant mod m of a row-major d x d residue matrix by cofactor expansion.
std::int64_t det_mod(const std::vector<std::int64_t>& a, unsigned d, std::int64_t m)
{
    if (d == 1)
        return mod(a[0], m);
    if (d == 2)
        return mod(static_cast<std::int64_t>((static_cast<__int128>(a[0]) * a[3] - static_cast<__int128>(a[1]) * a[2]) % m), m);
    std::int64_t total = 0;
    std::vector<std::int64_t> minor(std::size_t(d - 1) * (d - 1));
    for (unsigned c = 0; c < d; ++c) {
        if (a[c] == 0)
            continue;
        std::size_t idx = 0;
        for (unsigned r = 1; r < d; ++r)
            for (unsigned cc = 0; cc < d; ++cc)
                if (cc != c)
                    minor[idx++] = a[std::size_t(r) * d + cc];
        const auto term = static_cast<std::int64_t>(static_cast<__int128>(a[c]) * det_mod(minor, d - 1, m) % m);
        total = mod(c % 2 ? total - term : total + term, m);
    }
    return total;
}

class MatrixLaw final : public GroupLaw {
public:
    MatrixLaw(unsigned d, std::uint32_t m) : d_(d), m_(m)
    {
        if (d == 0)
            throw PreconditionError("matrix dimension must be positive");
        if (m < 2)
            throw PreconditionError("modulus must be at least 2");
    }
    std::size_t width() const override { return std::size_t(d_) * d_; }
    Element identity() const override
    {
        Element e(width(), 0);
        for (unsigned i = 0; i < d_; ++i)
            e[std::size_t(i) * d_ + i] = 1;
        return e;
    }
    void multiply(std::span<const std::int32_t> a, std::span<const std::int32_t> b,
                  std::span<std::int32_t> out) const override
    {
        for (unsigned i = 0; i < d_; ++i)
            for (unsigned j = 0; j < d_; ++j) {
                std::uint64_t s = 0;
                for (unsigned l = 0; l < d_; ++l)
                    s += std::uint64_t(a[i * d_ + l]) * std::uint64_t(b[l * d_ + j]) % m_;
                out[i * d_ + j] = static_cast<std::int32_t>(s % m_);
            }
    }
    Element inverse(std::span<const std::int32_t> a) const override
    {
        std::vector<std::int64_t> m(a.begin(), a.end());
        const auto det = det_mod(m, d_, m_);
        const auto dinv = inverse_mod(det, m_);
        if (dinv < 0)
            throw PreconditionError("matrix " + format(a) + " is not invertible mod " + std::to_string(m_));
        Element inv(width());
        if (d_ == 1) {
            inv[0] = static_cast<std::int32_t>(dinv);
            return inv;
        }
        std::vector<std::int64_t> minor(std::size_t(d_ - 1) * (d_ - 1));
        for (unsigned i = 0; i < d_; ++i)
            for (unsigned j = 0; j < d_; ++j) {
                std::size_t idx = 0;
                for (unsigned r = 0; r < d_; ++r)
                    for (unsigned c = 0; c < d_; ++c)
                        if (r != i && c != j)
                            minor[idx++] = m[std::size_t(r) * d_ + c];
                auto cof = det_mod(minor, d_ - 1, m_);
                if ((i + j) % 2)
                    cof = mod(-cof, m_);
                inv[std::size_t(j) * d_ + i] = static_cast<std::int32_t>(cof * dinv % m_);
            }
        return inv;
    }
    std::string format(std::span<const std::int32_t> a) const override
    {
        std::string s = "(";
        for (unsigned i = 0; i < d_; ++i) {
            if (i)
                s += "; ";
            for (unsigned j = 0; j < d_; ++j)
                s += (j ? " " : "") + std::to_string(a[i * d_ + j]);
        }
        return s + ")";
    }

private:
    unsigned d_;
    std::uint32_t m_;
};

class PermutationLaw final : public GroupLaw {
public:
    explicit PermutationLaw(unsigned n) : n_(n) {}
    std::size_t width() const override { return n_; }
    Element identity() const override
    {
        Element e(n_);
        std::iota(e.begin(), e.end(), 0);
        return e;
    }
    void multiply(std::span<const std::int32_t> a, std::span<const std::int32_t> b,
                  std::span<std::int32_t> out) const override
    {
        for (unsigned x = 0; x < n_; ++x)
            out[x] = a[b[x]];
    }
    Element inverse(std::span<const std::int32_t> a) const override
    {
        Element inv(n_);
        for (unsigned x = 0; x < n_; ++x)
            inv[a[x]] = static_cast<std::int32_t>(x);
        return inv;
    }
    std::string format(std::span<const std::int32_t> a) const override
    {
        std::string s = "[";
        for (unsigned x = 0; x < n_; ++x)
            s += (x ? " " : "") + std::to_string(a[x]);
        return s + "]";
    }

private:
    unsigned n_;
};

class CyclicLaw final : public GroupLaw {
public:
    explicit CyclicLaw(std::uint32_t n) : n_(n)
    {
        if (n == 0)
            throw PreconditionError("cyclic group order must be positive");
    }
    std::size_t width() const override { return 1; }
    Element identity() const override { return {0}; }
    void multiply(std::span<const std::int32_t> a, std::span<const std::int32_t> b,
                  std::span<std::int32_t> out) const override
    {
        out[0] = static_cast<std::int32_t>((std::int64_t(a[0]) + b[0]) % n_);
    }
    Element inverse(std::span<const std::int32_t> a) const override
    {
        return {static_cast<std::int32_t>((n_ - a[0]) % n_)};
    }
    std::string format(std::span<const std::int32_t> a) const override { return std::to_string(a[0]); }

private:
    std::uint32_t n_;
};

} // namespace

std::shared_ptr<const GroupLaw> matrix_law(unsigned d, std::uint32_t m) { return std::make_shared<MatrixLaw>(d, m); }
std::shared_ptr<const GroupLaw> permutation_law(unsigned n) { return std::make_shared<PermutationLaw>(n); }
std::shared_ptr<const GroupLaw> cyclic_law(std::uint32_t n) { return std::make_shared<CyclicLaw>(n); }

Element reduce(const ZMatrix& a, std::uint32_t m)
{
    Element e;
    e.reserve(a.entries().size());
    for (const auto& x : a.entries()) {
        BigInt r = x % m;
        if (r < 0)
            r += m;
        e.push_back(static_cast<std::int32_t>(r));
    }
    return e;
}

std::uint64_t GroupTable::hash(std::span<const std::int32_t> e) const
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto x : e) {
        h ^= static_cast<std::uint32_t>(x);
        h *= 0x100000001b3ULL;
    }
    return h ^ (h >> 29);
}

std::optional<std::uint32_t> GroupTable::find(std::span<const std::int32_t> e) const
{
    if (e.size() != width_)
        return std::nullopt;
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t s = hash(e) & mask;; s = (s + 1) & mask) {
        const auto v = slots_[s];
        if (v == 0)
            return std::nullopt;
        const auto cand = element(v - 1);
        if (std::equal(cand.begin(), cand.end(), e.begin()))
            return v - 1;
    }
}

std::uint32_t GroupTable::index_of(std::span<const std::int32_t> e) const
{
    if (auto i = find(e))
        return *i;
    throw PreconditionError("element " + law_->format(e) + " is not in the group table");
}

void GroupTable::rehash(std::size_t slots)
{
    slots_.assign(slots, 0);
    const std::size_t mask = slots - 1;
    for (std::size_t i = 0; i < order_; ++i) {
        std::size_t s = hash(element(static_cast<std::uint32_t>(i))) & mask;
        while (slots_[s] != 0)
            s = (s + 1) & mask;
        slots_[s] = static_cast<std::uint32_t>(i + 1);
    }
}

void GroupTable::insert(std::span<const std::int32_t> e)
{
    data_.insert(data_.end(), e.begin(), e.end());
    ++order_;
    if (2 * order_ > slots_.size()) {
        rehash(std::max<std::size_t>(16, slots_.size() * 2));
        return;
    }
    const std::size_t mask = slots_.size() - 1;
    std::size_t s = hash(e) & mask;
    while (slots_[s] != 0)
        s = (s + 1) & mask;
    slots_[s] = static_cast<std::uint32_t>(order_);
}

GroupTable GroupTable::close(std::shared_ptr<const GroupLaw> law, std::span<const Element> gens, std::size_t cap)
{
    GroupTable t;
    t.law_ = std::move(law);
    t.width_ = t.law_->width();
    for (const auto& g : gens)
        if (g.size() != t.width_)
            throw PreconditionError("generator width does not match the group law");
    t.slots_.assign(16, 0);
    t.insert(t.law_->identity());
    Element buf(t.width_);
    for (std::size_t i = 0; i < t.order_; ++i) {
        for (const auto& g : gens) {
            t.law_->multiply(g, t.element(static_cast<std::uint32_t>(i)), buf);
            if (t.find(buf))
                continue;
            if (t.order_ >= cap)
                throw CapExceeded("group closure exceeded order cap " + std::to_string(cap), t.order_);
            t.insert(buf);
        }
    }
    return t;
}

std::uint32_t GroupTable::multiply(std::uint32_t a, std::uint32_t b) const
{
    Element buf(width_);
    law_->multiply(element(a), element(b), buf);
    return index_of(buf);
}

std::uint32_t GroupTable::inverse(std::uint32_t a) const { return index_of(law_->inverse(element(a))); }

std::uint32_t GroupTable::power(std::uint32_t a, std::uint64_t e) const
{
    std::uint32_t result = 0, base = a;
    while (e) {
        if (e & 1)
            result = multiply(result, base);
        e >>= 1;
        if (e)
            base = multiply(base, base);
    }
    return result;
}

std::uint32_t GroupTable::conjugate(std::uint32_t a, std::uint32_t g) const
{
    return multiply(multiply(g, a), inverse(g));
}

GenSet::GenSet(const GroupTable& tbl, std::vector<std::uint32_t> elements) : elems_(std::move(elements))
{
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        if (elems_[i] >= tbl.order())
            throw PreconditionError("generator index out of range");
        for (std::size_t j = 0; j < i; ++j)
            if (elems_[i] == elems_[j])
                throw PreconditionError("duplicate generator " + tbl.format(elems_[i]));
    }
    inv_.resize(elems_.size());
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        const auto inv = tbl.inverse(elems_[i]);
        const auto it = std::find(elems_.begin(), elems_.end(), inv);
        if (it == elems_.end())
            throw PreconditionError("generating set is not symmetric: inverse of " + tbl.format(elems_[i]) +
                                    " is missing");
        inv_[i] = static_cast<std::uint32_t>(it - elems_.begin());
    }
}

GenSet GenSet::from_elements(const GroupTable& tbl, std::span<const Element> elems)
{
    std::vector<std::uint32_t> idx;
    for (const auto& e : elems)
        idx.push_back(tbl.index_of(e));
    return GenSet(tbl, std::move(idx));
}

Graph cayley_graph(const GroupTable& tbl, const GenSet& sigma)
{
    const auto n = static_cast<std::uint32_t>(tbl.order());
    const auto k = static_cast<std::uint32_t>(sigma.size());
    std::vector<Port> rot(std::size_t(n) * k);
#pragma omp parallel for schedule(static)
    for (std::int64_t a = 0; a < static_cast<std::int64_t>(n); ++a)
        for (std::uint32_t p = 0; p < k; ++p)
            rot[std::size_t(a) * k + p] = {tbl.multiply(sigma.elements()[p], static_cast<std::uint32_t>(a)),
                                          sigma.inverse_ports()[p]};
    return Graph(n, k, std::move(rot));
}

Graph schreier_graph(std::uint32_t npoints, std::span<const std::uint32_t> inverse_port,
                     const std::function<std::int64_t(std::uint32_t, std::uint32_t)>& act)
{
    const auto k = static_cast<std::uint32_t>(inverse_port.size());
    std::vector<Port> rot(std::size_t(npoints) * k);
    for (std::uint32_t x = 0; x < npoints; ++x)
        for (std::uint32_t p = 0; p < k; ++p) {
            const auto y = act(x, p);
            if (y < 0 || y >= npoints)
                throw PreconditionError("action leaves the point set: generator " + std::to_string(p) +
                                        " sends point " + std::to_string(x) + " to " + std::to_string(y));
            if (inverse_port[p] >= k)
                throw PreconditionError("inverse port out of range");
            rot[std::size_t(x) * k + p] = {static_cast<std::uint32_t>(y), inverse_port[p]};
        }
    return Graph(npoints, k, std::move(rot));
}

Graph schreier_graph(const GroupTable& tbl, const GenSet& sigma)
{
    return schreier_graph(static_cast<std::uint32_t>(tbl.order()), sigma.inverse_ports(),
                          [&](std::uint32_t x, std::uint32_t p) -> std::int64_t {
                              return tbl.multiply(sigma.elements()[p], x);
                          });
}

std::uint32_t projective_index(std::int64_t x, std::int64_t y, std::uint32_t p)
{
    x = mod(x, p);
    y = mod(y, p);
    if (y != 0)
        return static_cast<std::uint32_t>(x * inverse_mod(y, p) % p);
    if (x == 0)
        throw PreconditionError("(0:0) is not a projective point");
    return p;
}

Graph projective_line_graph(std::span<const Element> gens, std::span<const std::uint32_t> inverse_port,
                            std::uint32_t p)
{
    for (const auto& g : gens)
        if (g.size() != 4)
            throw PreconditionError("projective line action needs 2x2 matrices");
    return schreier_graph(p + 1, inverse_port, [&](std::uint32_t pt, std::uint32_t port) -> std::int64_t {
        const std::int64_t x = pt < p ? pt : 1, y = pt < p ? 1 : 0;
        const auto& g = gens[port];
        return projective_index(g[0] * x + g[1] * y, g[2] * x + g[3] * y, p);
    });
}

std::vector<Element> sl2_onetwothree_generators(std::int64_t t, std::uint32_t p)
{
    if (p < 2 || static_cast<std::int64_t>(p) <= t)
        throw PreconditionError("need p > t (got t = " + std::to_string(t) + ", p = " + std::to_string(p) + ")");
    const auto tp = static_cast<std::int32_t>(mod(t, p)), tm = static_cast<std::int32_t>(mod(-t, p));
    return {{1, tp, 0, 1}, {1, tm, 0, 1}, {1, 0, tp, 1}, {1, 0, tm, 1}};
}

std::vector<ZMatrix> sl2_onetwothree_integer(std::int64_t t)
{
    return {ZMatrix{{1, t}, {0, 1}}, ZMatrix{{1, -t}, {0, 1}}, ZMatrix{{1, 0}, {t, 1}}, ZMatrix{{1, 0}, {-t, 1}}};
}

std::vector<ZMatrix> elementary_generators(unsigned d)
{
    std::vector<ZMatrix> out;
    for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < d; ++j) {
            if (i == j)
                continue;
            for (int s : {1, -1}) {
                auto m = ZMatrix::identity(d);
                m(i, j) = s;
                out.push_back(std::move(m));
            }
        }
    return out;
}

std::vector<GirthRow> girth_vs_logp_experiment(std::int64_t t, std::span<const std::uint32_t> primes)
{
    std::vector<GirthRow> rows;
    for (auto p : primes) {
        const auto gens = sl2_onetwothree_generators(t, p);
        const auto tbl = GroupTable::close(matrix_law(2, p), gens);
        const auto g = cayley_graph(tbl, GenSet::from_elements(tbl, gens));
        GirthRow r;
        r.p = p;
        r.order = tbl.order();
        r.girth = girth_at(adjacency_lists(g), 0);
        r.ratio = r.girth ? double(*r.girth) / std::log(double(p)) : 0.0;
        rows.push_back(r);
    }
    return rows;
}

BigInt sl_order_formula(unsigned d, std::uint64_t q)
{
    if (q < 2 || d == 0)
        throw PreconditionError("SL order needs d >= 1 and q >= 2");
    BigInt n = pow(BigInt(q), d * d - 1);
    std::vector<std::uint64_t> primes;
    std::uint64_t rest = q;
    for (std::uint64_t p = 2; p * p <= rest; ++p)
        if (rest % p == 0) {
            primes.push_back(p);
            while (rest % p == 0)
                rest /= p;
        }
    if (rest > 1)
        primes.push_back(rest);
    for (auto p : primes)
        for (unsigned i = 2; i <= d; ++i) {
            const BigInt pi = pow(BigInt(p), i);
            n = n * (pi - 1) / pi;
        }
    return n;
}

std::uint64_t sl_order_enumerated(unsigned d, std::uint32_t q)
{
    const double candidates = std::pow(double(q), double(d) * d);
    if (candidates > 2e7)
        throw CapExceeded("SL order enumeration refused: " + std::to_string(q) + "^" + std::to_string(d * d) +
                          " candidates");
    std::vector<std::int64_t> m(std::size_t(d) * d, 0);
    std::uint64_t count = 0;
    for (;;) {
        if (det_mod(m, d, q) == 1 % q)
            ++count;
        std::size_t i = 0;
        while (i < m.size() && ++m[i] == q)
            m[i++] = 0;
        if (i == m.size())
            break;
    }
    return count;
}

StrongApproximation strong_approx_check(std::span<const ZMatrix> gens, std::uint32_t q)
{
    if (gens.empty())
        throw PreconditionError("no generators");
    const unsigned d = gens[0].dim();
    std::vector<Element> reduced;
    for (const auto& g : gens) {
        if (g.dim() != d)
            throw PreconditionError("generators have different dimensions");
        if (g.det() != 1)
            throw PreconditionError("generator " + g.str() + " is not in SL_d(Z)");
        reduced.push_back(reduce(g, q));
    }
    StrongApproximation r;
    r.image_order = GroupTable::close(matrix_law(d, q), reduced).order();
    if (std::pow(double(q), double(d) * d) <= 2e7) {
        r.sl_order = sl_order_enumerated(d, q);
        r.enumerated = true;
    } else {
        r.sl_order = sl_order_formula(d, q);
    }
    r.onto = BigInt(r.image_order) == r.sl_order;
    return r;
}

namespace {

std::vector<char> closure_marks(const GroupTable& tbl, std::span<const std::uint32_t> gens)
{
    std::vector<char> mark(tbl.order(), 0);
    std::vector<std::uint32_t> queue{0};
    mark[0] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (auto g : gens) {
            const auto y = tbl.multiply(g, queue[i]);
            if (!mark[y]) {
                mark[y] = 1;
                queue.push_back(y);
            }
        }
    return mark;
}

std::vector<std::uint32_t> marked(const std::vector<char>& mark)
{
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < mark.size(); ++i)
        if (mark[i])
            out.push_back(static_cast<std::uint32_t>(i));
    return out;
}

} // namespace

std::vector<std::uint32_t> subgroup_closure(const GroupTable& tbl, std::span<const std::uint32_t> gens)
{
    return marked(closure_marks(tbl, gens));
}

bool generates(const GroupTable& tbl, std::span<const std::uint32_t> gens)
{
    return subgroup_closure(tbl, gens).size() == tbl.order();
}

TripleProduct triple_product_growth(const GroupTable& tbl, std::span<const std::uint32_t> a)
{
    if (tbl.order() > kProductSetCap)
        throw CapExceeded("product-set operations refused above order " + std::to_string(kProductSetCap),
                          tbl.order());
    if (a.empty())
        throw PreconditionError("A must be nonempty");
    std::vector<char> in_a(tbl.order(), 0), aa(tbl.order(), 0), aaa(tbl.order(), 0);
    std::vector<std::uint32_t> set_a;
    for (auto x : a)
        if (!in_a.at(x)) {
            in_a[x] = 1;
            set_a.push_back(x);
        }
    std::vector<std::uint32_t> list_aa;
    for (auto x : set_a)
        for (auto y : set_a) {
            const auto z = tbl.multiply(x, y);
            if (!aa[z]) {
                aa[z] = 1;
                list_aa.push_back(z);
            }
        }
    TripleProduct r;
    r.size_a = set_a.size();
    for (auto z : list_aa)
        for (auto y : set_a) {
            const auto w = tbl.multiply(z, y);
            if (!aaa[w]) {
                aaa[w] = 1;
                ++r.size_aaa;
            }
        }
    if (r.size_a > 1)
        r.exponent = std::log(double(r.size_aaa)) / std::log(double(r.size_a));
    r.generates = generates(tbl, set_a);
    return r;
}

std::vector<std::uint32_t> conjugacy_class(const GroupTable& tbl, std::uint32_t a)
{
    std::vector<char> mark(tbl.order(), 0);
    for (std::uint32_t g = 0; g < tbl.order(); ++g)
        mark[tbl.conjugate(a, g)] = 1;
    return marked(mark);
}

bool invariable_generation_check(const GroupTable& tbl, std::span<const std::uint32_t> s)
{
    if (tbl.order() > kInvariableCap)
        throw CapExceeded("invariable generation check refused above order " + std::to_string(kInvariableCap),
                          tbl.order());
    if (s.empty())
        return tbl.order() == 1;
    std::vector<std::vector<std::uint32_t>> classes;
    for (auto x : s)
        classes.push_back(conjugacy_class(tbl, x));

    // Conjugating every choice by one element preserves generation, so the
    // first element is fixed.
    std::set<std::pair<std::size_t, std::vector<char>>> verified;
    std::vector<std::uint32_t> path{s[0]};
    std::function<bool(std::size_t, const std::vector<char>&)> all_generate = [&](std::size_t i,
                                                                                const std::vector<char>& h) {
        if (std::all_of(h.begin(), h.end(), [](char c) { return c != 0; }))
            return true;
        if (i == classes.size())
            return false;
        if (verified.count({i, h}))
            return true;
        bool ok = true;
        const auto hit = std::find_if(classes[i].begin(), classes[i].end(), [&](auto c) { return h[c] != 0; });
        if (hit != classes[i].end()) {
            ok = all_generate(i + 1, h);
        } else {
            for (auto c : classes[i]) {
                path.push_back(c);
                const auto next = closure_marks(tbl, path);
                ok = all_generate(i + 1, next);
                path.pop_back();
                if (!ok)
                    break;
            }
        }
        if (ok)
            verified.insert({i, h});
        return ok;
    };
    return all_generate(1, closure_marks(tbl, path));
}

std::vector<std::uint32_t> m_power_set(const GroupTable& tbl, std::uint64_t m)
{
    std::vector<char> mark(tbl.order(), 0);
    for (std::uint32_t g = 0; g < tbl.order(); ++g)
        mark[tbl.power(g, m)] = 1;
    return marked(mark);
}

} // namespace expander
