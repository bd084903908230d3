#include "expander/zmatrix.hpp"

#include "expander/error.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace expander {

ZMatrix::ZMatrix(unsigned d, std::vector<BigInt> entries) : d_(d), a_(std::move(entries))
{
    if (a_.size() != std::size_t(d) * d)
        throw PreconditionError("matrix entry count does not match dimension " + std::to_string(d));
}

ZMatrix::ZMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : d_(static_cast<unsigned>(rows.size()))
{
    for (const auto& r : rows) {
        if (r.size() != d_)
            throw PreconditionError("matrix literal is not square");
        for (auto x : r)
            a_.emplace_back(x);
    }
}

ZMatrix ZMatrix::identity(unsigned d)
{
    ZMatrix m(d);
    for (unsigned i = 0; i < d; ++i)
        m(i, i) = 1;
    return m;
}

ZMatrix ZMatrix::transpose() const
{
    ZMatrix t(d_);
    for (unsigned i = 0; i < d_; ++i)
        for (unsigned j = 0; j < d_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

BigInt ZMatrix::trace() const
{
    BigInt t = 0;
    for (unsigned i = 0; i < d_; ++i)
        t += (*this)(i, i);
    return t;
}

BigInt bareiss_det(std::vector<BigInt> m, unsigned d)
{
    if (d == 0)
        return 1;
    BigInt prev = 1;
    int sign = 1;
    auto at = [&](unsigned i, unsigned j) -> BigInt& { return m[std::size_t(i) * d + j]; };
    for (unsigned k = 0; k + 1 < d; ++k) {
        if (at(k, k) == 0) {
            unsigned swap = k + 1;
            while (swap < d && at(swap, k) == 0)
                ++swap;
            if (swap == d)
                return 0;
            for (unsigned j = 0; j < d; ++j)
                std::swap(at(k, j), at(swap, j));
            sign = -sign;
        }
        for (unsigned i = k + 1; i < d; ++i) {
            for (unsigned j = k + 1; j < d; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    return sign * at(d - 1, d - 1);
}

BigInt ZMatrix::det() const { return bareiss_det(a_, d_); }

ZMatrix ZMatrix::inverse() const
{
    const BigInt dt = det();
    if (dt != 1 && dt != -1)
        throw PreconditionError("matrix is not invertible over Z (det = " + dt.str() + ")");
    ZMatrix inv(d_);
    if (d_ == 1) {
        inv(0, 0) = dt;
        return inv;
    }
    std::vector<BigInt> minor(std::size_t(d_ - 1) * (d_ - 1));
    for (unsigned i = 0; i < d_; ++i)
        for (unsigned j = 0; j < d_; ++j) {
            std::size_t idx = 0;
            for (unsigned r = 0; r < d_; ++r)
                for (unsigned c = 0; c < d_; ++c)
                    if (r != i && c != j)
                        minor[idx++] = (*this)(r, c);
            BigInt cof = bareiss_det(minor, d_ - 1);
            if ((i + j) % 2)
                cof = -cof;
            inv(j, i) = cof * dt; // dt = +-1, so 1/dt = dt
        }
    return inv;
}

std::size_t bit_length(const BigInt& x)
{
    if (x == 0)
        return 0;
    const BigInt a = abs(x);
    return boost::multiprecision::msb(a) + 1;
}

std::size_t ZMatrix::max_bits() const
{
    std::size_t b = 0;
    for (const auto& e : a_)
        b = std::max(b, bit_length(e));
    return b;
}

ZMatrix operator*(const ZMatrix& a, const ZMatrix& b)
{
    if (a.d_ != b.d_)
        throw PreconditionError("matrix dimensions differ");
    const unsigned d = a.d_;
    ZMatrix c(d);
    for (unsigned i = 0; i < d; ++i)
        for (unsigned l = 0; l < d; ++l) {
            const BigInt& x = a(i, l);
            if (x == 0)
                continue;
            for (unsigned j = 0; j < d; ++j)
                c(i, j) += x * b(l, j);
        }
    return c;
}

ZVector operator*(const ZMatrix& a, const ZVector& v)
{
    if (v.size() != a.d_)
        throw PreconditionError("vector length " + std::to_string(v.size()) + " does not match matrix dimension " +
                                std::to_string(a.d_));
    ZVector out(a.d_);
    for (unsigned i = 0; i < a.d_; ++i)
        for (unsigned j = 0; j < a.d_; ++j)
            out[i] += a(i, j) * v[j];
    return out;
}

std::string ZMatrix::str() const
{
    std::string s = "(";
    for (unsigned i = 0; i < d_; ++i) {
        if (i)
            s += "; ";
        for (unsigned j = 0; j < d_; ++j) {
            if (j)
                s += ' ';
            s += (*this)(i, j).str();
        }
    }
    return s + ")";
}

BigInt bilinear(const ZMatrix& q, const ZVector& x, const ZVector& y)
{
    const ZVector qy = q * y;
    BigInt s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += x[i] * qy[i];
    return s;
}

ZVector parse_vector(const std::string& csv)
{
    ZVector v;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto b = tok.find_first_not_of(" \t");
        const auto e = tok.find_last_not_of(" \t");
        if (b == std::string::npos)
            throw PreconditionError("empty entry in vector '" + csv + "'");
        tok = tok.substr(b, e - b + 1);
        const std::size_t digits = tok[0] == '-' || tok[0] == '+' ? 1 : 0;
        if (tok.size() == digits || tok.find_first_not_of("0123456789", digits) != std::string::npos)
            throw PreconditionError("not an integer: '" + tok + "'");
        v.emplace_back(tok[0] == '+' ? tok.substr(1) : tok);
    }
    if (v.empty())
        throw PreconditionError("empty vector");
    return v;
}

std::string format_vector(const ZVector& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ',';
        s += v[i].str();
    }
    return s;
}

GeneratorFile read_generators(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) -> void {
        throw PreconditionError("line " + std::to_string(lineno) + ": " + what);
    };
    auto next_tokens = [&](std::vector<std::string>& toks) {
        while (std::getline(in, line)) {
            ++lineno;
            std::istringstream ss(line);
            toks.clear();
            std::string t;
            while (ss >> t)
                toks.push_back(t);
            if (!toks.empty())
                return true;
        }
        ++lineno;
        return false;
    };
    auto integer = [&](const std::string& t) {
        const std::size_t start = t[0] == '-' ? 1 : 0;
        if (t.size() == start || t.find_first_not_of("0123456789", start) != std::string::npos)
            fail("not an integer: '" + t + "'");
        return BigInt(t);
    };

    std::vector<std::string> toks;
    if (!next_tokens(toks))
        fail("missing header 'd m count'");
    if (toks.size() != 3)
        fail("header must be 'd m count'");
    GeneratorFile f;
    const BigInt d = integer(toks[0]), m = integer(toks[1]), count = integer(toks[2]);
    if (d < 1 || d > 16)
        fail("dimension out of range");
    if (m < 0 || m > BigInt(std::numeric_limits<std::int32_t>::max()))
        fail("modulus out of range");
    if (m == 1)
        fail("modulus must be 0 (integers) or at least 2");
    if (count < 0 || count > 100000)
        fail("generator count out of range");
    f.d = static_cast<unsigned>(d);
    f.modulus = static_cast<std::uint64_t>(m);
    for (unsigned g = 0; g < static_cast<unsigned>(count); ++g) {
        ZMatrix mat(f.d);
        for (unsigned i = 0; i < f.d; ++i) {
            if (!next_tokens(toks))
                fail("missing matrix row");
            if (toks.size() != f.d)
                fail("expected " + std::to_string(f.d) + " integers per row");
            for (unsigned j = 0; j < f.d; ++j) {
                BigInt x = integer(toks[j]);
                if (f.modulus) {
                    x %= f.modulus;
                    if (x < 0)
                        x += f.modulus;
                }
                mat(i, j) = x;
            }
        }
        f.matrices.push_back(std::move(mat));
    }
    if (next_tokens(toks))
        fail("trailing content after the last generator");
    return f;
}

void write_generators(std::ostream& out, const GeneratorFile& f)
{
    out << f.d << ' ' << f.modulus << ' ' << f.matrices.size() << '\n';
    for (const auto& m : f.matrices)
        for (unsigned i = 0; i < f.d; ++i) {
            for (unsigned j = 0; j < f.d; ++j)
                out << (j ? " " : "") << m(i, j);
            out << '\n';
        }
}

} // namespace expander
