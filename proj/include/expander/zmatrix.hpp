#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace expander {

using BigInt = boost::multiprecision::cpp_int;
using ZVector = std::vector<BigInt>;

/// Square matrix over Z with arbitrary-precision entries, row-major.
class ZMatrix {
public:
    ZMatrix() = default;
    explicit ZMatrix(unsigned d) : d_(d), a_(std::size_t(d) * d) {}
    ZMatrix(unsigned d, std::vector<BigInt> entries);
    ZMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static ZMatrix identity(unsigned d);

    unsigned dim() const noexcept { return d_; }
    const BigInt& operator()(unsigned i, unsigned j) const { return a_[std::size_t(i) * d_ + j]; }
    BigInt& operator()(unsigned i, unsigned j) { return a_[std::size_t(i) * d_ + j]; }
    const std::vector<BigInt>& entries() const noexcept { return a_; }

    ZMatrix transpose() const;
    BigInt trace() const;
    /// Fraction-free (Bareiss) determinant.
    BigInt det() const;
    /// Exact inverse; throws PreconditionError unless det = +-1.
    ZMatrix inverse() const;
    /// Bit length of the largest |entry|.
    std::size_t max_bits() const;

    friend ZMatrix operator*(const ZMatrix& a, const ZMatrix& b);
    friend ZVector operator*(const ZMatrix& a, const ZVector& v);
    friend bool operator==(const ZMatrix&, const ZMatrix&) = default;

    std::string str() const;

private:
    unsigned d_ = 0;
    std::vector<BigInt> a_;
};

/// Determinant of a general square BigInt matrix (row-major) by Bareiss elimination.
BigInt bareiss_det(std::vector<BigInt> m, unsigned d);

/// x^T Q y.
BigInt bilinear(const ZMatrix& q, const ZVector& x, const ZVector& y);

std::size_t bit_length(const BigInt& x);

/// Integer vector from "a,b,c".
ZVector parse_vector(const std::string& csv);
std::string format_vector(const ZVector& v);

/// Generator file: "d m count", then count blocks of d rows of d integers.
/// m = 0 means matrices over Z.
struct GeneratorFile {
    unsigned d = 0;
    std::uint64_t modulus = 0;
    std::vector<ZMatrix> matrices;
};

GeneratorFile read_generators(std::istream& in);
void write_generators(std::ostream& out, const GeneratorFile& f);

} // namespace expander
