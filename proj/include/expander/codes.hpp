#pragma once

#include "expander/graph.hpp"
#include "expander/rational.hpp"
#include "expander/spectral.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace expander {

using Bits = std::vector<std::uint8_t>; ///< one 0/1 entry per position

/// Dense matrix over GF(2), rows packed into 64-bit words.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::uint32_t rows, std::uint32_t cols)
        : rows_(rows), cols_(cols), stride_((cols + 63) / 64), w_(std::size_t(rows) * stride_, 0)
    {
    }

    std::uint32_t rows() const noexcept { return rows_; }
    std::uint32_t cols() const noexcept { return cols_; }
    bool get(std::uint32_t r, std::uint32_t c) const { return (row(r)[c >> 6] >> (c & 63)) & 1U; }
    void set(std::uint32_t r, std::uint32_t c, bool v);
    void flip(std::uint32_t r, std::uint32_t c) { row(r)[c >> 6] ^= std::uint64_t{1} << (c & 63); }
    std::uint64_t* row(std::uint32_t r) { return w_.data() + std::size_t(r) * stride_; }
    const std::uint64_t* row(std::uint32_t r) const { return w_.data() + std::size_t(r) * stride_; }
    std::uint32_t stride() const noexcept { return stride_; }
    std::uint32_t row_weight(std::uint32_t r) const;
    void append_row(const Bits& bits);

    std::uint32_t rank() const;
    /// Basis of {x : M x = 0}, one basis vector per row.
    BitMatrix nullspace() const;
    Bits multiply(const Bits& x) const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::uint32_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<std::uint64_t> w_;
};

inline constexpr std::uint32_t kMinDistanceCap = 28;

/// Binary linear code given by a parity-check matrix.
struct LinearCode {
    std::uint32_t n = 0;
    BitMatrix h;
    std::uint32_t dim = 0;
    std::optional<std::uint32_t> mindist;

    double rate() const { return n ? double(dim) / n : 0.0; }
    std::optional<double> delta() const
    {
        return mindist ? std::optional<double>(double(*mindist) / n) : std::nullopt;
    }
};

LinearCode make_code(BitMatrix h);
LinearCode repetition_code(std::uint32_t n);
LinearCode even_weight_code(std::uint32_t n);
LinearCode full_space_code(std::uint32_t n);
LinearCode zero_code(std::uint32_t n);

/// Code file: "rows n" then rows lines of n characters '0'/'1'.
LinearCode read_code(std::istream& in);
void write_code(std::ostream& out, const LinearCode& c);

/// Per-vertex bijection ports -> {0..k-1}, indexed v * k + p.
struct EdgeLabeling {
    std::uint32_t k = 0;
    std::vector<std::uint32_t> label;
};
EdgeLabeling default_labeling(const Graph& g);
EdgeLabeling random_labeling(const Graph& g, std::uint64_t seed);

/// Edge index of each port, edges numbered in canonical pairing order.
std::vector<std::uint32_t> edge_of_port(const Graph& g);
std::uint32_t edge_count(const Graph& g);

struct CycleCode {
    LinearCode code;
    std::uint32_t components = 1;
    bool connected = true;
    std::uint32_t expected_dim = 0; ///< |E| - |V| + components
};
CycleCode cycle_code(const Graph& g);

/// Local words at each vertex must lie in c0; c0's parity rows are pulled
/// back through the labeling.
LinearCode tanner_code(const Graph& g, const LinearCode& c0, const EdgeLabeling& lab);

/// Minimum nonzero weight by Gray-code enumeration of the 2^dim codewords;
/// nullopt for the zero code. dim above kMinDistanceCap throws CapExceeded.
std::optional<std::uint32_t> min_distance_exact(const LinearCode& c);

/// Code with mindist filled in.
LinearCode with_min_distance(LinearCode c);

Bits syndrome(const LinearCode& c, const Bits& word);

class CertificateRefused : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

struct Certificate {
    std::uint32_t n = 0;
    std::uint32_t dim = 0;
    double rate = 0.0;
    double rate_bound = 0.0;
    bool rate_bound_vacuous = false; ///< 2 r0 - 1 < 0
    std::optional<std::uint32_t> mindist;
    std::optional<double> delta;
    double delta_bound = 0.0;
    double lambda_normalized = 0.0;
    double r0 = 0.0;
    double delta0 = 0.0;
    bool rate_ok = false;
    std::optional<bool> distance_ok; ///< present when the exact oracle ran
};

/// (2 r0 - 1, ((delta0 - lambda)/(1 - lambda))^2) with lambda = lambda(X)/r.
/// Throws CertificateRefused when lambda >= delta0.
Certificate rate_distance_certificate(const Graph& g, const LinearCode& c0, const EdgeLabeling& lab);
Certificate rate_distance_certificate(const Graph& g, const Spectrum& s, const LinearCode& c0,
                                      const EdgeLabeling& lab);

struct InnerSearchResult {
    LinearCode code;
    bool success = false;
    unsigned trials_used = 0;
    bool exhaustive = false;
};

/// Random parity-check matrices of the smallest dimension with
/// dim/r > rate_floor until mindist/r > delta_floor; then, for r <= 14, an
/// exhaustive pass over systematic generators [I | P] when k(r-k) <= 24.
InnerSearchResult inner_code_search(std::uint32_t r, Rational rate_floor, double delta_floor, std::uint64_t seed,
                                    unsigned trials);

struct AlonChung {
    double e_measured = 0.0;
    double expected = 0.0;
    double deviation = 0.0;
    double bound = 0.0;
    bool ok = false;
};

/// |e(Y) - r gamma^2 n / 2| <= (r/2) lambda gamma (1 - gamma) n with
/// lambda = lambda_nontrivial / r.
AlonChung alon_chung_check(const Graph& g, const Spectrum& s, const VertexSet& y);
AlonChung alon_chung_check(const Graph& g, const VertexSet& y);

namespace serial {
std::optional<std::uint32_t> min_distance_exact(const LinearCode& c);
}

} // namespace expander
