#pragma once

#include "expander/graph.hpp"
#include "expander/zmatrix.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace expander {

/// Flat element encoding: row-major residues, permutation images, or a single residue.
using Element = std::vector<std::int32_t>;

inline constexpr std::size_t kClosureCap = 2'000'000;
inline constexpr std::size_t kProductSetCap = 200'000;
inline constexpr std::size_t kInvariableCap = 10'000;

/// Multiplication law on fixed-width encodings.
class GroupLaw {
public:
    virtual ~GroupLaw() = default;
    virtual std::size_t width() const = 0;
    virtual Element identity() const = 0;
    virtual void multiply(std::span<const std::int32_t> a, std::span<const std::int32_t> b,
                          std::span<std::int32_t> out) const = 0;
    virtual Element inverse(std::span<const std::int32_t> a) const = 0;
    virtual std::string format(std::span<const std::int32_t> a) const = 0;
};

/// d x d matrices mod m (invertible ones).
std::shared_ptr<const GroupLaw> matrix_law(unsigned d, std::uint32_t m);
/// Permutations of {0..n-1}; (a*b)(x) = a(b(x)).
std::shared_ptr<const GroupLaw> permutation_law(unsigned n);
/// Z/n under addition.
std::shared_ptr<const GroupLaw> cyclic_law(std::uint32_t n);

/// Reduction of an integer matrix mod m as an encoding.
Element reduce(const ZMatrix& a, std::uint32_t m);

/// Enumerated finite group. Elements are numbered in BFS discovery order
/// from the identity (index 0), generators applied on the left in the
/// given order.
class GroupTable {
public:
    static GroupTable close(std::shared_ptr<const GroupLaw> law, std::span<const Element> gens,
                            std::size_t cap = kClosureCap);

    std::size_t order() const noexcept { return order_; }
    const GroupLaw& law() const noexcept { return *law_; }
    std::shared_ptr<const GroupLaw> law_ptr() const noexcept { return law_; }
    std::span<const std::int32_t> element(std::uint32_t i) const
    {
        return {data_.data() + std::size_t(i) * width_, width_};
    }
    std::optional<std::uint32_t> find(std::span<const std::int32_t> e) const;
    std::uint32_t index_of(std::span<const std::int32_t> e) const;

    std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inverse(std::uint32_t a) const;
    std::uint32_t power(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t conjugate(std::uint32_t a, std::uint32_t g) const; ///< g a g^-1

    std::string format(std::uint32_t i) const { return law_->format(element(i)); }

private:
    GroupTable() = default;
    void insert(std::span<const std::int32_t> e);
    std::uint64_t hash(std::span<const std::int32_t> e) const;
    void rehash(std::size_t slots);

    std::shared_ptr<const GroupLaw> law_;
    std::size_t width_ = 0;
    std::size_t order_ = 0;
    std::vector<std::int32_t> data_;
    std::vector<std::uint32_t> slots_; ///< index + 1, 0 = empty
};

/// Symmetric generating multiset as table indices, in port order.
class GenSet {
public:
    /// Validates symmetry and the absence of duplicates.
    GenSet(const GroupTable& tbl, std::vector<std::uint32_t> elements);
    static GenSet from_elements(const GroupTable& tbl, std::span<const Element> elems);

    const std::vector<std::uint32_t>& elements() const noexcept { return elems_; }
    std::size_t size() const noexcept { return elems_.size(); }
    /// Port of s^-1 for each port.
    const std::vector<std::uint32_t>& inverse_ports() const noexcept { return inv_; }

private:
    std::vector<std::uint32_t> elems_;
    std::vector<std::uint32_t> inv_;
};

/// Vertex a, port p -> s_p a, holding the port of s_p^-1.
Graph cayley_graph(const GroupTable& tbl, const GenSet& sigma);

/// Action on {0..npoints-1}: port p sends x to act(x, p); inverse_port[p] is
/// the port acting as its inverse.
Graph schreier_graph(std::uint32_t npoints, std::span<const std::uint32_t> inverse_port,
                     const std::function<std::int64_t(std::uint32_t, std::uint32_t)>& act);
/// Left-regular action: identical to cayley_graph.
Graph schreier_graph(const GroupTable& tbl, const GenSet& sigma);

/// Points of P^1(F_p): (x:1) for x = 0..p-1, then (1:0).
std::uint32_t projective_index(std::int64_t x, std::int64_t y, std::uint32_t p);
/// Schreier graph of 2x2 matrix generators (encodings mod p) on P^1(F_p).
Graph projective_line_graph(std::span<const Element> gens, std::span<const std::uint32_t> inverse_port,
                            std::uint32_t p);

/// {(1 t; 0 1), (1 -t; 0 1), (1 0; t 1), (1 0; -t 1)} mod p.
std::vector<Element> sl2_onetwothree_generators(std::int64_t t, std::uint32_t p);
/// Same matrices over Z.
std::vector<ZMatrix> sl2_onetwothree_integer(std::int64_t t);
/// I + e_ij and I - e_ij for all i != j.
std::vector<ZMatrix> elementary_generators(unsigned d);

struct GirthRow {
    std::uint32_t p = 0;
    std::size_t order = 0;
    std::optional<std::uint32_t> girth;
    double ratio = 0.0; ///< girth / ln p
};
std::vector<GirthRow> girth_vs_logp_experiment(std::int64_t t, std::span<const std::uint32_t> primes);

/// |SL_d(Z/q)| from prod over p | q of the local factors.
BigInt sl_order_formula(unsigned d, std::uint64_t q);
/// |SL_d(Z/q)| by enumerating every matrix; refused above 2e7 candidates.
std::uint64_t sl_order_enumerated(unsigned d, std::uint32_t q);

struct StrongApproximation {
    bool onto = false;
    std::size_t image_order = 0;
    BigInt sl_order;
    bool enumerated = false; ///< sl_order came from enumeration
};
StrongApproximation strong_approx_check(std::span<const ZMatrix> gens, std::uint32_t q);

/// Elements of the subgroup generated by `gens` (ascending indices).
std::vector<std::uint32_t> subgroup_closure(const GroupTable& tbl, std::span<const std::uint32_t> gens);
bool generates(const GroupTable& tbl, std::span<const std::uint32_t> gens);

struct TripleProduct {
    std::size_t size_a = 0;
    std::size_t size_aaa = 0;
    std::optional<double> exponent; ///< log|AAA| / log|A|, absent when |A| = 1
    bool generates = false;
};
TripleProduct triple_product_growth(const GroupTable& tbl, std::span<const std::uint32_t> a);

/// True iff every choice of conjugates of the elements of s generates G.
bool invariable_generation_check(const GroupTable& tbl, std::span<const std::uint32_t> s);

/// {g^m : g in G}, ascending indices.
std::vector<std::uint32_t> m_power_set(const GroupTable& tbl, std::uint64_t m);

/// Conjugacy class of a, ascending indices.
std::vector<std::uint32_t> conjugacy_class(const GroupTable& tbl, std::uint32_t a);

} // namespace expander
