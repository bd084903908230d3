#pragma once

#include "expander/polynomial.hpp"
#include "expander/zmatrix.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace expander {

inline constexpr std::size_t kOrbitPointCap = 1000000;
inline constexpr std::size_t kOrbitMagnitudeBits = 512;
inline constexpr std::size_t kApollonianCap = 100000;

/// Points B(k)·b reachable by words of length <= radius, in discovery order
/// (by depth, then by parent order, then by generator order).
struct OrbitBall {
    std::vector<ZMatrix> generators;
    ZVector base;
    unsigned radius = 0;
    std::vector<ZVector> points;
    std::vector<unsigned> depth; ///< word length at first discovery
    bool truncated = false;
    std::string reason;
};

struct OrbitOptions {
    std::size_t point_cap = kOrbitPointCap;
    std::size_t magnitude_bits = kOrbitMagnitudeBits;
    /// Require the generator list to be closed under inverses (group orbit).
    /// Off for monoid orbits such as the Pythagorean tree.
    bool require_inverse_closed = true;
};

/// Breadth-first enumeration with deduplication. Images whose entries exceed
/// the magnitude cap are dropped; hitting either cap sets `truncated`.
OrbitBall orbit_ball(const std::vector<ZMatrix>& gens, const ZVector& base, unsigned radius,
                     const OrbitOptions& opt = {});

/// 2(a1²+a2²+a3²+a4²) − (a1+a2+a3+a4)².
BigInt descartes_form(const ZVector& a);
/// Gram matrix of the Descartes form, 2I − J.
ZMatrix descartes_gram();

/// The four reflections S1..S4; S_i replaces a_i by 2·(sum of the others) − a_i.
std::vector<ZMatrix> apollonian_generators();

struct ApollonianOrbit {
    OrbitBall ball;                      ///< distinct quadruples
    std::vector<std::uint64_t> words;    ///< reduced words of each length 0..depth
    std::uint64_t collisions = 0;        ///< words landing on an already seen quadruple
    std::vector<BigInt> curvatures;      ///< root entries, then each new quadruple's new entry
};

/// Reduced-word BFS (no reflection twice in a row). The root must satisfy
/// descartes_form = 0; more than `cap` words truncates.
ApollonianOrbit apollonian_orbit(const ZVector& root, unsigned depth, std::size_t cap = kApollonianCap);

/// diag(1, 1, −1).
ZMatrix pythagorean_gram();

/// Search of 3×3 matrices with entries in [−3, 3] preserving x1²+x2²−x3²,
/// sending sample primitive triples to larger positive triples and keeping
/// the parity of the first leg. Returned in lexicographic entry order.
std::vector<ZMatrix> bootstrap_pythagorean_generators();

/// The three tree generators found by the search, frozen.
std::vector<ZMatrix> pythagorean_generators();

/// Forward tree of (3,4,5) to the given depth.
OrbitBall pythagorean_orbit(unsigned depth);

/// ±(7 6; 8 7) with base (1,1); points satisfy 4x² − 3y² = 1.
std::vector<ZMatrix> pell_generators();
ZVector pell_base();

/// ±(3 −1; 1 0) with base (2,1); x² − 3xy + y² is constant on the orbit.
std::vector<ZMatrix> fibonacci_generators();
ZVector fibonacci_base();

struct SieveWitness {
    ZVector point;
    BigInt value;
    unsigned nu = 0;
};

struct SieveReport {
    std::uint64_t points = 0;
    std::uint64_t zeros = 0;
    std::uint64_t unfactored = 0;
    std::map<unsigned, std::uint64_t> histogram; ///< ν -> count, nonzero factored values
    std::optional<unsigned> r_star;
    std::vector<SieveWitness> witnesses;         ///< first points attaining r_star
    BigInt value_gcd;                            ///< gcd of all values
    std::map<std::uint32_t, std::uint64_t> divisible; ///< p -> #points with p | f, p <= 31
};

inline constexpr std::size_t kSieveWitnesses = 8;

/// ν-histogram of f over the points. f must be non-constant and integral on
/// every point (NonIntegralError names the first offending point).
SieveReport saturation_report(const std::vector<ZVector>& points, const Polynomial& f);
inline SieveReport saturation_report(const OrbitBall& ob, const Polynomial& f)
{
    return saturation_report(ob.points, f);
}

} // namespace expander
