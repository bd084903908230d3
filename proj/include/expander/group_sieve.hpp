#pragma once

#include "expander/group.hpp"
#include "expander/stats.hpp"
#include "expander/zmatrix.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace expander {

inline constexpr std::size_t kWalkMagnitudeBits = 4096;

/// Random walk w_k = s_1 ··· s_k on a symmetric generator list, uniform
/// steps (or lazy: stay put with probability 1/2). Trial i draws from
/// mt19937_64(derive_seed(seed, i)).
struct WalkConfig {
    std::vector<ZMatrix> gens;
    unsigned steps = 60;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    bool lazy = false;
    std::size_t magnitude_bits = kWalkMagnitudeBits;
};

/// w_0 .. w_k of one trial; stops early (truncated) when an entry exceeds the cap.
struct WalkTrace {
    std::vector<ZMatrix> steps;
    bool truncated = false;
};

WalkTrace walk_trace(const WalkConfig& cfg, std::uint64_t trial);

/// Final w_k of every trial; truncated walks are flagged.
struct WalkSamples {
    std::vector<ZMatrix> samples;
    std::vector<std::uint8_t> truncated;
};

WalkSamples walk_samples(const WalkConfig& cfg);

using MatrixPredicate = std::function<bool(const ZMatrix&)>;

struct StepRate {
    unsigned step = 0;
    std::uint64_t hits = 0;
    std::uint64_t n = 0; ///< walks alive at this step
    double p_hat = 0;
    Interval ci;
};

/// Empirical p_k with a log-linear tail fit log p_k = log c − α k over
/// steps [k_max/2, k_max], and the limit of a constant-plus-exponential fit
/// on two-step averages over [k_max/6, k_max].
struct DecayFit {
    std::vector<StepRate> rates;
    double c = 0;
    double alpha = 0;
    Interval alpha_ci;
    double r_squared = 0;
    unsigned fit_from = 0, fit_to = 0;
    std::size_t fit_points = 0;
    bool alpha_lower_bound_only = false;
    double limit = 0;
    Interval limit_ci; ///< Wilson interval of `limit` at n = trials
    std::uint64_t truncated_walks = 0;
};

std::vector<StepRate> hit_counts(const WalkConfig& cfg, const MatrixPredicate& pred);
DecayFit decay_fit(std::vector<StepRate> rates, std::uint64_t trials);
DecayFit hit_probability(const WalkConfig& cfg, const MatrixPredicate& pred);

/// Whether `exact` lies within `widths` Wilson half-widths of the fitted limit.
bool limit_matches(const DecayFit& fit, double exact, double widths = 3);

/// det(xI − A) as coefficients, leading 1 first (Faddeev–LeVerrier).
std::vector<BigInt> charpoly(const ZMatrix& a);
/// Discriminant of a monic integer polynomial (Sylvester resultant with f').
BigInt discriminant(const std::vector<BigInt>& monic);

/// A subset S of the image of the walk group mod p, enumerated exactly.
struct QuotientTarget {
    std::shared_ptr<const GroupTable> group;
    std::vector<std::uint8_t> member;
    std::uint32_t modulus = 0;
    std::uint64_t size = 0;
    std::string description;

    double fraction() const { return static_cast<double>(size) / static_cast<double>(group->order()); }
    MatrixPredicate predicate() const;
};

/// Elements whose characteristic polynomial has discriminant 0 mod p
/// (for SL2: trace = ±2).
QuotientTarget disc_target(const std::vector<ZMatrix>& gens, std::uint32_t p);
/// m-th powers in the image mod p.
QuotientTarget power_target(const std::vector<ZMatrix>& gens, std::uint32_t p, std::uint64_t m);
/// An explicit list of matrices mod p.
QuotientTarget subset_target(const std::vector<ZMatrix>& gens, std::uint32_t p, const std::vector<ZMatrix>& subset);

/// Discriminant-zero test mod p without enumerating the group.
MatrixPredicate disc_predicate(std::uint32_t p);

/// Per-step envelope |P(w_k ∈ S) − |S|/|G|| <= √|S|·(λ/k)^k·√(1 − 1/|G|) from
/// the Cayley graph of the image. Bipartite images switch to the lazy walk.
struct MixingEnvelope {
    bool lazy = false;
    double ratio = 0;
    std::vector<double> bound;
};

MixingEnvelope mixing_envelope(const QuotientTarget& target, const std::vector<ZMatrix>& gens, unsigned steps);

/// Ascending factor degrees of f mod p by distinct-degree factorization;
/// empty when f mod p is not squarefree.
std::vector<unsigned> factor_pattern(const std::vector<BigInt>& monic, std::uint32_t p);
std::string pattern_string(const std::vector<unsigned>& pattern);

struct PatternHistogram {
    unsigned d = 0;
    std::vector<std::uint32_t> primes;
    std::uint64_t samples = 0;
    std::uint64_t non_generic = 0;   ///< rational root ±1, or square discriminant
    std::uint64_t skipped = 0;       ///< (sample, prime) pairs of bad reduction
    std::uint64_t truncated = 0;
    std::map<std::uint32_t, std::map<std::string, std::uint64_t>> per_prime;
    std::map<std::string, std::uint64_t> pooled_generic;
};

bool is_non_generic(const std::vector<BigInt>& monic);

PatternHistogram charpoly_pattern_histogram(const WalkConfig& cfg, const std::vector<std::uint32_t>& primes);

/// Cycle-type distribution of Sym(d), keyed by pattern_string.
std::map<std::string, double> symmetric_cycle_types(unsigned d);

enum class Verdict { consistent, inconsistent, insufficient };
std::string verdict_name(Verdict v);

struct GaloisVerdict {
    Verdict verdict = Verdict::insufficient;
    double chi_square = 0;
    unsigned dof = 0;
    double p_value = 0;
    std::uint64_t generic_events = 0;
};

inline constexpr std::uint64_t kVerdictMinSamples = 200;
inline constexpr std::size_t kVerdictMinPrimes = 20;
inline constexpr double kVerdictLevel = 0.01;

GaloisVerdict generic_galois_verdict(const PatternHistogram& h);

} // namespace expander
