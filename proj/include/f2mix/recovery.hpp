#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "f2mix/gf2.hpp"
#include "f2mix/oracle.hpp"
#include "f2mix/rational.hpp"
#include "f2mix/subspace.hpp"

namespace f2mix {

enum class Regime { Incomparable, LargeGap, DegenerateLpnHard, Identical };

std::string regime_name(Regime r);

// Final answer of the driver.  Subspaces are canonical and ordered by
// descending dimension (ties by basis order), weights follow that order and
// sum to one.  For the Identical regime the weights are a convention (the
// mixture law does not depend on them) and weights_identifiable is false.
struct RecoveryResult {
    Subspace a0_hat;
    Subspace a1_hat;
    double w0_hat = 0;
    double w1_hat = 0;
    Regime regime = Regime::Incomparable;
    bool weights_identifiable = true;
    std::uint64_t samples_used = 0;
};

struct ProjectorOptions {
    std::size_t base_dim = 10; // target dimension of the composed projector
    // Retry budget per level; defaults to ceil(200 ln(n+2)).  Overridable so
    // tests can exercise ProjectionStalled cheaply.
    std::optional<std::size_t> retries;
};

// Dimension reduction that preserves incomparability: level by level, sample
// a uniform (i-1) x i matrix and keep the first one under which the projected
// mixture still tests incomparable (per-test confidence 1/n^2).  Returns the
// composed base_dim x n projector, or the identity when n <= base_dim.
// Throws ProjectionStalled when a level exhausts its retries, which signals a
// comparable input pair.
GF2Matrix find_good_projector(SampleOracle& oracle, std::size_t n, double wmin, SplitRng& rng,
                              const ProjectorOptions& opts = {});

// Exact recovery in small dimension (v <= 10 by default).  Draws a
// coupon-collector budget of samples so the support S equals the union of
// the two subspaces, then exploits the union structure: for x in exactly one
// component, {y in S : x + y in S} is precisely that component.  Candidate
// pairs that cover S are ranked by hypothesis selection.
std::pair<Subspace, Subspace> recover_base_case(SampleOracle& oracle, const Rational& wmin,
                                                double delta);

// Full incomparable pipeline: project to base_dim, solve the base case, then
// complete each component from fresh samples whose projections avoid the
// other projected component.
std::pair<Subspace, Subspace> incomparable_subspace_recovery(SampleOracle& oracle, std::size_t n,
                                                             const Rational& wmin, double delta,
                                                             SplitRng& rng,
                                                             const ProjectorOptions& opts = {});

// Indices i with v_i in span(v_{-i}): the union of supports of a kernel
// basis of the matrix whose columns are the v_i.  One elimination replaces m
// per-index rank tests.
std::vector<std::size_t> dependent_index_set(std::span<const GF2Vector> vectors);

// Parameters of the large-dimension-gap recovery. The lift degree is the
// smallest one making the lifted rank of the small subspace a wmin/20
// fraction of the large one's; the sample count keeps birthday collisions
// among large-subspace draws rare while still covering both components.
struct LargeDiffParams {
    std::size_t d0 = 0, d1 = 0;
    Rational wmin;
    std::size_t ell = 0; // lift degree
    std::size_t m = 0;   // sample count

    static LargeDiffParams make(std::size_t d0, std::size_t d1, const Rational& wmin);

    // Guarantee regime of the dimension-gap theorem: d1/d0 < 1 - ln(d0)/sqrt(d0).
    static bool admissible(std::size_t d0, std::size_t d1);
};

// Lift samples, find the dependent indices, and read the two subspaces off
// the spans.  Returns (small, large); throws DimensionMismatch when the
// recovered dimensions differ from the hypothesized ones.
std::pair<Subspace, Subspace> large_diff_recovery(SampleOracle& oracle,
                                                  const LargeDiffParams& params);

// End-to-end driver: reduce the ambient space to the span of the samples,
// test comparability, then run the incomparable pipeline or the dimension
// enumeration over large-diff guesses with hypothesis selection, estimate
// weights, and map everything back.
RecoveryResult recover_driver(SampleOracle& oracle, std::size_t n, const Rational& wmin,
                              double delta, SplitRng rng);

} // namespace f2mix
