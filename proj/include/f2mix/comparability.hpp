#pragma once

#include <cstddef>

#include "f2mix/oracle.hpp"

namespace f2mix {

// Parameters of the comparability tester.  One repetition draws t samples to
// span the support, rebases to F2^v through a bijection D, draws r more
// samples through D, and declares the pair comparable iff the only quadratic
// vanishing on all projected samples is the zero polynomial.  The repetition
// count amplifies a >= 0.99-correct single run to confidence 1 - delta by
// majority vote.
struct ComparabilityParams {
    std::size_t n = 0;  // ambient dimension
    double wmin = 0;    // lower bound on both mixture weights, in (0, 1/2]
    double delta = 0.1; // allowed failure probability

    ComparabilityParams(std::size_t n_, double wmin_, double delta_);

    std::size_t span_samples() const;  // t = ceil(16 n / wmin^2)
    std::size_t poly_samples() const;  // r = ceil(8 n^2 / wmin)
    std::size_t repetitions() const;   // k = ceil(3 ln(2/delta))
};

// True iff the two hidden subspaces behind the oracle are comparable
// (one contains the other).  Requires both mixture weights >= wmin.
bool test_comparability(SampleOracle& oracle, const ComparabilityParams& params);

} // namespace f2mix
