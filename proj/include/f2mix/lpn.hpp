#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "f2mix/oracle.hpp"
#include "f2mix/rng.hpp"
#include "f2mix/subspace.hpp"

namespace f2mix {

// Noisy-parity sample source: x uniform on F2^n, label <secret, x> flipped
// independently with probability eps.  The secret is the parity's support
// indicator.
class LpnOracle {
  public:
    LpnOracle(GF2Vector secret, double eps, SplitRng rng);

    std::size_t n() const { return secret_.length(); }
    const GF2Vector& secret() const { return secret_; }
    double eps() const { return eps_; }

    std::pair<GF2Vector, bool> draw();

  private:
    GF2Vector secret_;
    double eps_;
    std::uint64_t flip_threshold_;
    SplitRng rng_;
};

// (x, y) -> the concatenated vector (x | y) in F2^(n+1).  Under the LPN law
// the image is distributed as the mixture of the full space (weight 2 eps)
// and the parity-satisfying hyperplane (weight 1 - 2 eps).
GF2Vector lpn_to_mixture(const GF2Vector& x, bool y);

// Inverse direction: delete coordinate j of a mixture sample and use it as
// the label.  When j lies in the hidden constraint's support this is an
// (n, eps)-LPN sample for the punctured parity.  j is 0-based.
std::pair<GF2Vector, bool> mixture_to_lpn(const GF2Vector& sample, std::size_t j);

// Exhaustive maximum-agreement parity search; the test oracle standing in
// for a hypothetical LPN solver.  Ties break to the lexicographically first
// support vector (all-zero wins when empty).  Refuses n > 20.
GF2Vector brute_force_lpn(std::span<const std::pair<GF2Vector, bool>> samples, std::size_t n);

// Full round trip of the mixture -> LPN direction: try every deleted
// coordinate, solve each induced LPN instance by brute force, rebuild the
// hyperplane candidates, and let hypothesis selection pick the real one.
// Returns the recovered smaller subspace A1.
Subspace lpn_roundtrip_recover(SampleOracle& oracle, std::size_t n_plus_1, const Rational& w_small,
                               double delta, std::size_t lpn_samples);

} // namespace f2mix
