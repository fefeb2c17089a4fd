#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "f2mix/mixture_dist.hpp"
#include "f2mix/oracle.hpp"

namespace f2mix {

// Candidate subspace pairs plus the weight lower bound from which the
// tournament grid is derived: eps = w0_lower/100, M = ceil(1/eps),
// gamma = (1-w0_lower)/M, and each pair is expanded into the distributions
// with weights w0_lower + k gamma for k = 0..M.  The grid step is at most
// eps (1-w0_lower), so some grid distribution is within eps of the truth in
// total variation whenever the true pair is present.
struct HypothesisList {
    std::vector<std::pair<Subspace, Subspace>> items;
    Rational w0_lower;

    std::size_t grid_steps() const; // M
    Rational grid_weight(std::size_t k) const;
    Rational eps() const { return w0_lower / 100; }
};

// Exact probability under d of the set {x : density_di(x) > density_dj(x)}.
// Densities are constant on the membership atoms of the underlying
// subspaces, so the mass is a sum over at most 2^6 atoms.
Rational scheffe_mass(const SubspaceMixtureDistribution& d, const SubspaceMixtureDistribution& di,
                      const SubspaceMixtureDistribution& dj);

// Scheffe tournament over the gridded distributions: every ordered pair of
// distributions is contested on its Scheffe set, scored by the distance
// between the empirical mass and each contestant's exact mass, and the
// distribution with the most wins is mapped back to its pair index.  Ties
// go to the lowest grid index.  Requires the true pair to be present and
// both true weights >= w0_lower.
std::size_t choose_right_hypothesis(SampleOracle& oracle, const HypothesisList& hypotheses,
                                    double delta);

} // namespace f2mix
