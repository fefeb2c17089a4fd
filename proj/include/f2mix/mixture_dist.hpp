#pragma once

#include <span>
#include <vector>

#include "f2mix/rational.hpp"
#include "f2mix/subspace.hpp"

namespace f2mix {

// The exactly evaluable law of a two-subspace mixture:
//   p(x) = wa [x in a] / 2^dim(a)  +  (1-wa) [x in b] / 2^dim(b).
// Comparable (even equal) component pairs are allowed; the density formula is
// well-defined regardless, and the hypothesis grids need them.
struct SubspaceMixtureDistribution {
    Subspace a;
    Subspace b;
    Rational wa; // weight of a; b carries 1 - wa

    SubspaceMixtureDistribution(Subspace a_, Subspace b_, Rational wa_);
    std::size_t ambient() const { return a.ambient(); }
    Rational wb() const { return 1 - wa; }
};

Rational exact_density(const SubspaceMixtureDistribution& d, const GF2Vector& x);

// Sizes of all membership atoms of a family of subspaces: pattern sigma is the
// set of points inside exactly the subspaces with sigma's bits set.  Computed
// by Moebius inversion over intersection dimensions, never by enumerating
// points.
struct AtomTable {
    std::size_t family_size = 0;
    std::vector<BigInt> size; // 2^family_size entries; size[0] is not filled

    static AtomTable build(std::span<const Subspace> family);
};

// Total variation distance, exact.  Atoms of the four underlying subspaces
// carry constant densities, so the sum has at most 15 nonzero terms.
Rational exact_tv(const SubspaceMixtureDistribution& d1, const SubspaceMixtureDistribution& d2);

} // namespace f2mix
