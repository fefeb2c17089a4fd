#include "f2mix/mixture_dist.hpp"

#include "f2mix/errors.hpp"

namespace f2mix {

SubspaceMixtureDistribution::SubspaceMixtureDistribution(Subspace a_, Subspace b_, Rational wa_)
    : a(std::move(a_)), b(std::move(b_)), wa(std::move(wa_)) {
    if (a.ambient() != b.ambient())
        throw InvalidParams("mixture components have different ambient dimensions");
    if (wa < 0 || wa > 1)
        throw InvalidParams("weight must lie in [0,1]");
}

Rational exact_density(const SubspaceMixtureDistribution& d, const GF2Vector& x) {
    Rational p = 0;
    if (d.a.contains(x))
        p += d.wa * inv_pow2(d.a.dim());
    if (d.b.contains(x))
        p += d.wb() * inv_pow2(d.b.dim());
    return p;
}

AtomTable AtomTable::build(std::span<const Subspace> family) {
    std::size_t k = family.size();
    if (k > 16)
        throw InvalidParams("atom table limited to 16 subspaces");
    std::size_t npat = std::size_t(1) << k;

    // Intersection of every nonempty subset, built from the subset one bit
    // smaller; caps[mask] reuses caps[mask without its lowest bit].
    std::vector<Subspace> caps(npat);
    std::vector<std::size_t> cap_dim(npat, 0);
    for (std::size_t mask = 1; mask < npat; ++mask) {
        std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
        std::size_t rest = mask & (mask - 1);
        caps[mask] = rest == 0 ? family[low] : intersect(family[low], caps[rest]);
        cap_dim[mask] = caps[mask].dim();
    }
    AtomTable t;
    t.family_size = k;
    t.size.assign(npat, BigInt(0));
    // |atom_sigma| = sum_{mask superset sigma} (-1)^{|mask \ sigma|} 2^{capdim(mask)}.
    for (std::size_t sigma = 1; sigma < npat; ++sigma) {
        BigInt s = 0;
        std::size_t free_bits = (npat - 1) & ~sigma;
        // Iterate supersets of sigma.
        std::size_t sub = free_bits;
        for (;;) {
            std::size_t mask = sigma | sub;
            BigInt term = pow2(cap_dim[mask]);
            if (std::popcount(sub) & 1u)
                s -= term;
            else
                s += term;
            if (sub == 0)
                break;
            sub = (sub - 1) & free_bits;
        }
        t.size[sigma] = s;
    }
    return t;
}

Rational exact_tv(const SubspaceMixtureDistribution& d1, const SubspaceMixtureDistribution& d2) {
    if (d1.ambient() != d2.ambient())
        throw InvalidParams("ambient dimensions differ");
    const Subspace fam[4] = {d1.a, d1.b, d2.a, d2.b};
    AtomTable atoms = AtomTable::build(fam);

    Rational total = 0;
    for (std::size_t sigma = 1; sigma < 16; ++sigma) {
        if (atoms.size[sigma] == 0)
            continue;
        Rational p1 = 0, p2 = 0;
        if (sigma & 1u)
            p1 += d1.wa * inv_pow2(d1.a.dim());
        if (sigma & 2u)
            p1 += d1.wb() * inv_pow2(d1.b.dim());
        if (sigma & 4u)
            p2 += d2.wa * inv_pow2(d2.a.dim());
        if (sigma & 8u)
            p2 += d2.wb() * inv_pow2(d2.b.dim());
        Rational diff = p1 - p2;
        if (diff < 0)
            diff = -diff;
        total += diff * Rational(atoms.size[sigma]);
    }
    return total / 2;
}

} // namespace f2mix
