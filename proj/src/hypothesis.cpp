#include "f2mix/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "f2mix/errors.hpp"

namespace f2mix {

std::size_t HypothesisList::grid_steps() const {
    if (!(w0_lower > 0) || w0_lower > Rational(1, 2))
        throw InvalidParams("w0_lower must lie in (0, 1/2]");
    Rational e = eps();
    BigInt m = (boost::multiprecision::denominator(e) + boost::multiprecision::numerator(e) - 1) /
               boost::multiprecision::numerator(e);
    return m.convert_to<std::size_t>();
}

Rational HypothesisList::grid_weight(std::size_t k) const {
    std::size_t m = grid_steps();
    Rational gamma = (1 - w0_lower) / static_cast<long>(m);
    return w0_lower + gamma * static_cast<long>(k);
}

Rational scheffe_mass(const SubspaceMixtureDistribution& d, const SubspaceMixtureDistribution& di,
                      const SubspaceMixtureDistribution& dj) {
    if (d.ambient() != di.ambient() || d.ambient() != dj.ambient())
        throw InvalidParams("ambient dimensions differ");
    const Subspace fam[6] = {d.a, d.b, di.a, di.b, dj.a, dj.b};
    AtomTable atoms = AtomTable::build(fam);

    Rational mass = 0;
    for (std::size_t sigma = 1; sigma < 64; ++sigma) {
        if (atoms.size[sigma] == 0)
            continue;
        Rational pi = 0, pj = 0;
        if (sigma & 4u)
            pi += di.wa * inv_pow2(di.a.dim());
        if (sigma & 8u)
            pi += di.wb() * inv_pow2(di.b.dim());
        if (sigma & 16u)
            pj += dj.wa * inv_pow2(dj.a.dim());
        if (sigma & 32u)
            pj += dj.wb() * inv_pow2(dj.b.dim());
        if (!(pi > pj))
            continue;
        Rational pd = 0;
        if (sigma & 1u)
            pd += d.wa * inv_pow2(d.a.dim());
        if (sigma & 2u)
            pd += d.wb() * inv_pow2(d.b.dim());
        mass += pd * Rational(atoms.size[sigma]);
    }
    return mass;
}

namespace {

struct DedupedSubspaces {
    std::vector<Subspace> subs;
    std::vector<std::pair<std::size_t, std::size_t>> item_idx; // (a, b) per pair

    static DedupedSubspaces build(const HypothesisList& h) {
        DedupedSubspaces d;
        auto intern = [&d](const Subspace& s) {
            for (std::size_t i = 0; i < d.subs.size(); ++i)
                if (d.subs[i] == s)
                    return i;
            d.subs.push_back(s);
            return d.subs.size() - 1;
        };
        for (const auto& [a, b] : h.items)
            d.item_idx.emplace_back(intern(a), intern(b));
        return d;
    }
};

} // namespace

std::size_t choose_right_hypothesis(SampleOracle& oracle, const HypothesisList& h, double delta) {
    const std::size_t n_pairs = h.items.size();
    if (n_pairs == 0)
        throw EmptyHypothesisList("hypothesis list is empty");
    for (const auto& [a, b] : h.items)
        if (a.ambient() != oracle.dim() || b.ambient() != oracle.dim())
            throw InvalidParams("hypothesis ambient does not match oracle");
    if (n_pairs == 1)
        return 0;
    if (!(delta > 0) || delta >= 1)
        throw InvalidParams("delta must lie in (0,1)");

    const std::size_t ambient = oracle.dim();
    const std::size_t grid = h.grid_steps() + 1; // k = 0..M
    const std::size_t n_dists = n_pairs * grid;

    // Common exact denominator for all grid weights: with w0_lower = p/q and
    // M steps, weight k is (pM + k(q-p)) / (qM).
    const BigInt p = boost::multiprecision::numerator(h.w0_lower);
    const BigInt q = boost::multiprecision::denominator(h.w0_lower);
    const BigInt big_m = grid - 1;
    const BigInt weight_den_big = q * big_m;
    std::size_t max_dim = 0;
    DedupedSubspaces dd = DedupedSubspaces::build(h);
    for (const auto& s : dd.subs)
        max_dim = std::max(max_dim, s.dim());
    // Densities are handled as integers over Q 2^max_dim; keep that in range.
    if (weight_den_big > (BigInt(1) << 30) || max_dim > 30)
        throw InvalidParams("hypothesis grid too fine for exact integer scoring");
    const std::int64_t weight_den = weight_den_big.convert_to<std::int64_t>();

    std::vector<std::int64_t> weight_num(grid);
    for (std::size_t k = 0; k < grid; ++k)
        weight_num[k] = ((p * big_m) + BigInt(k) * (q - p)).convert_to<std::int64_t>();

    // Sample count: Hoeffding plus a union bound over all Scheffe sets needs
    // O((1/eps^2) log(#distributions/delta)); the leading constant is 16.
    const double eps = to_double(h.eps());
    const std::size_t m_draws = static_cast<std::size_t>(std::ceil(
        16.0 / (eps * eps) *
        (std::log(static_cast<double>(n_dists)) + std::log(1.0 / delta))));

    // Histogram of drawn values.  Selection runs in reduced ambients, so the
    // packed value fits one word.
    if (ambient > 62)
        throw InvalidParams("hypothesis selection supports ambient <= 62");
    std::vector<std::pair<std::uint64_t, std::int64_t>> hist; // (value, count), sorted
    {
        GF2Vector x(ambient);
        if (ambient <= 20) {
            std::vector<std::int64_t> dense(std::size_t(1) << ambient, 0);
            for (std::size_t i = 0; i < m_draws; ++i) {
                oracle.draw_into(x);
                ++dense[x.low_word()];
            }
            for (std::size_t v = 0; v < dense.size(); ++v)
                if (dense[v])
                    hist.emplace_back(v, dense[v]);
        } else {
            std::unordered_map<std::uint64_t, std::int64_t> map;
            map.reserve(1 << 16);
            for (std::size_t i = 0; i < m_draws; ++i) {
                oracle.draw_into(x);
                ++map[x.low_word()];
            }
            hist.assign(map.begin(), map.end());
            std::sort(hist.begin(), hist.end());
        }
    }

    // Membership mask of every realized value over the distinct subspaces.
    const std::size_t n_subs = dd.subs.size();
    if (n_subs > 64)
        throw InvalidParams("too many distinct subspaces in hypothesis list");
    std::vector<std::uint64_t> value_mask(hist.size(), 0);
    {
        GF2Vector x(ambient);
        for (std::size_t vi = 0; vi < hist.size(); ++vi) {
            x.clear();
            x.words()[0] = hist[vi].first;
            for (std::size_t s = 0; s < n_subs; ++s)
                if (dd.subs[s].contains(x))
                    value_mask[vi] |= std::uint64_t(1) << s;
        }
    }

    // Scaled densities: dens[g][pattern] with pattern bit0 = "in A_j",
    // bit1 = "in B_j", over the global denominator weight_den * 2^max_dim.
    std::vector<std::int64_t> dens(n_dists * 4);
    for (std::size_t j = 0; j < n_pairs; ++j) {
        const std::int64_t in_a = std::int64_t(1) << (max_dim - dd.subs[dd.item_idx[j].first].dim());
        const std::int64_t in_b = std::int64_t(1)
                                  << (max_dim - dd.subs[dd.item_idx[j].second].dim());
        for (std::size_t k = 0; k < grid; ++k) {
            std::int64_t* cell = &dens[(j * grid + k) * 4];
            cell[0] = 0;
            cell[1] = weight_num[k] * in_a;
            cell[2] = (weight_den - weight_num[k]) * in_b;
            cell[3] = cell[1] + cell[2];
        }
    }

    // Atom sizes and empirical counts per ordered pair combo, then the full
    // tournament.  Within a combo the atom pattern of a value is two bits per
    // side: (in A_j1, in B_j1, in A_j2, in B_j2).
    std::vector<std::int64_t> wins(n_dists, 0);
    std::vector<std::int64_t> atom_size(16), atom_count(16);
    const __int128 total_den = static_cast<__int128>(weight_den) << max_dim;

    for (std::size_t j1 = 0; j1 < n_pairs; ++j1) {
        for (std::size_t j2 = j1; j2 < n_pairs; ++j2) {
            const Subspace fam[4] = {dd.subs[dd.item_idx[j1].first],
                                     dd.subs[dd.item_idx[j1].second],
                                     dd.subs[dd.item_idx[j2].first],
                                     dd.subs[dd.item_idx[j2].second]};
            AtomTable atoms = AtomTable::build(fam);
            for (std::size_t sigma = 0; sigma < 16; ++sigma)
                atom_size[sigma] = sigma == 0 ? 0 : atoms.size[sigma].convert_to<std::int64_t>();
            std::fill(atom_count.begin(), atom_count.end(), 0);
            const std::uint64_t ma1 = std::uint64_t(1) << dd.item_idx[j1].first;
            const std::uint64_t mb1 = std::uint64_t(1) << dd.item_idx[j1].second;
            const std::uint64_t ma2 = std::uint64_t(1) << dd.item_idx[j2].first;
            const std::uint64_t mb2 = std::uint64_t(1) << dd.item_idx[j2].second;
            for (std::size_t vi = 0; vi < hist.size(); ++vi) {
                std::uint64_t m = value_mask[vi];
                std::size_t sigma = (m & ma1 ? 1u : 0u) | (m & mb1 ? 2u : 0u) |
                                    (m & ma2 ? 4u : 0u) | (m & mb2 ? 8u : 0u);
                atom_count[sigma] += hist[vi].second;
            }

            for (std::size_t k1 = 0; k1 < grid; ++k1) {
                const std::size_t g1 = j1 * grid + k1;
                const std::int64_t* d1 = &dens[g1 * 4];
                const std::size_t k2_begin = j1 == j2 ? k1 + 1 : 0;
                for (std::size_t k2 = k2_begin; k2 < grid; ++k2) {
                    const std::size_t g2 = j2 * grid + k2;
                    const std::int64_t* d2 = &dens[g2 * 4];
                    std::int64_t emp = 0;
                    __int128 mass1 = 0, mass2 = 0;
                    for (std::size_t sigma = 1; sigma < 16; ++sigma) {
                        const std::int64_t a = d1[sigma & 3];
                        const std::int64_t b = d2[(sigma >> 2) & 3];
                        if (a > b) {
                            emp += atom_count[sigma];
                            mass1 += static_cast<__int128>(a) * atom_size[sigma];
                            mass2 += static_cast<__int128>(b) * atom_size[sigma];
                        }
                    }
                    // Scores on the common denominator m_draws * total_den.
                    const __int128 emp_scaled = static_cast<__int128>(emp) * total_den;
                    __int128 s1 = emp_scaled - mass1 * static_cast<__int128>(m_draws);
                    __int128 s2 = emp_scaled - mass2 * static_cast<__int128>(m_draws);
                    if (s1 < 0)
                        s1 = -s1;
                    if (s2 < 0)
                        s2 = -s2;
                    ++wins[s1 <= s2 ? g1 : g2];
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t g = 1; g < n_dists; ++g)
        if (wins[g] > wins[best])
            best = g;
    return best / grid;
}

} // namespace f2mix
