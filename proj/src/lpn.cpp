#include "f2mix/lpn.hpp"

#include <algorithm>

#include "f2mix/errors.hpp"
#include "f2mix/hypothesis.hpp"
#include "f2mix/rational.hpp"

namespace f2mix {

LpnOracle::LpnOracle(GF2Vector secret, double eps, SplitRng rng)
    : secret_(std::move(secret)), eps_(eps), rng_(rng) {
    if (!(eps > 0) || eps >= 0.5)
        throw InvalidParams("noise rate must lie in (0, 1/2)");
    flip_threshold_ = static_cast<std::uint64_t>(eps * 18446744073709551616.0);
}

std::pair<GF2Vector, bool> LpnOracle::draw() {
    GF2Vector x = random_vector(secret_.length(), rng_);
    bool y = secret_.dot(x);
    if (rng_.below_threshold(flip_threshold_))
        y = !y;
    return {std::move(x), y};
}

GF2Vector lpn_to_mixture(const GF2Vector& x, bool y) {
    GF2Vector out(x.length() + 1);
    for (std::size_t i = 0; i < x.length(); ++i)
        if (x.get(i))
            out.set(i, true);
    out.set(x.length(), y);
    return out;
}

std::pair<GF2Vector, bool> mixture_to_lpn(const GF2Vector& sample, std::size_t j) {
    if (j >= sample.length())
        throw InvalidParams("deleted coordinate out of range");
    GF2Vector x(sample.length() - 1);
    std::size_t k = 0;
    for (std::size_t i = 0; i < sample.length(); ++i) {
        if (i == j)
            continue;
        if (sample.get(i))
            x.set(k, true);
        ++k;
    }
    return {std::move(x), sample.get(j)};
}

GF2Vector brute_force_lpn(std::span<const std::pair<GF2Vector, bool>> samples, std::size_t n) {
    if (n > 20)
        throw InvalidParams("brute-force parity search refuses n > 20");
    // Evaluate all 2^n parities; for word-sized n a parity's value at x is
    // one masked popcount.
    std::uint64_t best_mask = 0;
    std::size_t best_agree = 0;
    const std::uint64_t limit = std::uint64_t(1) << n;
    // Pre-pack samples.
    std::vector<std::uint64_t> xs(samples.size());
    std::vector<std::uint8_t> ys(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        xs[i] = samples[i].first.low_word();
        ys[i] = samples[i].second ? 1 : 0;
    }
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        std::size_t agree = 0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            agree += (std::popcount(xs[i] & mask) & 1u) == ys[i];
        // Strict improvement keeps the lexicographically-first tie winner:
        // masks are visited in increasing packed order, which is exactly
        // coordinate-0-first lexicographic order of support vectors.
        if (agree > best_agree) {
            best_agree = agree;
            best_mask = mask;
        }
    }
    GF2Vector secret(n);
    if (n > 0)
        secret.words()[0] = best_mask;
    return secret;
}

Subspace lpn_roundtrip_recover(SampleOracle& oracle, std::size_t n_plus_1, const Rational& w_small,
                               double delta, std::size_t lpn_samples) {
    if (oracle.dim() != n_plus_1 || n_plus_1 < 2)
        throw InvalidParams("round trip expects an (n+1)-dimensional mixture oracle");
    const std::size_t n = n_plus_1 - 1;

    std::vector<GF2Vector> raw(lpn_samples, GF2Vector(n_plus_1));
    for (auto& s : raw)
        oracle.draw_into(s);

    // One hyperplane candidate per deleted coordinate.
    const Subspace whole = Subspace::full(n_plus_1);
    std::vector<std::pair<Subspace, Subspace>> items;
    for (std::size_t j = 0; j < n_plus_1; ++j) {
        std::vector<std::pair<GF2Vector, bool>> ls;
        ls.reserve(raw.size());
        for (const auto& s : raw)
            ls.push_back(mixture_to_lpn(s, j));
        GF2Vector parity = brute_force_lpn(ls, n);
        // Constraint vector over all n+1 coordinates: the recovered parity
        // plus the deleted coordinate itself.
        GF2Vector constraint(n_plus_1);
        std::size_t k = 0;
        for (std::size_t i = 0; i < n_plus_1; ++i) {
            if (i == j) {
                constraint.set(i, true);
                continue;
            }
            if (parity.get(k))
                constraint.set(i, true);
            ++k;
        }
        GF2Matrix row(1, n_plus_1);
        row.row_data[0] = constraint;
        Subspace cand = kernel(row);
        bool dup = false;
        for (const auto& it : items)
            if (it.second == cand)
                dup = true;
        if (!dup)
            items.emplace_back(whole, cand);
    }

    HypothesisList h{items, w_small};
    std::size_t winner = choose_right_hypothesis(oracle, h, delta);
    return items[winner].second;
}

} // namespace f2mix
