#include "f2mix/oracle.hpp"

#include <algorithm>

#include "f2mix/errors.hpp"

namespace f2mix {

MixtureOracle::MixtureOracle(Subspace a0, Subspace a1, Rational w0, SplitRng rng)
    : a0_(std::move(a0)), a1_(std::move(a1)), w0_(std::move(w0)),
      w0_threshold_(bernoulli_threshold(w0_)), rng_(rng) {
    if (a0_.ambient() != a1_.ambient())
        throw InvalidParams("mixture components have different ambient dimensions");
    if (w0_ < 0 || w0_ > 1)
        throw InvalidParams("w0 must lie in [0,1]");
}

void MixtureOracle::draw_into(GF2Vector& out) {
    const Subspace& side = rng_.below_threshold(w0_threshold_) ? a0_ : a1_;
    side.sample_into(rng_, out);
}

ProjectedOracle::ProjectedOracle(SampleOracle& inner, GF2Matrix projector)
    : inner_(inner), projector_(std::move(projector)), buf_(inner.dim()) {
    if (projector_.cols != inner_.dim())
        throw InvalidParams("projector width does not match oracle dimension");
}

void ProjectedOracle::draw_into(GF2Vector& out) {
    inner_.draw_into(buf_);
    mat_vec_into(projector_, buf_, out);
}

void BudgetedOracle::draw_into(GF2Vector& out) {
    if (used_ >= budget_)
        throw InsufficientSamples("oracle sample budget exhausted");
    ++used_;
    inner_.draw_into(out);
}

std::pair<double, double> estimate_weights(std::span<const GF2Vector> samples, const Subspace& a0,
                                           const Subspace& a1) {
    if (a0.ambient() != a1.ambient())
        throw InvalidParams("ambient dimensions differ");
    if (a0 == a1)
        throw Unidentifiable("weights of a mixture with equal components are unidentifiable");

    bool use_a0_side = !is_subset(a0, a1); // otherwise a0 is strictly inside a1
    const Subspace& big = use_a0_side ? a0 : a1;
    const Subspace& other = use_a0_side ? a1 : a0;

    std::size_t in_diff = 0;
    for (const auto& x : samples)
        if (big.contains(x) && !other.contains(x))
            ++in_diff;

    // |big \ (big n other)| = 2^dim(big) - 2^dim(big n other).
    std::size_t dcap = intersect(big, other).dim();
    double frac_diff =
        1.0 - std::ldexp(1.0, -static_cast<int>(big.dim() - dcap)); // |big\other| / |big|
    double freq = samples.empty() ? 0.0 : static_cast<double>(in_diff) / samples.size();
    double w_big = frac_diff > 0 ? freq / frac_diff : 0.0;
    w_big = std::clamp(w_big, 0.0, 1.0);

    double w0 = use_a0_side ? w_big : 1.0 - w_big;
    return {w0, 1.0 - w0};
}

} // namespace f2mix
