#include "f2mix/comparability.hpp"

#include <cmath>
#include <vector>

#include "f2mix/errors.hpp"
#include "f2mix/poly.hpp"

namespace f2mix {

ComparabilityParams::ComparabilityParams(std::size_t n_, double wmin_, double delta_)
    : n(n_), wmin(wmin_), delta(delta_) {
    if (n == 0)
        throw InvalidParams("ambient dimension must be positive");
    if (!(wmin > 0.0) || wmin > 0.5)
        throw InvalidParams("wmin must lie in (0, 1/2]");
    if (!(delta > 0.0) || delta >= 1.0)
        throw InvalidParams("delta must lie in (0, 1)");
}

std::size_t ComparabilityParams::span_samples() const {
    return static_cast<std::size_t>(std::ceil(16.0 * static_cast<double>(n) / (wmin * wmin)));
}

std::size_t ComparabilityParams::poly_samples() const {
    return static_cast<std::size_t>(
        std::ceil(8.0 * static_cast<double>(n) * static_cast<double>(n) / wmin));
}

std::size_t ComparabilityParams::repetitions() const {
    std::size_t k = static_cast<std::size_t>(std::ceil(3.0 * std::log(2.0 / delta)));
    return k | 1; // odd, so the majority is never tied
}

namespace {

// One unamplified run.  Correct with probability >= 0.99: the only failure
// mode is the span of the t samples falling short of span(U u V), and t is
// sized so that happens with probability exp(-Omega(n)).  Once the span is
// right, a comparable pair forces the projected big subspace to be all of
// F2^v (every nonzero quadratic then survives on some sample), while an
// incomparable pair admits the product of the two annihilator forms, which
// vanishes on every sample.
bool run_once(SampleOracle& oracle, const ComparabilityParams& params) {
    const std::size_t n = params.n;

    // Span phase: keep the rank-increasing samples as the basis y_1..y_v.
    EchelonBasis span(n);
    std::vector<GF2Vector> basis_samples;
    GF2Vector x(n);
    const std::size_t t = params.span_samples();
    for (std::size_t i = 0; i < t && span.dim() < n; ++i) {
        oracle.draw_into(x);
        std::size_t before = span.dim();
        span.insert(x);
        if (span.dim() > before)
            basis_samples.push_back(x);
    }
    const std::size_t v = basis_samples.size();
    if (v == 0)
        return true; // both subspaces are {0}

    // Bijection D: v x n with D y_i = e_i.  Row j of D solves Y d = e_j.
    GF2Matrix y(v, n);
    y.row_data = basis_samples;
    std::vector<GF2Vector> rhs;
    rhs.reserve(v);
    for (std::size_t j = 0; j < v; ++j)
        rhs.push_back(GF2Vector::unit(v, j));
    auto solutions = solve_many(y, rhs);
    GF2Matrix d(v, n);
    for (std::size_t j = 0; j < v; ++j)
        d.row_data[j] = std::move(*solutions[j]);

    // Polynomial phase, streaming: comparable iff the evaluation rows of the
    // projected samples reach full rank over the degree-<=2 monomials.
    const std::size_t full = static_cast<std::size_t>(binom_sum(v, 2));
    MonomialLift ml(v, std::min<std::size_t>(2, v));
    EchelonBasis eval(full);
    GF2Vector z(v), row(full);
    const std::size_t r = params.poly_samples();
    for (std::size_t i = 0; i < r; ++i) {
        oracle.draw_into(x);
        mat_vec_into(d, x, z);
        ml.lift_into(z, row);
        eval.insert(row);
        if (eval.dim() == full)
            return true;
    }
    return false;
}

} // namespace

bool test_comparability(SampleOracle& oracle, const ComparabilityParams& params) {
    if (oracle.dim() != params.n)
        throw InvalidParams("oracle dimension does not match params");
    std::size_t k = params.repetitions();
    std::size_t yes = 0, no = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (run_once(oracle, params))
            ++yes;
        else
            ++no;
        // The majority cannot change once one side passes k/2.
        if (yes > k / 2 || no > k / 2)
            break;
    }
    return yes > no;
}

} // namespace f2mix
