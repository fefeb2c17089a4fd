#include "f2mix/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "f2mix/comparability.hpp"
#include "f2mix/errors.hpp"
#include "f2mix/hypothesis.hpp"
#include "f2mix/poly.hpp"

namespace f2mix {

std::string regime_name(Regime r) {
    switch (r) {
    case Regime::Incomparable:
        return "incomparable";
    case Regime::LargeGap:
        return "large-gap";
    case Regime::DegenerateLpnHard:
        return "degenerate-lpn-hard";
    case Regime::Identical:
        return "identical";
    }
    return "unknown";
}

GF2Matrix find_good_projector(SampleOracle& oracle, std::size_t n, double wmin, SplitRng& rng,
                              const ProjectorOptions& opts) {
    if (oracle.dim() != n)
        throw InvalidParams("oracle dimension does not match n");
    if (opts.base_dim < 2)
        throw InvalidParams("base dimension must be at least 2");
    GF2Matrix m = GF2Matrix::identity(n);
    if (n <= opts.base_dim)
        return m;

    const double per_test_delta = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    const std::size_t retries = opts.retries.value_or(
        static_cast<std::size_t>(std::ceil(200.0 * std::log(static_cast<double>(n) + 2.0))));

    for (std::size_t i = n; i > opts.base_dim; --i) {
        bool accepted = false;
        for (std::size_t attempt = 0; attempt < retries; ++attempt) {
            GF2Matrix t = random_matrix(i - 1, i, rng);
            GF2Matrix candidate = mat_mul(t, m);
            ProjectedOracle projected(oracle, candidate);
            ComparabilityParams params(i - 1, wmin, per_test_delta);
            if (!test_comparability(projected, params)) {
                m = std::move(candidate);
                accepted = true;
                break;
            }
        }
        if (!accepted)
            throw ProjectionStalled("no incomparability-preserving projection found at level " +
                                    std::to_string(i) + "; is the input pair comparable?");
    }
    return m;
}

std::pair<Subspace, Subspace> recover_base_case(SampleOracle& oracle, const Rational& wmin,
                                                double delta) {
    const std::size_t v = oracle.dim();
    if (v == 0 || v > 20)
        throw InvalidParams("base case supports ambient dimensions 1..20");
    const double wd = to_double(wmin);
    if (!(wd > 0) || wd > 0.5)
        throw InvalidParams("wmin must lie in (0, 1/2]");
    if (!(delta > 0) || delta >= 1)
        throw InvalidParams("delta must lie in (0, 1)");

    // Coupon collector: every point of the union has mass >= wmin 2^-v, so
    // this budget sees the whole support with probability 1 - delta/2.
    const std::size_t q = static_cast<std::size_t>(
        std::ceil(std::ldexp(2.0, static_cast<int>(v)) / wd *
                  (static_cast<double>(v) * std::log(2.0) + std::log(4.0 / delta))));

    std::vector<std::uint8_t> in_support(std::size_t(1) << v, 0);
    std::vector<std::uint64_t> values;
    GF2Vector x(v);
    for (std::size_t i = 0; i < q; ++i) {
        oracle.draw_into(x);
        std::uint64_t key = x.low_word();
        if (!in_support[key]) {
            in_support[key] = 1;
            values.push_back(key);
        }
    }
    std::sort(values.begin(), values.end());

    auto unpack = [v](std::uint64_t key) {
        GF2Vector w(v);
        if (v > 0)
            w.words()[0] = key;
        return w;
    };

    // Union structure: for x in exactly one component, {y in S : x+y in S} is
    // that component; for x in both it is all of S, which is not closed.
    std::vector<Subspace> candidates;
    std::vector<GF2Vector> member_buf;
    for (std::uint64_t xv : values) {
        member_buf.clear();
        std::size_t count = 0;
        for (std::uint64_t yv : values) {
            if (in_support[xv ^ yv]) {
                ++count;
                member_buf.push_back(unpack(yv));
            }
        }
        Subspace s = canonical_basis(member_buf, v);
        if ((std::uint64_t(1) << s.dim()) != count)
            continue; // not closed under addition
        if (std::find(candidates.begin(), candidates.end(), s) == candidates.end())
            candidates.push_back(std::move(s));
    }

    // Keep only maximal candidates.
    std::vector<Subspace> maximal;
    for (const auto& s : candidates) {
        bool dominated = false;
        for (const auto& t : candidates)
            if (!(t == s) && is_subset(s, t))
                dominated = true;
        if (!dominated)
            maximal.push_back(s);
    }

    // Pairs whose union covers the observed support exactly.
    const std::uint64_t support_size = values.size();
    std::vector<std::pair<Subspace, Subspace>> pairs;
    for (std::size_t i = 0; i < maximal.size(); ++i) {
        for (std::size_t j = i + 1; j < maximal.size(); ++j) {
            std::size_t dcap = intersect(maximal[i], maximal[j]).dim();
            std::uint64_t union_size = (std::uint64_t(1) << maximal[i].dim()) +
                                       (std::uint64_t(1) << maximal[j].dim()) -
                                       (std::uint64_t(1) << dcap);
            if (union_size == support_size)
                pairs.emplace_back(maximal[i], maximal[j]);
        }
    }
    if (pairs.empty())
        throw BaseCaseFailed("no pair of recovered subspaces covers the sample support");

    std::size_t winner = 0;
    if (pairs.size() > 1) {
        HypothesisList h{pairs, wmin};
        winner = choose_right_hypothesis(oracle, h, delta / 2);
    }
    auto [a, b] = pairs[winner];
    if (b < a)
        std::swap(a, b);
    return {a, b};
}

std::pair<Subspace, Subspace> incomparable_subspace_recovery(SampleOracle& oracle, std::size_t n,
                                                             const Rational& wmin, double delta,
                                                             SplitRng& rng,
                                                             const ProjectorOptions& opts) {
    const double wd = to_double(wmin);
    GF2Matrix m = find_good_projector(oracle, n, wd, rng, opts);
    ProjectedOracle projected(oracle, m);
    auto [u, v] = recover_base_case(projected, wmin, delta / 2);

    // Completion: fresh samples whose projections avoid the other projected
    // component are uniform on a component minus a proper subspace, and a
    // linear number of those spans the component.
    const std::size_t t =
        static_cast<std::size_t>(std::ceil(100.0 * static_cast<double>(n) / wd));
    EchelonBasis side_u(n), side_v(n);
    GF2Vector x(n), z(m.rows);
    for (std::size_t i = 0; i < t; ++i) {
        oracle.draw_into(x);
        mat_vec_into(m, x, z);
        if (!v.contains(z))
            side_u.insert(x);
        if (!u.contains(z))
            side_v.insert(x);
    }
    return {Subspace::from_rref(side_u.to_rref()), Subspace::from_rref(side_v.to_rref())};
}

std::vector<std::size_t> dependent_index_set(std::span<const GF2Vector> vectors) {
    if (vectors.empty())
        return {};
    const std::size_t m = vectors.size();
    const std::size_t d = vectors[0].length();
    // Kernel of the matrix whose columns are the vectors: a coefficient
    // vector c lies in it iff sum_i c_i v_i = 0.
    GF2Matrix cols(d, m);
    for (std::size_t i = 0; i < m; ++i) {
        if (vectors[i].length() != d)
            throw InvalidParams("vectors have mixed lengths");
        const auto ws = vectors[i].words();
        for (std::size_t wi = 0; wi < ws.size(); ++wi) {
            Word w = ws[wi];
            while (w) {
                std::size_t r = wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
                cols.set(r, i, true);
                w &= w - 1;
            }
        }
    }
    Subspace ker = kernel(cols);
    std::vector<bool> dependent(m, false);
    for (const auto& row : ker.basis().row_data) {
        const auto ws = row.words();
        for (std::size_t wi = 0; wi < ws.size(); ++wi) {
            Word w = ws[wi];
            while (w) {
                dependent[wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w))] = true;
                w &= w - 1;
            }
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m; ++i)
        if (dependent[i])
            out.push_back(i);
    return out;
}

LargeDiffParams LargeDiffParams::make(std::size_t d0, std::size_t d1, const Rational& wmin) {
    if (d1 > d0)
        throw InvalidParams("d1 must not exceed d0");
    if (!(wmin > 0) || wmin > Rational(1, 2))
        throw InvalidParams("wmin must lie in (0, 1/2]");
    LargeDiffParams p;
    p.d0 = d0;
    p.d1 = d1;
    p.wmin = wmin;

    // Smallest degree with rank(lift(A1)) at most a wmin/20 fraction of
    // rank(lift(A0)); degree >= 2 keeps spurious dependencies among distinct
    // points at dual-code distance >= 8.
    bool found = false;
    for (std::size_t ell = 2; ell <= d0; ++ell) {
        Rational ratio(BigInt(binom_sum(d1, ell)), BigInt(binom_sum(d0, ell)));
        if (ratio * 20 <= wmin) {
            p.ell = ell;
            found = true;
            break;
        }
    }
    if (!found)
        throw InvalidParams("no usable lift degree for these dimensions");

    // Enough samples to cover the small component's lifted rank and to span
    // the large one, but few enough that uniform draws from the large
    // component rarely collide.
    const double wd = to_double(wmin);
    const double need = static_cast<double>(
        std::max<std::uint64_t>(binom_sum(d1, p.ell), static_cast<std::uint64_t>(d0)) + 12);
    p.m = std::min<std::size_t>(static_cast<std::size_t>(binom_sum(d0, p.ell)),
                                static_cast<std::size_t>(std::ceil(need / wd)));
    return p;
}

bool LargeDiffParams::admissible(std::size_t d0, std::size_t d1) {
    if (d0 == 0)
        return false;
    double alpha = static_cast<double>(d1) / static_cast<double>(d0);
    double bound =
        1.0 - std::log(static_cast<double>(d0)) / std::sqrt(static_cast<double>(d0));
    return alpha < bound;
}

std::pair<Subspace, Subspace> large_diff_recovery(SampleOracle& oracle,
                                                  const LargeDiffParams& params) {
    if (oracle.dim() != params.d0)
        throw InvalidParams("large-diff recovery expects the reduced ambient d0");

    std::vector<GF2Vector> samples(params.m, GF2Vector(params.d0));
    for (auto& s : samples)
        oracle.draw_into(s);

    MonomialLift ml(params.d0, params.ell);
    std::vector<GF2Vector> lifted(params.m, GF2Vector(ml.output_length()));
    for (std::size_t i = 0; i < params.m; ++i)
        ml.lift_into(samples[i], lifted[i]);

    std::vector<std::size_t> dep = dependent_index_set(lifted);

    std::vector<GF2Vector> small_rows;
    for (std::size_t i : dep)
        small_rows.push_back(samples[i]);
    Subspace small = canonical_basis(small_rows, params.d0);

    EchelonBasis big(params.d0);
    for (const auto& s : samples)
        if (!small.contains(s))
            big.insert(s);
    Subspace large = Subspace::from_rref(big.to_rref());

    if (small.dim() != params.d1 || large.dim() != params.d0)
        throw DimensionMismatch("recovered dimensions (" + std::to_string(small.dim()) + ", " +
                                std::to_string(large.dim()) + ") do not match hypothesis (" +
                                std::to_string(params.d1) + ", " + std::to_string(params.d0) +
                                ")");
    return {small, large};
}

namespace {

// Bijection D from span(basis rows) to F2^v with D y_i = e_i.
GF2Matrix reduction_map(const std::vector<GF2Vector>& basis, std::size_t n) {
    const std::size_t v = basis.size();
    GF2Matrix y(v, n);
    y.row_data = basis;
    std::vector<GF2Vector> rhs;
    rhs.reserve(v);
    for (std::size_t j = 0; j < v; ++j)
        rhs.push_back(GF2Vector::unit(v, j));
    auto solutions = solve_many(y, rhs);
    GF2Matrix d(v, n);
    for (std::size_t j = 0; j < v; ++j)
        d.row_data[j] = std::move(*solutions[j]);
    return d;
}

// Distinguishes "uniform on the span" from a comparable mixture hiding a
// proper subspace: the latter inflates the pairwise collision rate by at
// least a factor 1 + wmin^2, which a quadratic-in-2^(v/2) number of samples
// detects.  Used only when hypothesis selection prefers the identical pair.
bool looks_uniform(SampleOracle& oracle, std::size_t v, double wmin) {
    if (v == 0)
        return true;
    const double target = std::pow(2.0, static_cast<double>(v + 7) / 2.0) / (wmin * wmin);
    const std::size_t draws = static_cast<std::size_t>(std::min(target, 4.0e6));
    std::unordered_map<std::uint64_t, std::uint64_t> hist;
    hist.reserve(draws);
    GF2Vector x(v);
    double collisions = 0;
    for (std::size_t i = 0; i < draws; ++i) {
        oracle.draw_into(x);
        collisions += static_cast<double>(hist[x.low_word()]++);
    }
    const double expected = static_cast<double>(draws) * static_cast<double>(draws - 1) / 2.0 *
                            std::ldexp(1.0, -static_cast<int>(v));
    return collisions <= expected * (1.0 + wmin * wmin / 2.0);
}

bool same_pair(const std::pair<Subspace, Subspace>& a, const std::pair<Subspace, Subspace>& b) {
    return (a.first == b.first && a.second == b.second) ||
           (a.first == b.second && a.second == b.first);
}

} // namespace

RecoveryResult recover_driver(SampleOracle& oracle, std::size_t n, const Rational& wmin,
                              double delta, SplitRng rng) {
    if (oracle.dim() != n)
        throw InvalidParams("oracle dimension does not match n");
    if (!(wmin > 0) || wmin > Rational(1, 2))
        throw InvalidParams("wmin must lie in (0, 1/2]");
    if (!(delta > 0) || delta >= 1)
        throw InvalidParams("delta must lie in (0, 1)");
    const double wd = to_double(wmin);

    CountingOracle counted(oracle);
    RecoveryResult result;

    // Ambient reduction: the span of enough samples is span(A0 u A1); all
    // further work happens in those coordinates.
    const std::size_t t0 =
        static_cast<std::size_t>(std::ceil(8.0 * static_cast<double>(n) / wd)) +
        static_cast<std::size_t>(std::ceil(16.0 * static_cast<double>(n) / (wd * wd)));
    EchelonBasis span(n);
    std::vector<GF2Vector> basis_samples;
    {
        GF2Vector x(n);
        for (std::size_t i = 0; i < t0 && span.dim() < n; ++i) {
            counted.draw_into(x);
            std::size_t before = span.dim();
            span.insert(x);
            if (span.dim() > before)
                basis_samples.push_back(x);
        }
    }
    const std::size_t v = basis_samples.size();
    if (v == 0) {
        result.a0_hat = Subspace::zero(n);
        result.a1_hat = Subspace::zero(n);
        result.regime = Regime::Identical;
        result.w0_hat = result.w1_hat = 0.5;
        result.weights_identifiable = false;
        result.samples_used = counted.count();
        return result;
    }

    GF2Matrix down = reduction_map(basis_samples, n); // v x n
    GF2Matrix up(n, v);                               // e_i -> y_i
    {
        GF2Matrix y(v, n);
        y.row_data = basis_samples;
        up = transpose(y);
    }
    ProjectedOracle reduced(counted, down);

    ComparabilityParams test_params(v, wd, delta / 4);
    const bool comparable = test_comparability(reduced, test_params);

    Subspace a0_red = Subspace::zero(v);
    Subspace a1_red = Subspace::zero(v);
    bool lpn_hard = false, identical = false;

    if (!comparable) {
        SplitRng sub = rng.split(1);
        auto [p, q] = incomparable_subspace_recovery(reduced, v, wmin, delta / 4, sub);
        a0_red = p;
        a1_red = q;
        result.regime = Regime::Incomparable;
    } else {
        // Comparable: the span itself is the larger subspace.  Enumerate the
        // admissible smaller dimensions, run the lift-based recovery per
        // guess, and let hypothesis selection pick among the survivors plus
        // the identical pair.
        const Subspace whole = Subspace::full(v);
        std::vector<std::pair<Subspace, Subspace>> items;
        for (std::size_t d1 = v; d1-- > 0;) {
            if (!LargeDiffParams::admissible(v, d1))
                continue;
            try {
                LargeDiffParams p = LargeDiffParams::make(v, d1, wmin);
                auto [small, large] = large_diff_recovery(reduced, p);
                std::pair<Subspace, Subspace> cand{large, small};
                bool dup = false;
                for (const auto& it : items)
                    if (same_pair(it, cand))
                        dup = true;
                if (!dup)
                    items.push_back(std::move(cand));
            } catch (const DimensionMismatch&) {
            } catch (const InvalidParams&) {
            }
        }
        if (v <= 4) {
            // Small spans are cheap to brute force outright.
            for (const auto& s : all_subspaces(v)) {
                std::pair<Subspace, Subspace> cand{whole, s};
                bool dup = false;
                for (const auto& it : items)
                    if (same_pair(it, cand))
                        dup = true;
                if (!dup)
                    items.push_back(std::move(cand));
            }
        } else {
            items.emplace_back(whole, whole);
        }

        HypothesisList h{items, wmin};
        std::size_t winner = choose_right_hypothesis(reduced, h, delta / 4);
        const auto& best = items[winner];
        if (best.first == best.second) {
            if (looks_uniform(reduced, v, wd)) {
                identical = true;
                a0_red = a1_red = best.first;
                result.regime = Regime::Identical;
            } else {
                // Comparable, demonstrably not identical, yet no admissible
                // dimension guess explains the data: the hard regime.
                lpn_hard = true;
                a0_red = whole;
                result.regime = Regime::DegenerateLpnHard;
            }
        } else {
            a0_red = best.first;
            a1_red = best.second;
            result.regime = Regime::LargeGap;
        }
    }

    result.a0_hat = apply(up, a0_red);
    result.a1_hat = lpn_hard ? Subspace::zero(n) : apply(up, a1_red);

    if (identical) {
        result.w0_hat = result.w1_hat = 0.5;
        result.weights_identifiable = false;
    } else if (lpn_hard) {
        result.w0_hat = 1.0;
        result.w1_hat = 0.0;
        result.weights_identifiable = false;
    } else {
        // eps = 0.0125 gives |w - w_hat| <= 0.025 with room to spare.
        const std::size_t nw = 640000;
        std::size_t in_diff = 0;
        bool use_a0_side = !is_subset(result.a0_hat, result.a1_hat);
        const Subspace& big = use_a0_side ? result.a0_hat : result.a1_hat;
        const Subspace& other = use_a0_side ? result.a1_hat : result.a0_hat;
        GF2Vector x(n);
        for (std::size_t i = 0; i < nw; ++i) {
            counted.draw_into(x);
            if (big.contains(x) && !other.contains(x))
                ++in_diff;
        }
        std::size_t dcap = intersect(big, other).dim();
        double frac = 1.0 - std::ldexp(1.0, -static_cast<int>(big.dim() - dcap));
        double w_big = frac > 0 ? static_cast<double>(in_diff) / nw / frac : 0.0;
        w_big = std::clamp(w_big, 0.0, 1.0);
        result.w0_hat = use_a0_side ? w_big : 1.0 - w_big;
        result.w1_hat = 1.0 - result.w0_hat;
    }

    // Order by descending dimension, ties by canonical basis order.
    if (result.a1_hat.dim() > result.a0_hat.dim() ||
        (result.a1_hat.dim() == result.a0_hat.dim() && result.a1_hat < result.a0_hat)) {
        std::swap(result.a0_hat, result.a1_hat);
        std::swap(result.w0_hat, result.w1_hat);
    }
    result.samples_used = counted.count();
    return result;
}

} // namespace f2mix
