#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "f2mix/gf2.hpp"
#include "f2mix/rational.hpp"
#include "f2mix/rng.hpp"
#include "f2mix/subspace.hpp"

namespace f2mix {

// A source of i.i.d. samples in F2^dim.  Oracles hold mutable generator
// state, so each instance belongs to exactly one consumer; independent
// instances may be driven from different threads freely.
class SampleOracle {
  public:
    virtual ~SampleOracle() = default;
    virtual std::size_t dim() const = 0;
    virtual void draw_into(GF2Vector& out) = 0;

    GF2Vector draw() {
        GF2Vector v(dim());
        draw_into(v);
        return v;
    }
};

// The two-subspace mixture: with probability w0 a uniform element of a0,
// otherwise a uniform element of a1.  The component coin uses a 64-bit
// threshold, so the realized w0 is exact to within 2^-64.
class MixtureOracle final : public SampleOracle {
  public:
    MixtureOracle(Subspace a0, Subspace a1, Rational w0, SplitRng rng);

    std::size_t dim() const override { return a0_.ambient(); }
    void draw_into(GF2Vector& out) override;

    const Subspace& a0() const { return a0_; }
    const Subspace& a1() const { return a1_; }
    const Rational& w0() const { return w0_; }
    Rational w1() const { return 1 - w0_; }

  private:
    Subspace a0_, a1_;
    Rational w0_;
    std::uint64_t w0_threshold_;
    SplitRng rng_;
};

// Samples x from the inner oracle and emits P x; equivalent to the mixture
// oracle of the projected subspaces with unchanged weights.
class ProjectedOracle final : public SampleOracle {
  public:
    ProjectedOracle(SampleOracle& inner, GF2Matrix projector);

    std::size_t dim() const override { return projector_.rows; }
    void draw_into(GF2Vector& out) override;

  private:
    SampleOracle& inner_;
    GF2Matrix projector_;
    GF2Vector buf_;
};

// Pass-through wrapper that counts draws.
class CountingOracle final : public SampleOracle {
  public:
    explicit CountingOracle(SampleOracle& inner) : inner_(inner) {}
    std::size_t dim() const override { return inner_.dim(); }
    void draw_into(GF2Vector& out) override {
        ++count_;
        inner_.draw_into(out);
    }
    std::uint64_t count() const { return count_; }

  private:
    SampleOracle& inner_;
    std::uint64_t count_ = 0;
};

// Pass-through wrapper that throws InsufficientSamples past a fixed budget.
class BudgetedOracle final : public SampleOracle {
  public:
    BudgetedOracle(SampleOracle& inner, std::uint64_t budget) : inner_(inner), budget_(budget) {}
    std::size_t dim() const override { return inner_.dim(); }
    void draw_into(GF2Vector& out) override;

  private:
    SampleOracle& inner_;
    std::uint64_t budget_;
    std::uint64_t used_ = 0;
};

// Weight estimation once the subspaces are known: the mass a mixture puts in
// a0 \ a1 identifies w0 because P[x in a0\a1] = w0 |a0\a1| / |a0|.  When
// a0 is inside a1 the roles flip and the mass in a1 \ a0 identifies w1.
// Estimates are clamped to [0,1].  Throws Unidentifiable when a0 == a1.
std::pair<double, double> estimate_weights(std::span<const GF2Vector> samples, const Subspace& a0,
                                           const Subspace& a1);

} // namespace f2mix
