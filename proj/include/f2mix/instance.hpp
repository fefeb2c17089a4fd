#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "f2mix/oracle.hpp"
#include "f2mix/rational.hpp"
#include "f2mix/subspace.hpp"

namespace f2mix {

enum class Relation { Incomparable, Nested, Identical, Random };

Relation relation_from_string(const std::string& s);
std::string relation_to_string(Relation r);

// Recipe for a synthetic problem instance.
struct InstanceSpec {
    std::size_t n = 0;
    std::size_t d0 = 0;
    std::size_t d1 = 0;
    Relation relation = Relation::Incomparable;
    Rational w0 = Rational(1, 2);
    std::uint64_t seed = 0;
};

// A concrete instance: the hidden pair plus everything needed to rebuild its
// oracle deterministically.
struct Instance {
    std::size_t n = 0;
    Subspace a0;
    Subspace a1;
    Rational w0 = Rational(1, 2);
    std::uint64_t seed = 0;

    MixtureOracle make_oracle() const;
    MixtureOracle make_oracle(std::uint64_t seed_override) const;
};

// Deterministic given spec.seed.  'incomparable' rejection-samples random
// bases until neither contains the other; 'nested' draws a1 inside a0.
Instance gen_instance(const InstanceSpec& spec);

// JSON wire format: {"n":, "basis_a0":["0101",...], "basis_a1":[...],
// "w0":"0.5", "seed":}.  Bit strings read left to right as coordinates
// 0..n-1.  Non-canonical bases parse with a warning flag.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text, bool* canonicalized = nullptr);

void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path, bool* canonicalized = nullptr);

} // namespace f2mix
