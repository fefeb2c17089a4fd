#include "f2mix/instance.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "f2mix/errors.hpp"

namespace f2mix {

using nlohmann::json;

Relation relation_from_string(const std::string& s) {
    if (s == "incomparable")
        return Relation::Incomparable;
    if (s == "nested")
        return Relation::Nested;
    if (s == "identical")
        return Relation::Identical;
    if (s == "random")
        return Relation::Random;
    throw ParseError("unknown relation: " + s);
}

std::string relation_to_string(Relation r) {
    switch (r) {
    case Relation::Incomparable:
        return "incomparable";
    case Relation::Nested:
        return "nested";
    case Relation::Identical:
        return "identical";
    case Relation::Random:
        return "random";
    }
    return "unknown";
}

MixtureOracle Instance::make_oracle() const { return make_oracle(seed); }

MixtureOracle Instance::make_oracle(std::uint64_t seed_override) const {
    return MixtureOracle(a0, a1, w0, SplitRng(seed_override).split(0x6f7261636cull));
}

Instance gen_instance(const InstanceSpec& spec) {
    if (spec.d0 > spec.n || spec.d1 > spec.n)
        throw InfeasibleSpec("component dimensions exceed the ambient dimension");
    if (spec.w0 < 0 || spec.w0 > 1)
        throw InfeasibleSpec("w0 must lie in [0,1]");
    SplitRng rng = SplitRng(spec.seed).split(0x67656e65ull);

    Instance inst;
    inst.n = spec.n;
    inst.w0 = spec.w0;
    inst.seed = spec.seed;

    switch (spec.relation) {
    case Relation::Incomparable: {
        if (spec.d0 == 0 || spec.d1 == 0)
            throw InfeasibleSpec("incomparable pairs need both dimensions >= 1");
        if (spec.d0 == spec.n || spec.d1 == spec.n)
            throw InfeasibleSpec("a full-dimensional subspace is comparable to everything");
        for (;;) {
            Subspace a = random_subspace(spec.n, spec.d0, rng);
            Subspace b = random_subspace(spec.n, spec.d1, rng);
            if (incomparable(a, b)) {
                inst.a0 = a;
                inst.a1 = b;
                break;
            }
        }
        break;
    }
    case Relation::Nested:
        inst.a0 = random_subspace(spec.n, spec.d0, rng);
        inst.a1 = random_subspace_of(inst.a0, spec.d1, rng);
        break;
    case Relation::Identical:
        if (spec.d0 != spec.d1)
            throw InfeasibleSpec("identical instances need d0 == d1");
        inst.a0 = random_subspace(spec.n, spec.d0, rng);
        inst.a1 = inst.a0;
        break;
    case Relation::Random:
        inst.a0 = random_subspace(spec.n, spec.d0, rng);
        inst.a1 = random_subspace(spec.n, spec.d1, rng);
        break;
    }
    return inst;
}

namespace {

json subspace_to_json(const Subspace& s) {
    json rows = json::array();
    for (const auto& r : s.basis().row_data)
        rows.push_back(r.to_bits());
    return rows;
}

Subspace subspace_from_json(const json& rows, std::size_t n, bool* canonicalized) {
    std::vector<GF2Vector> vec;
    for (const auto& r : rows) {
        GF2Vector v = GF2Vector::from_bits(r.get<std::string>());
        if (v.length() != n)
            throw ParseError("basis row length does not match n");
        vec.push_back(std::move(v));
    }
    // Accept any spanning set; flag when it was not already canonical.
    Subspace s = canonical_basis(vec, n);
    bool was_canonical = s.dim() == vec.size();
    for (std::size_t i = 0; was_canonical && i < vec.size(); ++i)
        was_canonical = vec[i] == s.basis().row_data[i];
    if (!was_canonical && canonicalized)
        *canonicalized = true;
    return s;
}

} // namespace

std::string instance_to_json(const Instance& inst) {
    json j;
    j["n"] = inst.n;
    j["basis_a0"] = subspace_to_json(inst.a0);
    j["basis_a1"] = subspace_to_json(inst.a1);
    j["w0"] = format_decimal(inst.w0, 6);
    j["seed"] = inst.seed;
    return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text, bool* canonicalized) {
    if (canonicalized)
        *canonicalized = false;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("instance JSON: ") + e.what());
    }
    Instance inst;
    try {
        inst.n = j.at("n").get<std::size_t>();
        inst.a0 = subspace_from_json(j.at("basis_a0"), inst.n, canonicalized);
        inst.a1 = subspace_from_json(j.at("basis_a1"), inst.n, canonicalized);
        inst.w0 = parse_decimal(j.at("w0").get<std::string>());
        inst.seed = j.at("seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("instance JSON: ") + e.what());
    }
    if (inst.w0 < 0 || inst.w0 > 1)
        throw ParseError("instance w0 must lie in [0,1]");
    return inst;
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot open for writing: " + path);
    out << instance_to_json(inst);
}

Instance load_instance(const std::string& path, bool* canonicalized) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return instance_from_json(ss.str(), canonicalized);
}

} // namespace f2mix
