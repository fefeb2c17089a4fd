#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "f2mix/gf2.hpp"
#include "f2mix/rng.hpp"

namespace f2mix {

// A linear subspace of F2^n held as its reduced row-echelon basis with
// strictly increasing pivot columns.  That form is unique, so two Subspace
// values describe the same set of vectors iff they compare bitwise equal.
// The zero subspace has an empty basis.
class Subspace {
  public:
    Subspace() = default;

    static Subspace zero(std::size_t ambient) { return Subspace(ambient, GF2Matrix(0, ambient)); }
    static Subspace full(std::size_t ambient) {
        return Subspace(ambient, GF2Matrix::identity(ambient));
    }
    static Subspace span_of(std::span<const GF2Vector> vectors, std::size_t ambient);

    // Accepts an already-reduced basis; throws if it is not canonical.
    static Subspace from_rref(GF2Matrix basis);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.rows; }
    const GF2Matrix& basis() const { return basis_; }

    bool contains(const GF2Vector& v) const;

    bool is_zero() const { return dim() == 0; }

    // Exactly uniform over the subspace: a uniform coefficient for each basis
    // row.  The zero subspace always yields the zero vector.
    GF2Vector sample(SplitRng& rng) const;
    void sample_into(SplitRng& rng, GF2Vector& out) const;

    // All 2^dim elements; guarded against large dimensions.
    std::vector<GF2Vector> elements() const;

    friend bool operator==(const Subspace& a, const Subspace& b) = default;
    // Total order: by dim, then lexicographic on basis rows.  Used only for
    // deterministic tie-breaking.
    friend bool operator<(const Subspace& a, const Subspace& b);

  private:
    Subspace(std::size_t ambient, GF2Matrix basis) : ambient_(ambient), basis_(std::move(basis)) {}

    std::size_t ambient_ = 0;
    GF2Matrix basis_; // rows = dim, cols = ambient, RREF
};

// Span of arbitrary vectors, canonicalized.
Subspace canonical_basis(std::span<const GF2Vector> vectors, std::size_t ambient);

// {x : m x = 0}, dimension cols - rank(m).
Subspace kernel(const GF2Matrix& m);

bool is_subset(const Subspace& a, const Subspace& b);
bool incomparable(const Subspace& a, const Subspace& b);

// Zassenhaus: one elimination yields span(a u b) and a n b.
std::pair<Subspace, Subspace> sum_and_intersect(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);

// Image {M x : x in s}.
Subspace apply(const GF2Matrix& m, const Subspace& s);

// Uniformly random dim-d subspace of F2^n (rejection on basis rank).
Subspace random_subspace(std::size_t n, std::size_t d, SplitRng& rng);
// Uniformly random dim-d subspace of the given space.
Subspace random_subspace_of(const Subspace& space, std::size_t d, SplitRng& rng);

// Every subspace of F2^n, enumerated via RREF shapes.  Small n only.
std::vector<Subspace> all_subspaces(std::size_t n);

} // namespace f2mix
