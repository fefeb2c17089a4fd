#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "f2mix/gf2.hpp"
#include "f2mix/rng.hpp"

namespace f2mix {

// C(n, k), exact in 64 bits for the scales used here (guarded).
std::uint64_t binom(std::size_t n, std::size_t k);
// C(n, <=ell) = sum_{j<=ell} C(n, j).
std::uint64_t binom_sum(std::size_t n, std::size_t ell);

// The multilinear monomial map x -> (m(x))_{deg m <= ell}.  Coordinate order
// is fixed globally: the constant monomial first, then degree 1 in variable
// order, then each higher degree with variable index sets in lexicographic
// order.  Everything downstream (quadratic coefficients, evaluation matrices,
// lifted vectors) shares this order.
class MonomialLift {
  public:
    MonomialLift(std::size_t n, std::size_t ell);

    std::size_t n() const { return n_; }
    std::size_t degree() const { return ell_; }
    std::size_t output_length() const { return out_len_; }

    // Index of the monomial over the given strictly increasing variable set.
    std::size_t monomial_index(std::span<const std::size_t> vars) const;

    void lift_into(const GF2Vector& x, GF2Vector& out) const;
    GF2Vector lift(const GF2Vector& x) const;

  private:
    std::size_t n_, ell_, out_len_;
    std::vector<std::size_t> degree_offset_; // first index of each degree
};

// Convenience wrapper for one-off lifts.
GF2Vector lift(const GF2Vector& x, std::size_t ell);

// A polynomial of degree at most 2 over F2^n, stored as its coefficient
// vector in the shared monomial order; evaluation is one masked popcount
// against the degree-2 lift of the point.
class QuadraticPoly {
  public:
    QuadraticPoly(std::size_t n, GF2Vector coeffs);

    static QuadraticPoly zero(std::size_t n);
    static QuadraticPoly constant_one(std::size_t n);
    // <bu, x> * <bv, x>, expanded into monomial coefficients.
    static QuadraticPoly product_of_linear(const GF2Vector& bu, const GF2Vector& bv);
    static QuadraticPoly random(std::size_t n, SplitRng& rng);

    std::size_t n() const { return n_; }
    const GF2Vector& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.is_zero(); }

    bool eval(const GF2Vector& x) const;

    friend bool operator==(const QuadraticPoly& a, const QuadraticPoly& b) = default;

  private:
    std::size_t n_;
    GF2Vector coeffs_; // length binom_sum(n, 2)
};

// log2 of |{p in RM(n,2): p vanishes on every point}|, i.e.
// binom_sum(n,2) - rank of the evaluation matrix whose row for z is the
// degree-2 lift of z.
std::size_t count_vanishing_quadratics_log2(std::span<const GF2Vector> points, std::size_t n);

} // namespace f2mix
