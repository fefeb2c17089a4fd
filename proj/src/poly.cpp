#include "f2mix/poly.hpp"

#include <algorithm>
#include <limits>

#include "f2mix/errors.hpp"

namespace f2mix {

std::uint64_t binom(std::size_t n, std::size_t k) {
    if (k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        // r * (n-k+i) / i stays integral at every step.
        std::uint64_t num = n - k + i;
        if (r > std::numeric_limits<std::uint64_t>::max() / num)
            throw InvalidParams("binomial coefficient overflows 64 bits");
        r = r * num / i;
    }
    return r;
}

std::uint64_t binom_sum(std::size_t n, std::size_t ell) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j <= ell && j <= n; ++j)
        s += binom(n, j);
    return s;
}

MonomialLift::MonomialLift(std::size_t n, std::size_t ell) : n_(n), ell_(ell) {
    if (ell > n)
        throw InvalidParams("lift degree exceeds variable count");
    degree_offset_.resize(ell + 2);
    std::uint64_t off = 0;
    for (std::size_t d = 0; d <= ell; ++d) {
        degree_offset_[d] = static_cast<std::size_t>(off);
        off += binom(n, d);
    }
    degree_offset_[ell + 1] = static_cast<std::size_t>(off);
    out_len_ = static_cast<std::size_t>(off);
}

std::size_t MonomialLift::monomial_index(std::span<const std::size_t> vars) const {
    std::size_t d = vars.size();
    if (d > ell_)
        throw InvalidParams("monomial degree exceeds lift degree");
    // Lexicographic rank of the combination within degree d.
    std::uint64_t r = 0;
    std::size_t prev = 0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t c = prev; c < vars[i]; ++c)
            r += binom(n_ - c - 1, d - i - 1);
        prev = vars[i] + 1;
    }
    return degree_offset_[d] + static_cast<std::size_t>(r);
}

void MonomialLift::lift_into(const GF2Vector& x, GF2Vector& out) const {
    if (x.length() != n_)
        throw InvalidParams("vector length does not match lift arity");
    if (out.length() != out_len_)
        out = GF2Vector(out_len_);
    else
        out.clear();
    out.set(0, true); // constant monomial

    // Monomials are multilinear, so m(x) = 1 exactly when every variable of m
    // is a set bit of x: enumerate subsets of the support up to size ell.
    std::vector<std::size_t> support;
    support.reserve(x.popcount());
    const auto ws = x.words();
    for (std::size_t wi = 0; wi < ws.size(); ++wi) {
        Word w = ws[wi];
        while (w) {
            support.push_back(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
            w &= w - 1;
        }
    }

    std::vector<std::size_t> combo;
    combo.reserve(ell_);
    // Depth-first over increasing support positions.
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (!combo.empty())
            out.set(monomial_index(combo), true);
        if (combo.size() == ell_)
            return;
        for (std::size_t i = start; i < support.size(); ++i) {
            combo.push_back(support[i]);
            self(self, i + 1);
            combo.pop_back();
        }
    };
    rec(rec, 0);
}

GF2Vector MonomialLift::lift(const GF2Vector& x) const {
    GF2Vector out(out_len_);
    lift_into(x, out);
    return out;
}

GF2Vector lift(const GF2Vector& x, std::size_t ell) {
    return MonomialLift(x.length(), ell).lift(x);
}

QuadraticPoly::QuadraticPoly(std::size_t n, GF2Vector coeffs) : n_(n), coeffs_(std::move(coeffs)) {
    if (coeffs_.length() != binom_sum(n, 2))
        throw InvalidParams("coefficient vector has the wrong length");
}

QuadraticPoly QuadraticPoly::zero(std::size_t n) {
    return QuadraticPoly(n, GF2Vector(static_cast<std::size_t>(binom_sum(n, 2))));
}

QuadraticPoly QuadraticPoly::constant_one(std::size_t n) {
    GF2Vector c(static_cast<std::size_t>(binom_sum(n, 2)));
    c.set(0, true);
    return QuadraticPoly(n, c);
}

QuadraticPoly QuadraticPoly::product_of_linear(const GF2Vector& bu, const GF2Vector& bv) {
    if (bu.length() != bv.length())
        throw InvalidParams("linear forms have different arities");
    std::size_t n = bu.length();
    MonomialLift ml(n, std::min<std::size_t>(2, n));
    GF2Vector c(ml.output_length());
    // x_i x_j expands across the two supports; x_i x_i = x_i over F2.
    for (std::size_t i = 0; i < n; ++i) {
        if (!bu.get(i))
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (!bv.get(j))
                continue;
            if (i == j) {
                std::size_t v[] = {i};
                c.flip(ml.monomial_index(v));
            } else {
                std::size_t v[] = {std::min(i, j), std::max(i, j)};
                c.flip(ml.monomial_index(v));
            }
        }
    }
    return QuadraticPoly(n, std::move(c));
}

QuadraticPoly QuadraticPoly::random(std::size_t n, SplitRng& rng) {
    return QuadraticPoly(n, random_vector(static_cast<std::size_t>(binom_sum(n, 2)), rng));
}

bool QuadraticPoly::eval(const GF2Vector& x) const {
    if (x.length() != n_)
        throw InvalidParams("point length does not match polynomial arity");
    return coeffs_.dot(lift(x, std::min<std::size_t>(2, n_)));
}

std::size_t count_vanishing_quadratics_log2(std::span<const GF2Vector> points, std::size_t n) {
    std::size_t dim = static_cast<std::size_t>(binom_sum(n, 2));
    MonomialLift ml(n, std::min<std::size_t>(2, n));
    EchelonBasis e(dim);
    GF2Vector row(dim);
    for (const auto& z : points) {
        if (z.length() != n)
            throw InvalidParams("point length does not match arity");
        ml.lift_into(z, row);
        e.insert(row);
        if (e.dim() == dim)
            break; // only the zero polynomial survives
    }
    return dim - e.dim();
}

} // namespace f2mix
