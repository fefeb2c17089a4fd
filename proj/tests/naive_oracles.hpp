#pragma once

// Reference implementations kept deliberately independent of the bit-packed
// library code: plain byte matrices and pointwise enumeration.  Used by the
// unit and acceptance suites as equivalence oracles.

#include <cstdint>
#include <optional>
#include <vector>

#include "f2mix/gf2.hpp"
#include "f2mix/mixture_dist.hpp"
#include "f2mix/subspace.hpp"

namespace naive {

using ByteMatrix = std::vector<std::vector<std::uint8_t>>;

inline ByteMatrix to_bytes(const f2mix::GF2Matrix& m) {
    ByteMatrix b(m.rows, std::vector<std::uint8_t>(m.cols, 0));
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c)
            b[r][c] = m.get(r, c) ? 1 : 0;
    return b;
}

// Textbook boolean Gaussian elimination, one entry at a time.
inline std::size_t rank(ByteMatrix m) {
    if (m.empty())
        return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && !m[pivot][c])
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(m[pivot], m[r]);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && m[i][c])
                for (std::size_t j = 0; j < cols; ++j)
                    m[i][j] ^= m[r][j];
        ++r;
    }
    return r;
}

inline std::size_t rank(const f2mix::GF2Matrix& m) { return rank(to_bytes(m)); }

// Reduced echelon form with rows sorted by pivot; zero rows dropped.
inline ByteMatrix rref(ByteMatrix m) {
    if (m.empty())
        return m;
    std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && !m[pivot][c])
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(m[pivot], m[r]);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && m[i][c])
                for (std::size_t j = 0; j < cols; ++j)
                    m[i][j] ^= m[r][j];
        ++r;
    }
    m.resize(r);
    return m;
}

inline f2mix::Subspace rref_subspace(const ByteMatrix& reduced, std::size_t cols) {
    std::vector<f2mix::GF2Vector> rows;
    for (const auto& r : reduced) {
        f2mix::GF2Vector v(cols);
        for (std::size_t c = 0; c < cols; ++c)
            if (r[c])
                v.set(c, true);
        rows.push_back(std::move(v));
    }
    return f2mix::canonical_basis(rows, cols);
}

// Kernel by trying all free-variable unit assignments on the reduced system.
inline f2mix::Subspace kernel(const f2mix::GF2Matrix& m) {
    ByteMatrix red = rref(to_bytes(m));
    std::size_t cols = m.cols;
    std::vector<int> pivot_of_col(cols, -1);
    for (std::size_t i = 0; i < red.size(); ++i) {
        std::size_t c = 0;
        while (!red[i][c])
            ++c;
        pivot_of_col[c] = static_cast<int>(i);
    }
    std::vector<f2mix::GF2Vector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (pivot_of_col[f] >= 0)
            continue;
        f2mix::GF2Vector v(cols);
        v.set(f, true);
        for (std::size_t c = 0; c < cols; ++c)
            if (pivot_of_col[c] >= 0 && red[static_cast<std::size_t>(pivot_of_col[c])][f])
                v.set(c, true);
        basis.push_back(std::move(v));
    }
    return f2mix::canonical_basis(basis, cols);
}

// Intersection by enumerating the smaller subspace pointwise.
inline f2mix::Subspace intersect(const f2mix::Subspace& a, const f2mix::Subspace& b) {
    const f2mix::Subspace& small = a.dim() <= b.dim() ? a : b;
    const f2mix::Subspace& other = a.dim() <= b.dim() ? b : a;
    std::vector<f2mix::GF2Vector> in_both;
    for (const auto& x : small.elements())
        if (other.contains(x))
            in_both.push_back(x);
    return f2mix::canonical_basis(in_both, a.ambient());
}

// Total variation by summing over every point of F2^n.
inline f2mix::Rational tv_bruteforce(const f2mix::SubspaceMixtureDistribution& d1,
                                     const f2mix::SubspaceMixtureDistribution& d2) {
    std::size_t n = d1.ambient();
    f2mix::Rational total = 0;
    f2mix::GF2Vector x(n);
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << n); ++v) {
        x.clear();
        if (n > 0)
            x.words()[0] = v;
        f2mix::Rational diff = exact_density(d1, x) - exact_density(d2, x);
        if (diff < 0)
            diff = -diff;
        total += diff;
    }
    return total / 2;
}

// Dependent indices straight from the definition: i is dependent iff
// removing v_i does not lower the rank.
inline std::vector<std::size_t> dependent_index_set(std::span<const f2mix::GF2Vector> vecs) {
    std::vector<std::size_t> out;
    if (vecs.empty())
        return out;
    f2mix::GF2Matrix all(vecs.size(), vecs[0].length());
    for (std::size_t i = 0; i < vecs.size(); ++i)
        all.row_data[i] = vecs[i];
    std::size_t full = rank(all);
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        f2mix::GF2Matrix without(vecs.size() - 1, vecs[0].length());
        std::size_t k = 0;
        for (std::size_t j = 0; j < vecs.size(); ++j)
            if (j != i)
                without.row_data[k++] = vecs[j];
        if (rank(without) == full)
            out.push_back(i);
    }
    return out;
}

} // namespace naive
