#include "f2mix/subspace.hpp"

#include <stdexcept>

#include "f2mix/errors.hpp"

namespace f2mix {

Subspace Subspace::span_of(std::span<const GF2Vector> vectors, std::size_t ambient) {
    return canonical_basis(vectors, ambient);
}

Subspace Subspace::from_rref(GF2Matrix basis) {
    Subspace s(basis.cols, std::move(basis));
    // Validate: rows nonzero, pivots strictly increasing, pivot columns clear
    // elsewhere.
    int last = -1;
    for (std::size_t i = 0; i < s.basis_.rows; ++i) {
        int p = s.basis_.row_data[i].lowest_set_bit();
        if (p < 0 || p <= last)
            throw InvalidParams("basis is not in reduced echelon form");
        last = p;
        for (std::size_t j = 0; j < s.basis_.rows; ++j)
            if (j != i && s.basis_.row_data[j].get(static_cast<std::size_t>(p)))
                throw InvalidParams("basis is not in reduced echelon form");
    }
    return s;
}

bool Subspace::contains(const GF2Vector& v) const {
    if (v.length() != ambient_)
        throw InvalidParams("vector length does not match ambient dimension");
    GF2Vector r = v;
    for (std::size_t i = 0; i < basis_.rows; ++i) {
        int p = basis_.row_data[i].lowest_set_bit();
        if (r.get(static_cast<std::size_t>(p)))
            r ^= basis_.row_data[i];
    }
    return r.is_zero();
}

GF2Vector Subspace::sample(SplitRng& rng) const {
    GF2Vector out(ambient_);
    sample_into(rng, out);
    return out;
}

void Subspace::sample_into(SplitRng& rng, GF2Vector& out) const {
    if (out.length() != ambient_)
        out = GF2Vector(ambient_);
    else
        out.clear();
    std::size_t d = dim();
    for (std::size_t base = 0; base < d; base += kWordBits) {
        Word coeffs = rng.next();
        std::size_t chunk = std::min(kWordBits, d - base);
        for (std::size_t i = 0; i < chunk; ++i)
            if ((coeffs >> i) & 1u)
                out ^= basis_.row_data[base + i];
    }
}

std::vector<GF2Vector> Subspace::elements() const {
    if (dim() > 24)
        throw InvalidParams("refusing to enumerate a subspace of dimension > 24");
    std::size_t count = std::size_t(1) << dim();
    std::vector<GF2Vector> out;
    out.reserve(count);
    GF2Vector cur(ambient_);
    out.push_back(cur);
    // Gray-code walk: one basis-row XOR per element.
    for (std::size_t i = 1; i < count; ++i) {
        std::size_t bit = static_cast<std::size_t>(std::countr_zero(i));
        cur ^= basis_.row_data[bit];
        out.push_back(cur);
    }
    return out;
}

bool operator<(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim())
        return a.dim() > b.dim();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (a.basis_.row_data[i] == b.basis_.row_data[i])
            continue;
        return a.basis_.row_data[i] < b.basis_.row_data[i];
    }
    return false;
}

Subspace canonical_basis(std::span<const GF2Vector> vectors, std::size_t ambient) {
    EchelonBasis e(ambient);
    for (const auto& v : vectors) {
        if (v.length() != ambient)
            throw InvalidParams("vector length does not match ambient dimension");
        e.insert(v);
    }
    return Subspace::from_rref(e.to_rref());
}

Subspace kernel(const GF2Matrix& m) {
    EchelonBasis e(m.cols);
    for (const auto& r : m.row_data)
        e.insert(r);
    GF2Matrix rref = e.to_rref();

    std::vector<bool> is_pivot(m.cols, false);
    for (const auto& p : e.pivots())
        is_pivot[static_cast<std::size_t>(p)] = true;

    // One kernel vector per free column f: x_f = 1 and, for each pivot row,
    // x_pivot = that row's entry at f.
    std::vector<GF2Vector> basis;
    basis.reserve(m.cols - rref.rows);
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f])
            continue;
        GF2Vector v(m.cols);
        v.set(f, true);
        for (std::size_t i = 0; i < rref.rows; ++i)
            if (rref.row_data[i].get(f))
                v.set(static_cast<std::size_t>(e.pivots()[i]), true);
        basis.push_back(std::move(v));
    }
    return canonical_basis(basis, m.cols);
}

bool is_subset(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient())
        throw InvalidParams("ambient dimensions differ");
    if (a.dim() > b.dim())
        return false;
    for (const auto& r : a.basis().row_data)
        if (!b.contains(r))
            return false;
    return true;
}

bool incomparable(const Subspace& a, const Subspace& b) {
    return !is_subset(a, b) && !is_subset(b, a);
}

std::pair<Subspace, Subspace> sum_and_intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient())
        throw InvalidParams("ambient dimensions differ");
    std::size_t n = a.ambient();
    // Zassenhaus block matrix: rows [r|r] for a's basis, [r|0] for b's.
    EchelonBasis e(2 * n);
    auto widen = [n](const GF2Vector& r, bool duplicate) {
        GF2Vector w(2 * n);
        for (std::size_t i = 0; i < n; ++i)
            if (r.get(i)) {
                w.set(i, true);
                if (duplicate)
                    w.set(n + i, true);
            }
        return w;
    };
    for (const auto& r : a.basis().row_data)
        e.insert(widen(r, true));
    for (const auto& r : b.basis().row_data)
        e.insert(widen(r, false));

    std::vector<GF2Vector> sum_rows, int_rows;
    for (const auto& row : e.rows()) {
        GF2Vector left(n), right(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (row.get(i))
                left.set(i, true);
            if (row.get(n + i))
                right.set(i, true);
        }
        if (left.is_zero())
            int_rows.push_back(std::move(right));
        else
            sum_rows.push_back(std::move(left));
    }
    return {canonical_basis(sum_rows, n), canonical_basis(int_rows, n)};
}

Subspace intersect(const Subspace& a, const Subspace& b) { return sum_and_intersect(a, b).second; }
Subspace sum(const Subspace& a, const Subspace& b) { return sum_and_intersect(a, b).first; }

Subspace apply(const GF2Matrix& m, const Subspace& s) {
    std::vector<GF2Vector> rows;
    rows.reserve(s.dim());
    for (const auto& r : s.basis().row_data)
        rows.push_back(mat_vec(m, r));
    return canonical_basis(rows, m.rows);
}

Subspace random_subspace(std::size_t n, std::size_t d, SplitRng& rng) {
    if (d > n)
        throw InvalidParams("subspace dimension exceeds ambient dimension");
    for (;;) {
        GF2Matrix m = random_matrix(d, n, rng);
        if (rank(m) == d)
            return canonical_basis(m.row_data, n);
    }
}

Subspace random_subspace_of(const Subspace& space, std::size_t d, SplitRng& rng) {
    if (d > space.dim())
        throw InvalidParams("subspace dimension exceeds space dimension");
    for (;;) {
        GF2Matrix coeff = random_matrix(d, space.dim(), rng);
        if (rank(coeff) != d)
            continue;
        std::vector<GF2Vector> rows;
        rows.reserve(d);
        for (std::size_t i = 0; i < d; ++i) {
            GF2Vector r(space.ambient());
            for (std::size_t j = 0; j < space.dim(); ++j)
                if (coeff.get(i, j))
                    r ^= space.basis().row_data[j];
            rows.push_back(std::move(r));
        }
        return canonical_basis(rows, space.ambient());
    }
}

namespace {

// Recursively fill the free entries of an RREF shape given pivot columns.
void fill_free_entries(const std::vector<std::size_t>& pivots, std::size_t n, GF2Matrix& m,
                       std::size_t row, std::size_t col, std::vector<Subspace>& out) {
    // Advance to the next free (row, col) cell: col > pivots[row], col not a pivot.
    while (row < pivots.size()) {
        if (col >= n) {
            ++row;
            col = 0;
            continue;
        }
        bool is_piv = false;
        for (auto p : pivots)
            if (p == col)
                is_piv = true;
        if (col <= pivots[row] || is_piv) {
            ++col;
            continue;
        }
        break;
    }
    if (row == pivots.size()) {
        out.push_back(Subspace::from_rref(m));
        return;
    }
    m.set(row, col, false);
    fill_free_entries(pivots, n, m, row, col + 1, out);
    m.set(row, col, true);
    fill_free_entries(pivots, n, m, row, col + 1, out);
    m.set(row, col, false);
}

void enumerate_pivot_sets(std::size_t n, std::size_t k, std::size_t start,
                          std::vector<std::size_t>& pivots, std::vector<Subspace>& out) {
    if (pivots.size() == k) {
        GF2Matrix m(k, n);
        for (std::size_t i = 0; i < k; ++i)
            m.set(i, pivots[i], true);
        fill_free_entries(pivots, n, m, 0, 0, out);
        return;
    }
    for (std::size_t c = start; c < n; ++c) {
        pivots.push_back(c);
        enumerate_pivot_sets(n, k, c + 1, pivots, out);
        pivots.pop_back();
    }
}

} // namespace

std::vector<Subspace> all_subspaces(std::size_t n) {
    if (n > 6)
        throw InvalidParams("refusing to enumerate subspaces beyond ambient dimension 6");
    std::vector<Subspace> out;
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<std::size_t> pivots;
        enumerate_pivot_sets(n, k, 0, pivots, out);
    }
    return out;
}

} // namespace f2mix
