#include "f2mix/gf2.hpp"

#include <algorithm>
#include <stdexcept>

namespace f2mix {

GF2Vector GF2Vector::from_bits(std::string_view bits) {
    GF2Vector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        char c = bits[i];
        if (c != '0' && c != '1')
            throw std::invalid_argument("bit string must contain only 0/1");
        if (c == '1')
            v.set(i, true);
    }
    return v;
}

GF2Vector GF2Vector::unit(std::size_t n, std::size_t i) {
    GF2Vector v(n);
    v.set(i, true);
    return v;
}

std::string GF2Vector::to_bits() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i))
            s[i] = '1';
    return s;
}

bool operator<(const GF2Vector& a, const GF2Vector& b) {
    assert(a.len_ == b.len_);
    for (std::size_t i = 0; i < a.w_.size(); ++i) {
        if (a.w_[i] == b.w_[i])
            continue;
        // Differing word: the vector with 0 at the lowest differing coordinate
        // precedes ("0xx" < "1xx" reading coordinate 0 first).
        Word diff = a.w_[i] ^ b.w_[i];
        Word low = diff & (~diff + 1);
        return (a.w_[i] & low) == 0;
    }
    return false;
}

GF2Matrix GF2Matrix::identity(std::size_t n) {
    GF2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, true);
    return m;
}

void EchelonBasis::reduce(GF2Vector& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        int p = pivots_[i];
        if (v.get(static_cast<std::size_t>(p)))
            v ^= rows_[i];
    }
}

bool EchelonBasis::insert(GF2Vector v) {
    assert(v.length() == cols_);
    reduce(v);
    int p = v.lowest_set_bit();
    if (p < 0)
        return false;
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    std::size_t pos = static_cast<std::size_t>(it - pivots_.begin());
    pivots_.insert(it, p);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
    return true;
}

bool EchelonBasis::contains(const GF2Vector& v) const {
    assert(v.length() == cols_);
    GF2Vector r = v;
    reduce(r);
    return r.is_zero();
}

GF2Matrix EchelonBasis::to_rref() const {
    GF2Matrix m(rows_.size(), cols_);
    m.row_data = rows_;
    // Back-substitute: clear every pivot column above its pivot row.
    for (std::size_t i = m.rows; i-- > 0;) {
        std::size_t p = static_cast<std::size_t>(pivots_[i]);
        for (std::size_t j = 0; j < i; ++j)
            if (m.row_data[j].get(p))
                m.row_data[j] ^= m.row_data[i];
    }
    return m;
}

std::size_t rank(const GF2Matrix& m) {
    EchelonBasis e(m.cols);
    for (const auto& r : m.row_data)
        e.insert(r);
    return e.dim();
}

GF2Matrix transpose(const GF2Matrix& m) {
    GF2Matrix t(m.cols, m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) {
        // Walk only the set bits of the row.
        const auto ws = m.row_data[r].words();
        for (std::size_t wi = 0; wi < ws.size(); ++wi) {
            Word w = ws[wi];
            while (w) {
                std::size_t c = wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
                t.set(c, r, true);
                w &= w - 1;
            }
        }
    }
    return t;
}

GF2Matrix mat_mul(const GF2Matrix& a, const GF2Matrix& b) {
    assert(a.cols == b.rows);
    GF2Matrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const auto ws = a.row_data[i].words();
        for (std::size_t wi = 0; wi < ws.size(); ++wi) {
            Word w = ws[wi];
            while (w) {
                std::size_t k = wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
                c.row_data[i] ^= b.row_data[k];
                w &= w - 1;
            }
        }
    }
    return c;
}

GF2Vector mat_vec(const GF2Matrix& m, const GF2Vector& x) {
    GF2Vector y(m.rows);
    mat_vec_into(m, x, y);
    return y;
}

void mat_vec_into(const GF2Matrix& m, const GF2Vector& x, GF2Vector& out) {
    assert(x.length() == m.cols);
    if (out.length() != m.rows)
        out = GF2Vector(m.rows);
    else
        out.clear();
    for (std::size_t r = 0; r < m.rows; ++r)
        if (m.row_data[r].dot(x))
            out.set(r, true);
}

namespace {

// One elimination of m, reusable across right-hand sides.  Each echelon row
// remembers which combination of original rows produced it, so any rhs can be
// reduced the same way and then back-substituted.
struct AugmentedSolver {
    explicit AugmentedSolver(const GF2Matrix& m) : cols(m.cols), e(m.cols) {
        combos.reserve(m.rows);
        for (std::size_t i = 0; i < m.rows; ++i) {
            GF2Vector row = m.row_data[i];
            GF2Vector combo(m.rows);
            combo.set(i, true);
            for (std::size_t j = 0; j < e.dim(); ++j) {
                int p = e.pivots()[j];
                if (row.get(static_cast<std::size_t>(p))) {
                    row ^= e.rows()[j];
                    combo ^= combos[order[j]];
                }
            }
            int p = row.lowest_set_bit();
            combos.push_back(std::move(combo));
            if (p >= 0) {
                std::size_t pos = 0;
                while (pos < e.dim() && e.pivots()[pos] < p)
                    ++pos;
                e.insert(std::move(row));
                order.insert(order.begin() + static_cast<std::ptrdiff_t>(pos), i);
            }
        }
    }

    // Candidate solution with zeros on free coordinates.  Caller verifies
    // m x == b; inconsistent systems fail that check.
    GF2Vector back_solve(const GF2Vector& b) const {
        std::vector<bool> rhs(e.dim());
        for (std::size_t j = 0; j < e.dim(); ++j)
            rhs[j] = combos[order[j]].dot(b);
        GF2Vector x(cols);
        // Rows have ascending pivots and zeros left of their pivot, so the
        // last row fixes the highest unknown first.
        for (std::size_t j = e.dim(); j-- > 0;) {
            std::size_t p = static_cast<std::size_t>(e.pivots()[j]);
            GF2Vector tail = e.rows()[j];
            tail.set(p, false);
            x.set(p, rhs[j] ^ tail.dot(x));
        }
        return x;
    }

    std::size_t cols;
    EchelonBasis e;
    std::vector<GF2Vector> combos;  // combination of original rows, per row
    std::vector<std::size_t> order; // original row index per echelon row
};

} // namespace

std::optional<GF2Vector> solve(const GF2Matrix& m, const GF2Vector& b) {
    auto r = solve_many(m, std::span<const GF2Vector>(&b, 1));
    return r[0];
}

std::vector<std::optional<GF2Vector>> solve_many(const GF2Matrix& m,
                                                 std::span<const GF2Vector> bs) {
    AugmentedSolver s(m);
    std::vector<std::optional<GF2Vector>> out;
    out.reserve(bs.size());
    for (const auto& b : bs) {
        assert(b.length() == m.rows);
        GF2Vector x = s.back_solve(b);
        if (mat_vec(m, x) == b)
            out.push_back(std::move(x));
        else
            out.push_back(std::nullopt);
    }
    return out;
}

GF2Matrix random_matrix(std::size_t rows, std::size_t cols, SplitRng& rng) {
    GF2Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        m.row_data[r] = random_vector(cols, rng);
    return m;
}

GF2Vector random_vector(std::size_t n, SplitRng& rng) {
    GF2Vector v(n);
    auto ws = v.words();
    for (std::size_t i = 0; i < ws.size(); ++i)
        ws[i] = rng.next();
    if (n % kWordBits)
        ws[ws.size() - 1] &= (Word(1) << (n % kWordBits)) - 1;
    return v;
}

} // namespace f2mix
