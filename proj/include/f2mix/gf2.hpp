#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "f2mix/rng.hpp"

namespace f2mix {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

// Dense bit-packed vector over GF(2).  Coordinate c lives in word c/64 at bit
// c%64 (little-endian within a word).  Bits past length() are kept zero so
// whole-word operations and comparisons are valid.
class GF2Vector {
  public:
    GF2Vector() = default;
    explicit GF2Vector(std::size_t n) : len_(n), w_(words_for(n), 0) {}

    // "0101..." with the leftmost character at coordinate 0.
    static GF2Vector from_bits(std::string_view bits);
    static GF2Vector unit(std::size_t n, std::size_t i);

    std::size_t length() const { return len_; }

    bool get(std::size_t i) const {
        assert(i < len_);
        return (w_[i / kWordBits] >> (i % kWordBits)) & 1u;
    }
    void set(std::size_t i, bool v) {
        assert(i < len_);
        Word m = Word(1) << (i % kWordBits);
        if (v)
            w_[i / kWordBits] |= m;
        else
            w_[i / kWordBits] &= ~m;
    }
    void flip(std::size_t i) {
        assert(i < len_);
        w_[i / kWordBits] ^= Word(1) << (i % kWordBits);
    }

    void clear() {
        for (auto& x : w_)
            x = 0;
    }

    GF2Vector& operator^=(const GF2Vector& o) {
        assert(len_ == o.len_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            w_[i] ^= o.w_[i];
        return *this;
    }
    friend GF2Vector operator^(GF2Vector a, const GF2Vector& b) {
        a ^= b;
        return a;
    }

    bool is_zero() const {
        for (Word x : w_)
            if (x)
                return false;
        return true;
    }

    // Index of the lowest set bit, or -1 for the zero vector.
    int lowest_set_bit() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i])
                return static_cast<int>(i * kWordBits + std::countr_zero(w_[i]));
        return -1;
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (Word x : w_)
            c += std::popcount(x);
        return c;
    }

    // Parity of <this, o>.
    bool dot(const GF2Vector& o) const {
        assert(len_ == o.len_);
        Word acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i)
            acc ^= w_[i] & o.w_[i];
        return std::popcount(acc) & 1u;
    }

    // Packed value of the first min(length, 64) coordinates.
    Word low_word() const { return w_.empty() ? 0 : w_[0]; }

    std::span<const Word> words() const { return w_; }
    std::span<Word> words() { return w_; }

    std::string to_bits() const;

    friend bool operator==(const GF2Vector& a, const GF2Vector& b) {
        return a.len_ == b.len_ && a.w_ == b.w_;
    }
    // Lexicographic by coordinate 0 first; used only for canonical tie-breaks.
    friend bool operator<(const GF2Vector& a, const GF2Vector& b);

  private:
    std::size_t len_ = 0;
    std::vector<Word> w_;
};

struct GF2Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<GF2Vector> row_data;

    GF2Matrix() = default;
    GF2Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), row_data(r, GF2Vector(c)) {}

    static GF2Matrix identity(std::size_t n);

    GF2Vector& operator[](std::size_t r) { return row_data[r]; }
    const GF2Vector& operator[](std::size_t r) const { return row_data[r]; }

    bool get(std::size_t r, std::size_t c) const { return row_data[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v) { row_data[r].set(c, v); }

    friend bool operator==(const GF2Matrix& a, const GF2Matrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.row_data == b.row_data;
    }
};

// Incremental row-echelon accumulator.  Rows are kept forward-reduced and
// ordered by pivot column; this is the workhorse behind rank, span tracking,
// membership tests and the streaming vanishing-polynomial count.
class EchelonBasis {
  public:
    explicit EchelonBasis(std::size_t cols) : cols_(cols) {}

    // Inserts v's residue; returns true if it added a new dimension.
    bool insert(GF2Vector v);

    // Reduces a copy of v; true iff v is in the row space.
    bool contains(const GF2Vector& v) const;

    std::size_t dim() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const std::vector<GF2Vector>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

    // Fully back-reduced rows with strictly increasing pivots (RREF).
    GF2Matrix to_rref() const;

  private:
    void reduce(GF2Vector& v) const;

    std::size_t cols_;
    std::vector<GF2Vector> rows_;
    std::vector<int> pivots_;
};

std::size_t rank(const GF2Matrix& m);
GF2Matrix transpose(const GF2Matrix& m);
GF2Matrix mat_mul(const GF2Matrix& a, const GF2Matrix& b);

// y with y_j = <row_j(m), x>.
GF2Vector mat_vec(const GF2Matrix& m, const GF2Vector& x);
void mat_vec_into(const GF2Matrix& m, const GF2Vector& x, GF2Vector& out);

// Some x with m x = b (zeros on free coordinates), or nullopt if inconsistent.
std::optional<GF2Vector> solve(const GF2Matrix& m, const GF2Vector& b);

// One elimination shared across many right-hand sides.
std::vector<std::optional<GF2Vector>> solve_many(const GF2Matrix& m,
                                                 std::span<const GF2Vector> bs);

GF2Matrix random_matrix(std::size_t rows, std::size_t cols, SplitRng& rng);
GF2Vector random_vector(std::size_t n, SplitRng& rng);

} // namespace f2mix
