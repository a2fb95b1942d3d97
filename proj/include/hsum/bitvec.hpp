#pragma once

// Vectors and square matrices over F_2.
//
// Bit order: coordinate j of a vector is bit j of its word, so e_1 is bit 0.
// Matrices act on row vectors (x·M); row i of M is the image of e_{i+1}.

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hsum {

using Word = std::uint64_t;

inline constexpr unsigned kMaxWidth = 64;

constexpr Word low_mask(unsigned width) noexcept
{
    return width >= 64 ? ~Word{0} : (Word{1} << width) - 1;
}

inline unsigned parity(Word x) noexcept
{
    return static_cast<unsigned>(std::popcount(x)) & 1u;
}

class WidthMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class BinVec {
public:
    BinVec(unsigned width, Word bits);
    explicit BinVec(unsigned width) : BinVec(width, 0) {}

    static BinVec unit(unsigned width, unsigned index);
    /// Parses '0'/'1' characters; character j is coordinate j.
    static BinVec parse(std::string_view text);

    unsigned width() const noexcept { return width_; }
    Word bits() const noexcept { return bits_; }
    bool operator[](unsigned i) const;
    bool is_zero() const noexcept { return bits_ == 0; }

    BinVec& operator^=(const BinVec& other);
    friend BinVec operator^(BinVec a, const BinVec& b) { return a ^= b; }

    std::string to_string() const;

    friend bool operator==(const BinVec&, const BinVec&) = default;
    friend auto operator<=>(const BinVec&, const BinVec&) = default;

private:
    unsigned width_;
    Word bits_;
};

class SingularMatrix : public std::domain_error {
public:
    SingularMatrix(unsigned dim, unsigned rank);
    unsigned rank() const noexcept { return rank_; }

private:
    unsigned rank_;
};

class BinMatrix {
public:
    /// Square matrix whose dimension is rows.size(); rank is computed eagerly.
    explicit BinMatrix(std::vector<Word> rows);

    static BinMatrix identity(unsigned dim);
    static BinMatrix from_rows(std::span<const BinVec> rows);

    unsigned dim() const noexcept { return static_cast<unsigned>(rows_.size()); }
    Word row(unsigned i) const { return rows_.at(i); }
    std::span<const Word> rows() const noexcept { return rows_; }
    bool get(unsigned i, unsigned j) const { return (row(i) >> j) & 1u; }
    unsigned rank() const noexcept { return rank_; }
    bool invertible() const noexcept { return rank_ == dim(); }

    /// x·M on a raw word.
    Word apply(Word x) const noexcept
    {
        Word out = 0;
        for (unsigned i = 0; x != 0; ++i, x >>= 1)
            if (x & 1u) out ^= rows_[i];
        return out;
    }

    BinMatrix transpose() const;
    BinMatrix with_flipped(unsigned i, unsigned j) const;

    /// Row convention: x·(A*B) = (x·A)·B.
    friend BinMatrix operator*(const BinMatrix& a, const BinMatrix& b);
    friend bool operator==(const BinMatrix& a, const BinMatrix& b) { return a.rows_ == b.rows_; }
    friend auto operator<=>(const BinMatrix& a, const BinMatrix& b) { return a.rows_ <=> b.rows_; }

private:
    std::vector<Word> rows_;
    unsigned rank_ = 0;
};

BinVec mat_vec_mul(const BinVec& x, const BinMatrix& m);
BinMatrix mat_inverse(const BinMatrix& m);

// Row-space helpers on raw word lists.
unsigned rank_of(std::span<const Word> vectors);
/// Reduced row echelon basis of span(vectors), sorted descending by leading bit.
std::vector<Word> echelon_basis(std::span<const Word> vectors);
/// Reduces x modulo an echelon basis (canonical coset representative).
Word reduce(Word x, std::span<const Word> echelon);
/// Basis of { v : <v,w> = 0 for all w in span(vectors) } inside F_2^width.
std::vector<Word> orthogonal_complement(std::span<const Word> vectors, unsigned width);
/// All 2^k elements of the span of a basis, in Gray-free binary counting order.
std::vector<Word> span_elements(std::span<const Word> basis);

// Matrix text format: one row per line of '0'/'1' characters.
BinMatrix parse_matrix_text(std::string_view text);
std::string format_matrix_text(const BinMatrix& m);

} // namespace hsum
