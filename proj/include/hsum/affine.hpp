#pragma once

#include <compare>

#include "hsum/bitvec.hpp"

namespace hsum {

/// x ↦ x·linear + offset, with no invertibility requirement.
class AffineFunction {
public:
    AffineFunction(BinMatrix linear, BinVec offset);

    unsigned width() const noexcept { return linear_.dim(); }
    const BinMatrix& linear() const noexcept { return linear_; }
    const BinVec& offset() const noexcept { return offset_; }
    Word apply(Word x) const noexcept { return linear_.apply(x) ^ offset_.bits(); }

private:
    BinMatrix linear_;
    BinVec offset_;
};

/// Element of AGL(V,+): x ↦ x·matrix + translation with an invertible matrix.
class AffineMap {
public:
    /// Throws SingularMatrix when the matrix is not invertible.
    AffineMap(BinMatrix matrix, BinVec translation);

    static AffineMap identity(unsigned width);
    static AffineMap translation(const BinVec& v);

    unsigned width() const noexcept { return matrix_.dim(); }
    const BinMatrix& matrix() const noexcept { return matrix_; }
    const BinVec& translation() const noexcept { return translation_; }

    Word apply(Word x) const noexcept { return matrix_.apply(x) ^ translation_.bits(); }
    BinVec operator()(const BinVec& x) const;

    /// The map x ↦ this(first(x)).
    AffineMap after(const AffineMap& first) const;
    AffineMap inverse() const;

    friend bool operator==(const AffineMap&, const AffineMap&) = default;
    friend auto operator<=>(const AffineMap& a, const AffineMap& b)
    {
        if (auto c = a.matrix_ <=> b.matrix_; c != 0) return c;
        return a.translation_ <=> b.translation_;
    }

private:
    BinMatrix matrix_;
    BinVec translation_;
};

} // namespace hsum
