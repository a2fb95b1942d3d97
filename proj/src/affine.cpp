#include "hsum/affine.hpp"

namespace hsum {

AffineFunction::AffineFunction(BinMatrix linear, BinVec offset)
    : linear_(std::move(linear)), offset_(offset)
{
    if (offset_.width() != linear_.dim())
        throw WidthMismatch("affine offset width does not match matrix dimension");
}

AffineMap::AffineMap(BinMatrix matrix, BinVec translation)
    : matrix_(std::move(matrix)), translation_(translation)
{
    if (translation_.width() != matrix_.dim())
        throw WidthMismatch("affine translation width does not match matrix dimension");
    if (!matrix_.invertible())
        throw SingularMatrix(matrix_.dim(), matrix_.rank());
}

AffineMap AffineMap::identity(unsigned width)
{
    return AffineMap(BinMatrix::identity(width), BinVec(width));
}

AffineMap AffineMap::translation(const BinVec& v)
{
    return AffineMap(BinMatrix::identity(v.width()), v);
}

BinVec AffineMap::operator()(const BinVec& x) const
{
    if (x.width() != width())
        throw WidthMismatch("affine map applied to vector of wrong width");
    return BinVec(width(), apply(x.bits()));
}

AffineMap AffineMap::after(const AffineMap& first) const
{
    if (first.width() != width())
        throw WidthMismatch("composition of affine maps with different widths");
    // (x·A + a)·B + b = x·(AB) + (a·B + b)
    return AffineMap(first.matrix_ * matrix_, BinVec(width(), apply(first.translation_.bits())));
}

AffineMap AffineMap::inverse() const
{
    auto inv = mat_inverse(matrix_);
    const Word t = inv.apply(translation_.bits());
    return AffineMap(std::move(inv), BinVec(width(), t));
}

} // namespace hsum
