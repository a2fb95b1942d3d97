#pragma once

#include "hsum/bitvec.hpp"

namespace hsum {

/// An abelian group operation on F_2^width with identity 0.
class GroupOp {
public:
    virtual ~GroupOp() = default;

    virtual unsigned width() const noexcept = 0;
    virtual Word combine(Word x, Word y) const = 0;
    virtual Word negate(Word x) const = 0;
    /// True when combine is plain XOR; enables linear-algebra shortcuts.
    virtual bool is_xor() const noexcept { return false; }
};

class XorOp final : public GroupOp {
public:
    explicit XorOp(unsigned width) : width_(width) {}

    unsigned width() const noexcept override { return width_; }
    Word combine(Word x, Word y) const override { return x ^ y; }
    Word negate(Word x) const override { return x; }
    bool is_xor() const noexcept override { return true; }

private:
    unsigned width_;
};

} // namespace hsum
