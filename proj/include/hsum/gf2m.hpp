#pragma once

// Arithmetic in GF(2^m). Elements are encoded ascending: bit i is the
// coefficient of alpha^i, where alpha is the class of x modulo the field
// polynomial.

#include <cstdint>
#include <string>
#include <string_view>

#include "hsum/bitvec.hpp"

namespace hsum {

inline constexpr unsigned kMaxFieldDegree = 32;

class NotIrreducible : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Polynomial given with bit i = coefficient of x^i.
bool is_irreducible(Word poly);

class FieldSpec {
public:
    /// Throws NotIrreducible when modulus is reducible or not of degree m.
    FieldSpec(unsigned m, Word modulus);

    /// Binary literal, most significant coefficient first: "1011" is x^3+x+1.
    static FieldSpec parse(std::string_view modulus);

    unsigned degree() const noexcept { return m_; }
    Word modulus() const noexcept { return modulus_; }
    Word order() const noexcept { return Word{1} << m_; }
    std::string modulus_string() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    unsigned m_;
    Word modulus_;
};

/// A fixed irreducible polynomial per degree 2..16 (x^6+x^4+x^3+x+1 for m=6).
FieldSpec default_field(unsigned m);

Word gf_mul(Word a, Word b, const FieldSpec& fs);
/// Square-and-multiply; gf_pow(a, 0) = 1 for every a, including 0.
Word gf_pow(Word a, std::uint64_t k, const FieldSpec& fs);

/// Bridge between field elements and coordinate vectors:
/// field_to_vec(a) = bits(a)·B, vec_to_field(v) = v·B^-1.
class FieldBasis {
public:
    explicit FieldBasis(BinMatrix basis);
    static FieldBasis ascending(unsigned m) { return FieldBasis(BinMatrix::identity(m)); }

    unsigned dim() const noexcept { return forward_.dim(); }
    const BinMatrix& matrix() const noexcept { return forward_; }

    Word to_vec(Word a) const noexcept { return forward_.apply(a); }
    Word to_field(Word v) const noexcept { return inverse_.apply(v); }

    friend bool operator==(const FieldBasis& a, const FieldBasis& b) { return a.forward_ == b.forward_; }

private:
    BinMatrix forward_;
    BinMatrix inverse_;
};

BinVec field_to_vec(Word a, const FieldBasis& basis);
Word vec_to_field(const BinVec& v, const FieldBasis& basis);

} // namespace hsum
