#pragma once

// Hidden sums induced by elementary abelian regular subgroups of AGL(V,+).
//
// A regular group T = { σ_y } is indexed by image of zero (σ_y(0) = y) and
// induces x □ y = σ_y(x). Relative to the ambient XOR, σ_y(x) = x·κ_y + y,
// and the ring product is x·y = x + y + (x □ y).

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hsum/affine.hpp"
#include "hsum/bitvec.hpp"
#include "hsum/group_op.hpp"

namespace hsum {

inline constexpr unsigned kMaxGroupWidth = 16;
inline constexpr unsigned kMaxSearchBrickWidth = 4;
inline constexpr unsigned kMaxSearchWidth = 12;

class GroupError : public std::runtime_error {
public:
    enum class Kind { not_abelian, not_regular, closure_overflow, not_elementary };

    GroupError(Kind kind, const std::string& what,
               std::optional<std::pair<std::size_t, std::size_t>> pair = std::nullopt)
        : std::runtime_error(what), kind_(kind), pair_(pair)
    {
    }

    Kind kind() const noexcept { return kind_; }
    /// Indices of the non-commuting generators for not_abelian.
    std::optional<std::pair<std::size_t, std::size_t>> offending_pair() const noexcept { return pair_; }

private:
    Kind kind_;
    std::optional<std::pair<std::size_t, std::size_t>> pair_;
};

class RegularGroup {
public:
    unsigned width() const noexcept { return width_; }
    std::span<const AffineMap> generators() const noexcept { return generators_; }
    /// elements()[v] is the unique element mapping 0 to v.
    std::span<const AffineMap> elements() const noexcept { return elements_; }
    const AffineMap& element(Word v) const { return elements_.at(v); }

    friend bool operator==(const RegularGroup& a, const RegularGroup& b)
    {
        return a.elements_ == b.elements_;
    }

private:
    friend RegularGroup build_group(std::vector<AffineMap> generators);
    RegularGroup(unsigned width, std::vector<AffineMap> generators, std::vector<AffineMap> elements)
        : width_(width), generators_(std::move(generators)), elements_(std::move(elements))
    {
    }

    unsigned width_;
    std::vector<AffineMap> generators_;
    std::vector<AffineMap> elements_;
};

/// Closes the generators under composition and checks abelian and regular.
RegularGroup build_group(std::vector<AffineMap> generators);

class HiddenSum final : public GroupOp {
public:
    /// Throws GroupError(not_elementary) unless every element is an involution.
    explicit HiddenSum(RegularGroup group);

    /// T_+: the translation group, whose sum is XOR.
    static HiddenSum translations(unsigned width);

    unsigned width() const noexcept override { return group_.width(); }
    Word combine(Word x, Word y) const override { return group_.elements()[y].apply(x); }
    Word negate(Word x) const override { return x; }

    BinVec op(const BinVec& x, const BinVec& y) const;
    BinVec neg(const BinVec& x) const;
    const BinMatrix& kappa(Word y) const { return group_.element(y).matrix(); }

    const RegularGroup& group() const noexcept { return group_; }
    std::span<const AffineMap> elements() const noexcept { return group_.elements(); }

    friend bool operator==(const HiddenSum& a, const HiddenSum& b) { return a.group_ == b.group_; }

private:
    RegularGroup group_;
};

BinVec hidden_op(const HiddenSum& hs, const BinVec& x, const BinVec& y);
BinVec hidden_neg(const HiddenSum& hs, const BinVec& x);
BinMatrix kappa(const HiddenSum& hs, const BinVec& y);

struct KappaReport {
    bool homomorphism = true; ///< κ_{x□y} = κ_y κ_x for all x, y
    bool inversion = true;    ///< κ_{⊟y} = κ_y^-1 for all y
    std::optional<std::pair<Word, Word>> witness;
    bool ok() const noexcept { return homomorphism && inversion; }
};

KappaReport check_kappa_homomorphism(const HiddenSum& hs);
/// Audits a raw element table (indexed by image of zero) that need not be a group.
KappaReport check_kappa_homomorphism(std::span<const AffineMap> elements);

struct Subspace {
    std::vector<Word> elements; ///< sorted
    std::vector<Word> basis;
    std::size_t size() const noexcept { return elements.size(); }
    bool contains(Word x) const;
};

/// U = { y : x □ y = x + y for all x }, the y whose σ_y is a pure translation.
Subspace compute_U(const HiddenSum& hs);

Word ring_product(const HiddenSum& hs, Word x, Word y);
BinVec ring_product(const HiddenSum& hs, const BinVec& x, const BinVec& y);

struct RingReport {
    bool commutative = false;
    bool associative = false;
    bool distributive = false;
    bool nilpotent = false;
    /// Smallest k with V^k = {0}; 0 when not nilpotent.
    unsigned nilpotency_index = 0;
    bool ok() const noexcept { return commutative && associative && distributive && nilpotent; }
};

RingReport check_ring_axioms(const HiddenSum& hs);

/// uV = { u·v } is closed under both XOR and the hidden sum.
bool check_uV_subgroup(const HiddenSum& hs, Word u);

/// True iff x ↦ g(x) □ (⊟g(0)) is additive for □, checked on all pairs.
/// Throws NotPermutation if g is not a bijection of V.
bool agl_membership(std::span<const Word> g, const HiddenSum& hs);

/// Table of x ↦ x + v.
std::vector<Word> translation_table(const BinVec& v);

/// Brick-parallel sum on the concatenated space; part 0 occupies the low bits.
HiddenSum product_sum(std::span<const HiddenSum> parts);

class NotABasis : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Coefficients with respect to a basis of (V, □): x = ⊙ c_i·b_i.
/// coords(x □ y) = coords(x) XOR coords(y).
class CoordinateMap {
public:
    CoordinateMap(HiddenSum sum, std::vector<BinVec> basis);
    /// Basis e_1, ..., e_d.
    static CoordinateMap standard(HiddenSum sum);

    unsigned width() const noexcept { return sum_.width(); }
    const HiddenSum& sum() const noexcept { return sum_; }
    std::span<const BinVec> basis() const noexcept { return basis_; }

    Word coords(Word x) const { return coords_.at(x); }
    Word point(Word c) const { return points_.at(c); }

    BinVec coordinates(const BinVec& x) const;
    BinVec from_coordinates(const BinVec& c) const;

private:
    HiddenSum sum_;
    std::vector<BinVec> basis_;
    std::vector<Word> points_;
    std::vector<Word> coords_;
};

BinVec coordinates(const CoordinateMap& map, const BinVec& x);

/// Every elementary abelian regular subgroup of AGL(F_2^width, +), in
/// canonical order (width <= 4).
std::vector<HiddenSum> enumerate_regular_subgroups(unsigned width);

struct HiddenSumSearch {
    /// Also require every XOR translation to be affine for the candidate.
    bool include_translations = true;
};

/// Product sums (one regular subgroup per brick) for which every generator is
/// affine. Bricks occupy consecutive bit ranges starting at bit 0.
std::vector<HiddenSum> find_hidden_sums(std::span<const std::vector<Word>> round_generators,
                                        std::span<const unsigned> brick_widths,
                                        const HiddenSumSearch& options = {});

} // namespace hsum
