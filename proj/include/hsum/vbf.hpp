#pragma once

// Vectorial Boolean functions as exhaustive lookup tables, and their
// differential properties: differential uniformity, (weakly-)APN, crooked,
// anti-crooked, the component spaces V_a and the n-hat measure.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hsum/affine.hpp"
#include "hsum/bitvec.hpp"
#include "hsum/gf2m.hpp"
#include "hsum/group_op.hpp"

namespace hsum {

inline constexpr unsigned kDefaultMaxTableWidth = 16;

class NotPermutation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// f: F_2^m -> F_2^n stored as 2^m output words.
class Vbf {
public:
    Vbf(unsigned m, unsigned n, std::vector<Word> table,
        unsigned max_width = kDefaultMaxTableWidth);

    static Vbf identity(unsigned m);

    unsigned in_width() const noexcept { return m_; }
    unsigned out_width() const noexcept { return n_; }
    std::size_t size() const noexcept { return table_.size(); }
    std::span<const Word> table() const noexcept { return table_; }
    bool is_permutation() const noexcept { return permutation_; }

    Word operator()(Word x) const { return table_.at(x); }
    BinVec at(const BinVec& x) const;

    friend bool operator==(const Vbf& a, const Vbf& b)
    {
        return a.m_ == b.m_ && a.n_ == b.n_ && a.table_ == b.table_;
    }

private:
    unsigned m_;
    unsigned n_;
    std::vector<Word> table_;
    bool permutation_ = false;
};

/// table[v] = field_to_vec((vec_to_field(v))^d).
Vbf from_power(std::uint64_t d, const FieldSpec& fs, const FieldBasis& basis);
/// coeffs[i] is the coefficient of x^i; evaluated by Horner's rule.
Vbf from_univariate(std::span<const Word> coeffs, const FieldSpec& fs, const FieldBasis& basis);

struct DerivativeImage {
    Word direction = 0;
    std::vector<Word> image; ///< sorted, distinct
    std::size_t size() const noexcept { return image.size(); }
};

/// Im(D_a f) = { f(x□a) ⊟ f(x) } under the given sum (XOR when omitted).
DerivativeImage derivative_image(const Vbf& f, Word a, const GroupOp& sum);
DerivativeImage derivative_image(const Vbf& f, Word a);

struct DiffSpectrum {
    unsigned delta = 0;
    Word witness_a = 0;
    Word witness_b = 0;
    unsigned out_width = 0;
    /// Row-major δ_f(a,b), present only when requested.
    std::vector<std::uint32_t> counts;

    std::uint32_t count(Word a, Word b) const { return counts.at((a << out_width) | b); }
};

DiffSpectrum diff_uniformity(const Vbf& f, bool keep_counts = false);
bool is_apn(const Vbf& f);
/// |Im(D_a f)| > 2^(m-2) for every nonzero a.
bool is_weakly_apn(const Vbf& f);

bool is_coset(std::span<const Word> set, const GroupOp& sum);
bool is_coset(std::span<const Word> set, unsigned width);

/// A coset p + W of a linear subspace W of F_2^width, held in canonical form
/// (reduced echelon basis, base point reduced modulo W).
class AffineSubspace {
public:
    AffineSubspace(Word point, std::span<const Word> directions, unsigned width);

    unsigned width() const noexcept { return width_; }
    unsigned dimension() const noexcept { return static_cast<unsigned>(basis_.size()); }
    Word base() const noexcept { return base_; }
    std::span<const Word> basis() const noexcept { return basis_; }
    bool contains(Word x) const { return reduce(x, basis_) == base_; }
    std::vector<Word> elements() const;

    friend bool operator==(const AffineSubspace&, const AffineSubspace&) = default;

private:
    Word base_;
    std::vector<Word> basis_;
    unsigned width_;
};

/// Smallest XOR-coset containing a nonempty set.
AffineSubspace affine_hull(std::span<const Word> set, unsigned width);

/// A yes/no answer plus the direction that decides it when the answer is no:
/// for AC a direction whose image is a coset, for crooked one whose image is not.
struct Verdict {
    bool holds = false;
    std::optional<Word> witness;
    explicit operator bool() const noexcept { return holds; }
};

struct CosetProfile {
    std::vector<Word> coset_directions;
    std::vector<Word> non_coset_directions;
    bool all_cosets() const noexcept { return non_coset_directions.empty(); }
    bool no_cosets() const noexcept { return coset_directions.empty(); }
};

/// Classifies every nonzero direction; defined for any f with m = n.
CosetProfile coset_profile(const Vbf& f, const GroupOp& sum);
CosetProfile coset_profile(const Vbf& f);

/// Require f to be a permutation with m = n (NotPermutation otherwise).
Verdict is_anti_crooked(const Vbf& f, const GroupOp& sum);
Verdict is_anti_crooked(const Vbf& f);
Verdict is_crooked(const Vbf& f, const GroupOp& sum);
Verdict is_crooked(const Vbf& f);

enum class PowerClass { crooked, anti_crooked };
const char* to_string(PowerClass c) noexcept;

/// Classifies x^d from the single direction a = 1. For non-permutations the
/// label names the coset dichotomy only.
PowerClass power_ac_dichotomy(std::uint64_t d, const FieldSpec& fs, const FieldBasis& basis);

/// Basis of V_a = { v : x ↦ <D_a f(x), v> is constant }.
std::vector<Word> component_space(const Vbf& f, Word a);
/// 2^t - 1 with t the largest dim V_a over nonzero a.
std::uint64_t n_hat(const Vbf& f);

/// x ↦ outer(f(inner(x))) + added(x), for f with m = n.
Vbf ea_transform(const Vbf& f, const AffineMap& outer, const AffineMap& inner,
                 const AffineFunction& added);
Vbf inverse_vbf(const Vbf& f);

} // namespace hsum
