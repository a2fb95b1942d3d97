#pragma once

// Regularity-based block cipher engine. Round h maps
//   x ↦ λ(γ(x)) + φ(k, h)
// with γ a bricklayer of S-boxes fixing 0 and λ acting as x·λ.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "hsum/bitvec.hpp"
#include "hsum/gf2m.hpp"
#include "hsum/vbf.hpp"

namespace hsum {

inline constexpr unsigned kMaxRounds = 1000;
inline constexpr unsigned kDefaultToyRounds = 20;

/// φ(k, h): session key and 1-based round index to round key.
using KeySchedule = std::function<BinVec(const BinVec& key, unsigned round)>;

/// Rotation of k towards higher coordinates by h positions (e_1 -> e_{1+h}).
BinVec default_key_schedule(const BinVec& key, unsigned round);
KeySchedule rotate_schedule();
/// Round h applies an independent permutation of V, derived from (seed, h),
/// to the key. Surjective in every round. Width at most 16.
KeySchedule random_permutation_schedule(unsigned width, std::uint64_t seed);

class InvalidCipher : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class CipherSpec {
public:
    /// Validates bricks (equal-width permutations fixing 0), mixing
    /// (invertible, d×d), rounds (1..1000) and finds a round index h0 whose
    /// schedule is surjective (checked exhaustively for d <= 8).
    CipherSpec(std::vector<Vbf> bricks, BinMatrix mixing, unsigned rounds, KeySchedule schedule);

    unsigned brick_count() const noexcept { return static_cast<unsigned>(bricks_.size()); }
    unsigned brick_width() const noexcept { return bricks_.front().in_width(); }
    unsigned width() const noexcept { return mixing_.dim(); }
    unsigned rounds() const noexcept { return rounds_; }
    const std::vector<Vbf>& bricks() const noexcept { return bricks_; }
    const std::vector<Vbf>& inverse_bricks() const noexcept { return inverse_bricks_; }
    const BinMatrix& mixing() const noexcept { return mixing_; }
    const BinMatrix& mixing_inverse() const noexcept { return mixing_inverse_; }
    /// A round index with a surjective schedule; nullopt when d > 8 (unchecked).
    std::optional<unsigned> surjective_round() const noexcept { return h0_; }

    BinVec round_key(const BinVec& key, unsigned round) const;

    CipherSpec with_rounds(unsigned rounds) const;
    CipherSpec with_schedule(KeySchedule schedule) const;
    CipherSpec with_bricks(std::vector<Vbf> bricks) const;
    CipherSpec with_mixing(BinMatrix mixing) const;

private:
    std::vector<Vbf> bricks_;
    std::vector<Vbf> inverse_bricks_;
    BinMatrix mixing_;
    BinMatrix mixing_inverse_;
    unsigned rounds_;
    KeySchedule schedule_;
    std::optional<unsigned> h0_;
};

Word gamma_apply(const CipherSpec& spec, Word x);
Word gamma_inverse_apply(const CipherSpec& spec, Word x);
Word lambda_apply(const CipherSpec& spec, Word x);
BinVec gamma_apply(const CipherSpec& spec, const BinVec& x);
BinVec lambda_apply(const CipherSpec& spec, const BinVec& x);

/// One round with an explicit round key.
Word round_apply(const CipherSpec& spec, Word x, Word round_key);

BinVec encrypt(const CipherSpec& spec, const BinVec& key, const BinVec& plaintext);
BinVec decrypt(const CipherSpec& spec, const BinVec& key, const BinVec& ciphertext);

/// Full codebook of φ_k.
std::vector<Word> encryption_table(const CipherSpec& spec, const BinVec& key);
/// Table of the keyless round map λγ.
std::vector<Word> round_map_table(const CipherSpec& spec);

enum class MixingConvention { row, column };
const char* to_string(MixingConvention c) noexcept;

struct BasisCalibration {
    FieldBasis basis;
    MixingConvention convention;
    /// Number of (basis, convention) pairs that validate.
    std::size_t valid_count = 0;
};

/// Searches every invertible 3×3 field basis and both mixing conventions for
/// the first under which all XOR translations and λγ are affine for the toy
/// product sum. Throws std::logic_error when none validates.
BasisCalibration calibrate_toy_basis(const BinMatrix& mixing);

/// The toy cipher: two gamma1 bricks over F_8 and the 6×6 mixing layer.
CipherSpec builtin_toy_spec(unsigned rounds = kDefaultToyRounds, KeySchedule schedule = rotate_schedule());

enum class OracleDirection { encrypt, decrypt };

/// Black-box access to a permutation of V with metered queries. Attack queries
/// and verification queries are counted separately; counters never decrease.
class Oracle {
public:
    Oracle(OracleDirection direction, unsigned width, std::function<Word(Word)> fn);

    OracleDirection direction() const noexcept { return direction_; }
    unsigned width() const noexcept { return width_; }

    BinVec query(const BinVec& input);
    BinVec verify(const BinVec& input);

    std::size_t query_count() const noexcept { return queries_; }
    std::size_t verification_count() const noexcept { return verifications_; }

private:
    Word call(const BinVec& input);

    OracleDirection direction_;
    unsigned width_;
    std::function<Word(Word)> fn_;
    std::size_t queries_ = 0;
    std::size_t verifications_ = 0;
};

Oracle make_encryption_oracle(const CipherSpec& spec, const BinVec& key);
Oracle make_decryption_oracle(const CipherSpec& spec, const BinVec& key);
Oracle make_table_oracle(OracleDirection direction, std::vector<Word> table);

} // namespace hsum
