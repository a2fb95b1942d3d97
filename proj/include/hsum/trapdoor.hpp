#pragma once

// Global deduction against a cipher whose encryption functions are affine for
// a known hidden sum. In hidden-sum coordinates [·],
//   [φ(v)] = [v]·M + [t],   [φ^-1(w)] = ([w] + [t])·M^-1,
// so d + 1 chosen plaintexts determine φ completely.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hsum/bitvec.hpp"
#include "hsum/cipher.hpp"
#include "hsum/hidden_sum.hpp"

namespace hsum {

/// Algorithm 1 on one 3-bit brick of the toy sum: λ1 = x1, λ3 = x3, λ2 = λ1λ3 + x2.
Word toy_brick_coefficients(Word x);
/// Algorithm 1 applied to each 3-bit brick of a 6-bit block.
Word toy_coefficients(Word v);

class AffineRepr {
public:
    /// M^-1 is computed by Gaussian reduction unless supplied.
    AffineRepr(std::shared_ptr<const CoordinateMap> coords, BinMatrix matrix, BinVec translation,
               std::optional<BinMatrix> inverse = std::nullopt);

    const CoordinateMap& coordinates() const noexcept { return *coords_; }
    const BinMatrix& matrix() const noexcept { return matrix_; }
    const BinMatrix& inverse_matrix() const noexcept { return inverse_; }
    /// [t], the coordinates of φ(0).
    const BinVec& translation() const noexcept { return translation_; }

    Word apply(Word v) const;
    Word apply_inverse(Word w) const;

private:
    std::shared_ptr<const CoordinateMap> coords_;
    BinMatrix matrix_;
    BinMatrix inverse_;
    BinVec translation_;
};

BinVec apply_repr(const AffineRepr& repr, const BinVec& v);
BinVec apply_repr_inverse(const AffineRepr& repr, const BinVec& w);

struct QueryRecord {
    OracleDirection direction;
    Word input;
    Word output;
};

struct AttackTranscript {
    std::vector<QueryRecord> queries;
    std::size_t encryption_count = 0;
    std::size_t decryption_count = 0;
};

class ConsistencyFailure : public std::runtime_error {
public:
    explicit ConsistencyFailure(Word plaintext);
    Word plaintext() const noexcept { return plaintext_; }

private:
    Word plaintext_;
};

class InverseMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AttackOptions {
    /// Random plaintexts checked against the reconstruction (verification counter).
    unsigned spot_checks = 3;
    /// Check every block instead of spot_checks random ones.
    bool full_check = false;
    std::uint64_t seed = 0;
};

using AttackResult = std::pair<AffineRepr, AttackTranscript>;

/// Chosen-plaintext attack: d + 1 encryption queries.
AttackResult reconstruct_cp(Oracle& encryption, std::shared_ptr<const CoordinateMap> coords,
                            const AttackOptions& options = {});

/// Chosen-plaintext/chosen-ciphertext attack: d + 1 encryptions and d + 1
/// decryptions, with M^-1 read off the decryptions.
AttackResult reconstruct_cpcc(Oracle& encryption, Oracle& decryption,
                              std::shared_ptr<const CoordinateMap> coords,
                              const AttackOptions& options = {});

struct DeductionReport {
    std::size_t verified_blocks = 0;
    std::size_t mismatches = 0;
    std::size_t verification_queries = 0;
    std::size_t attack_encryptions = 0;
    std::size_t attack_decryptions = 0;
    bool passed() const noexcept { return verified_blocks > 0 && mismatches == 0; }
};

/// Compares apply_repr with the oracle on every block, using verification queries.
DeductionReport verify_global_deduction(const AffineRepr& repr, Oracle& encryption,
                                        const AttackTranscript& transcript);

} // namespace hsum
