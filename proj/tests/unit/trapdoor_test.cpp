#include <memory>

#include <gtest/gtest.h>

#include "hsum/builtin.hpp"
#include "hsum/cipher.hpp"
#include "hsum/trapdoor.hpp"

using namespace hsum;

namespace {

std::shared_ptr<const CoordinateMap> toy_coords()
{
    return std::make_shared<const CoordinateMap>(CoordinateMap::standard(builtin::toy_product_sum()));
}

Oracle identity_oracle(OracleDirection dir)
{
    std::vector<Word> t(64);
    for (Word x = 0; x < 64; ++x) t[x] = x;
    return make_table_oracle(dir, t);
}

} // namespace

TEST(Algorithm1, ClosedForm)
{
    // λ1 = x1, λ3 = x3, λ2 = λ1λ3 + x2 with x1 the low bit.
    const Word expected[8] = {0, 1, 2, 3, 4, 7, 6, 5};
    for (Word x = 0; x < 8; ++x) EXPECT_EQ(toy_brick_coefficients(x), expected[x]) << x;
    EXPECT_EQ(toy_coefficients(0b101101), 0b111111u);
}

TEST(ReconstructCp, IdentityOracle)
{
    auto o = identity_oracle(OracleDirection::encrypt);
    auto [repr, tr] = reconstruct_cp(o, toy_coords());
    EXPECT_EQ(repr.matrix(), BinMatrix::identity(6));
    EXPECT_EQ(repr.translation().bits(), 0u);
    EXPECT_EQ(tr.encryption_count, 7u);
    EXPECT_EQ(verify_global_deduction(repr, o, tr).mismatches, 0u);
}

TEST(ReconstructCp, XorTranslationOracle)
{
    auto o = make_table_oracle(OracleDirection::encrypt, translation_table(BinVec::unit(6, 0)));
    auto [repr, tr] = reconstruct_cp(o, toy_coords(), AttackOptions{0, true, 0});
    EXPECT_EQ(repr.translation().bits(), toy_coefficients(1));
    const auto rep = verify_global_deduction(repr, o, tr);
    EXPECT_EQ(rep.mismatches, 0u);
    EXPECT_EQ(rep.verified_blocks, 64u);
}

TEST(ReconstructCp, ToyCipherSevenQueriesAnyRoundCount)
{
    for (unsigned l : {1u, 5u, 20u, 100u}) {
        const auto spec = builtin_toy_spec(l);
        for (Word k : {Word{0}, Word{0x15}, Word{0x3f}}) {
            auto enc = make_encryption_oracle(spec, BinVec(6, k));
            auto [repr, tr] = reconstruct_cp(enc, toy_coords());
            EXPECT_EQ(enc.query_count(), 7u);
            EXPECT_EQ(tr.encryption_count, 7u);
            EXPECT_EQ(tr.decryption_count, 0u);
            ASSERT_EQ(tr.queries.size(), 7u);
            EXPECT_EQ(tr.queries.front().input, 0u);
            for (Word x = 0; x < 64; ++x) {
                const BinVec v(6, x);
                EXPECT_EQ(apply_repr(repr, v), encrypt(spec, BinVec(6, k), v));
                EXPECT_EQ(apply_repr_inverse(repr, apply_repr(repr, v)), v);
            }
        }
    }
}

TEST(ReconstructCp, NonAffineOracleIsDetected)
{
    // With x^6 bricks the cipher leaves the affine group of the toy sum.
    const auto x6 = from_power(6, builtin::toy_field(), builtin::toy_basis());
    const auto spec = builtin_toy_spec(3).with_bricks({x6, x6});
    auto enc = make_encryption_oracle(spec, BinVec(6, 7));
    EXPECT_THROW(reconstruct_cp(enc, toy_coords(), AttackOptions{0, true, 0}), ConsistencyFailure);
}

TEST(ReconstructCpcc, InverseFromDecryptions)
{
    const auto spec = builtin_toy_spec();
    auto enc = make_encryption_oracle(spec, BinVec(6, 0x21));
    auto dec = make_decryption_oracle(spec, BinVec(6, 0x21));
    auto [repr, tr] = reconstruct_cpcc(enc, dec, toy_coords());
    EXPECT_EQ(tr.encryption_count, 7u);
    EXPECT_EQ(tr.decryption_count, 7u);
    EXPECT_EQ(dec.query_count(), 7u);
    EXPECT_EQ(repr.matrix() * repr.inverse_matrix(), BinMatrix::identity(6));
    EXPECT_EQ(repr.inverse_matrix(), mat_inverse(repr.matrix()));
    for (Word y = 0; y < 64; ++y)
        EXPECT_EQ(apply_repr_inverse(repr, BinVec(6, y)), decrypt(spec, BinVec(6, 0x21), BinVec(6, y)));
}

TEST(ReconstructCpcc, IdentityOracles)
{
    auto enc = identity_oracle(OracleDirection::encrypt);
    auto dec = identity_oracle(OracleDirection::decrypt);
    auto [repr, tr] = reconstruct_cpcc(enc, dec, toy_coords());
    EXPECT_EQ(repr.matrix(), BinMatrix::identity(6));
    EXPECT_EQ(repr.inverse_matrix(), BinMatrix::identity(6));
}

TEST(ReconstructCpcc, MismatchedKeyIsRejected)
{
    const auto spec = builtin_toy_spec();
    auto enc = make_encryption_oracle(spec, BinVec(6, 5));
    auto dec = make_decryption_oracle(spec, BinVec(6, 9));
    EXPECT_THROW(reconstruct_cpcc(enc, dec, toy_coords()), InverseMismatch);
    // Roles are checked too.
    EXPECT_THROW(reconstruct_cpcc(dec, enc, toy_coords()), std::invalid_argument);
}

TEST(GlobalDeduction, CorruptedRepresentationMismatches)
{
    const auto spec = builtin_toy_spec();
    auto enc = make_encryption_oracle(spec, BinVec(6, 0x0c));
    auto [repr, tr] = reconstruct_cp(enc, toy_coords());
    for (unsigned i = 0; i < 6; ++i) {
        for (unsigned j = 0; j < 6; ++j) {
            const auto flipped = repr.matrix().with_flipped(i, j);
            if (!flipped.invertible()) continue;
            const AffineRepr bad(toy_coords(), flipped, repr.translation());
            const auto rep = verify_global_deduction(bad, enc, tr);
            EXPECT_GE(rep.mismatches, 1u);
            EXPECT_FALSE(rep.passed());
        }
    }
}

TEST(GlobalDeduction, VerificationIsMeteredSeparately)
{
    const auto spec = builtin_toy_spec();
    auto enc = make_encryption_oracle(spec, BinVec(6, 0x33));
    auto [repr, tr] = reconstruct_cp(enc, toy_coords(), AttackOptions{3, false, 1});
    const auto rep = verify_global_deduction(repr, enc, tr);
    EXPECT_EQ(rep.attack_encryptions, 7u);
    EXPECT_EQ(rep.verification_queries, 64u);
    EXPECT_EQ(enc.query_count(), 7u);
    EXPECT_EQ(enc.verification_count(), 3u + 64u);
}

TEST(Coordinates, ConjugateOfEncryptionIsXorAffine)
{
    // c ↦ [φ(point(c))] is XOR-affine exactly when φ is affine for the sum.
    const auto cm = toy_coords();
    const auto spec = builtin_toy_spec();
    for (Word k : {Word{1}, Word{0x2e}}) {
        const auto table = encryption_table(spec, BinVec(6, k));
        auto conj = [&](Word c) { return cm->coords(table[cm->point(c)]); };
        const Word c0 = conj(0);
        for (Word a = 0; a < 64; ++a)
            for (Word b = 0; b < 64; ++b) ASSERT_EQ(conj(a ^ b) ^ c0, (conj(a) ^ c0) ^ (conj(b) ^ c0));
    }
}
