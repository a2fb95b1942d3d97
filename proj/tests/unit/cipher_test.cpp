#include <random>
#include <set>

#include <gtest/gtest.h>

#include "hsum/builtin.hpp"
#include "hsum/cipher.hpp"
#include "hsum/hidden_sum.hpp"

using namespace hsum;

TEST(Cipher, BuiltinShape)
{
    const auto spec = builtin_toy_spec();
    EXPECT_EQ(spec.width(), 6u);
    EXPECT_EQ(spec.brick_count(), 2u);
    EXPECT_EQ(spec.brick_width(), 3u);
    EXPECT_EQ(spec.rounds(), kDefaultToyRounds);
    ASSERT_TRUE(spec.surjective_round().has_value());
    EXPECT_EQ(*spec.surjective_round(), 1u);
}

TEST(Cipher, RoundMapIsBijective)
{
    const auto t = round_map_table(builtin_toy_spec());
    EXPECT_EQ(std::set<Word>(t.begin(), t.end()).size(), 64u);
}

TEST(Cipher, RoundOrderIsGammaThenLambdaThenKey)
{
    const auto spec = builtin_toy_spec(1);
    const auto g = builtin::gamma1();
    const auto lam = builtin::toy_mixing();
    for (Word k = 0; k < 64; k += 5)
        for (Word x = 0; x < 64; ++x) {
            const Word expect = lam.apply(g(x & 7) | (g(x >> 3) << 3)) ^ default_key_schedule(BinVec(6, k), 1).bits();
            EXPECT_EQ(encrypt(spec, BinVec(6, k), BinVec(6, x)).bits(), expect);
        }
}

TEST(Cipher, EncryptionIsIteratedRounds)
{
    const auto spec = builtin_toy_spec(5);
    const BinVec key(6, 0b101101);
    for (Word x = 0; x < 64; ++x) {
        Word y = x;
        for (unsigned h = 1; h <= 5; ++h) y = round_apply(spec, y, spec.round_key(key, h).bits());
        EXPECT_EQ(encrypt(spec, key, BinVec(6, x)).bits(), y);
    }
}

TEST(Cipher, DecryptInvertsEncrypt)
{
    for (unsigned l : {1u, 7u, 20u}) {
        const auto spec = builtin_toy_spec(l);
        for (Word k = 0; k < 64; k += 9)
            for (Word x = 0; x < 64; ++x) {
                const BinVec key(6, k), pt(6, x);
                EXPECT_EQ(decrypt(spec, key, encrypt(spec, key, pt)), pt);
            }
    }
}

TEST(Cipher, FrozenCiphertexts)
{
    const auto spec = builtin_toy_spec();
    const BinVec key(6, 0x2a);
    EXPECT_EQ(encrypt(spec, key, BinVec(6, 0x00)).bits(), 0x2du);
    EXPECT_EQ(encrypt(spec, key, BinVec(6, 0x01)).bits(), 0x28u);
    EXPECT_EQ(encrypt(spec, key, BinVec(6, 0x15)).bits(), 0x2au);
    EXPECT_EQ(encrypt(builtin_toy_spec(1), BinVec(6, 0x01), BinVec(6, 0x15)).bits(), 0x3eu);
}

TEST(Cipher, Schedules)
{
    const BinVec key(6, 0b000011);
    EXPECT_EQ(default_key_schedule(key, 1).bits(), 0b000110u);
    EXPECT_EQ(default_key_schedule(key, 6).bits(), key.bits());
    EXPECT_EQ(default_key_schedule(BinVec(6, 0b100000), 1).bits(), 0b000001u);

    const auto s = random_permutation_schedule(6, 42);
    for (unsigned h = 1; h <= 3; ++h) {
        std::set<Word> images;
        for (Word k = 0; k < 64; ++k) images.insert(s(BinVec(6, k), h).bits());
        EXPECT_EQ(images.size(), 64u);
    }
    EXPECT_EQ(s(key, 4), random_permutation_schedule(6, 42)(key, 4));
}

TEST(Cipher, ValidationErrors)
{
    const auto g = builtin::gamma1();
    const auto lam = builtin::toy_mixing();
    EXPECT_THROW(CipherSpec({}, lam, 1, rotate_schedule()), InvalidCipher);
    EXPECT_THROW(CipherSpec({g}, lam, 1, rotate_schedule()), InvalidCipher);
    EXPECT_THROW(CipherSpec({g, g}, lam, 0, rotate_schedule()), InvalidCipher);
    EXPECT_THROW(CipherSpec({g, g}, lam, kMaxRounds + 1, rotate_schedule()), InvalidCipher);
    EXPECT_THROW(CipherSpec({g, g}, lam.with_flipped(1, 1), 1, rotate_schedule()),
                 InvalidCipher); // row 1 becomes zero
    std::vector<Word> shifted(g.table().begin(), g.table().end());
    for (auto& v : shifted) v ^= 1;
    EXPECT_THROW(CipherSpec({Vbf(3, 3, shifted), g}, lam, 1, rotate_schedule()), InvalidCipher);
    const KeySchedule constant = [](const BinVec& k, unsigned) { return BinVec(k.width(), 0); };
    EXPECT_THROW(CipherSpec({g, g}, lam, 3, constant), InvalidCipher);
    EXPECT_THROW(encrypt(builtin_toy_spec(), BinVec(5, 0), BinVec(6, 0)), WidthMismatch);
}

TEST(Calibration, IdentityBasisRowConvention)
{
    const auto cal = calibrate_toy_basis(builtin::toy_mixing());
    EXPECT_EQ(cal.basis, builtin::toy_basis());
    EXPECT_EQ(cal.basis.matrix(), BinMatrix::identity(3));
    EXPECT_EQ(cal.convention, MixingConvention::row);
    EXPECT_EQ(cal.valid_count, 24u);
}

TEST(Calibration, TrapdoorClosesOverKeys)
{
    const auto sum = builtin::toy_product_sum();
    std::mt19937_64 rng(3);
    for (unsigned l : {1u, 20u}) {
        const auto spec = builtin_toy_spec(l);
        for (int i = 0; i < 5; ++i) EXPECT_TRUE(agl_membership(encryption_table(spec, BinVec(6, rng() & 63)), sum));
    }
}

TEST(Oracle, CountersSeparateAttackAndVerification)
{
    auto o = make_encryption_oracle(builtin_toy_spec(), BinVec(6, 9));
    EXPECT_EQ(o.direction(), OracleDirection::encrypt);
    (void)o.query(BinVec(6, 1));
    (void)o.query(BinVec(6, 2));
    (void)o.verify(BinVec(6, 3));
    EXPECT_EQ(o.query_count(), 2u);
    EXPECT_EQ(o.verification_count(), 1u);
    EXPECT_THROW(o.query(BinVec(5, 1)), WidthMismatch);

    auto t = make_table_oracle(OracleDirection::decrypt, {1, 0});
    EXPECT_EQ(t.width(), 1u);
    EXPECT_EQ(t.query(BinVec(1, 0)).bits(), 1u);
    EXPECT_THROW(make_table_oracle(OracleDirection::encrypt, {0, 1, 2}), std::invalid_argument);
}
