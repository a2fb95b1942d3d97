#include <gtest/gtest.h>

#include "hsum/gf2m.hpp"

using namespace hsum;

TEST(Field, IrreducibilityByTrialDivision)
{
    EXPECT_TRUE(is_irreducible(0b1011));
    EXPECT_TRUE(is_irreducible(0b1011011));
    EXPECT_FALSE(is_irreducible(0b1111)); // (x+1)^3
    EXPECT_FALSE(is_irreducible(0b101));  // (x+1)^2
    EXPECT_THROW(FieldSpec::parse("1111"), NotIrreducible);
    EXPECT_THROW(FieldSpec::parse("10a1"), std::invalid_argument);
}

TEST(Field, DefaultModuliAreIrreducible)
{
    for (unsigned m = 2; m <= 16; ++m) {
        const auto fs = default_field(m);
        EXPECT_EQ(fs.degree(), m);
        EXPECT_TRUE(is_irreducible(fs.modulus())) << "m=" << m;
    }
    EXPECT_EQ(default_field(6).modulus_string(), "1011011");
    EXPECT_EQ(default_field(3).modulus_string(), "1011");
}

TEST(Field, ToyFieldArithmetic)
{
    const auto fs = FieldSpec::parse("1011");
    const Word a = 0b010;
    EXPECT_EQ(gf_pow(a, 3, fs), 0b011u); // alpha^3 = alpha + 1
    EXPECT_EQ(gf_pow(a, 7, fs), 1u);
    EXPECT_EQ(gf_pow(0, 0, fs), 1u);
    EXPECT_EQ(gf_mul(0b110, 0b101, fs), gf_mul(0b101, 0b110, fs));
    EXPECT_THROW(gf_mul(8, 1, fs), WidthMismatch);
}

TEST(Field, MultiplicativeGroupIsCyclicOfOrderQMinusOne)
{
    for (unsigned m = 2; m <= 8; ++m) {
        const auto fs = default_field(m);
        const Word q = fs.order();
        for (Word x = 1; x < q; ++x) {
            EXPECT_EQ(gf_pow(x, q - 1, fs), 1u);
            const Word y = q - 1, z = 1;
            EXPECT_EQ(gf_mul(x, y ^ z, fs), gf_mul(x, y, fs) ^ gf_mul(x, z, fs));
        }
    }
}

TEST(Field, BasisRoundTrip)
{
    const FieldBasis b(parse_matrix_text("110\n010\n111\n"));
    for (Word a = 0; a < 8; ++a) {
        EXPECT_EQ(b.to_field(b.to_vec(a)), a);
        EXPECT_EQ(vec_to_field(field_to_vec(a, b), b), a);
    }
    EXPECT_THROW(FieldBasis(parse_matrix_text("110\n110\n001\n")), SingularMatrix);
}
