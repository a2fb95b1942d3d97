#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "hsum/builtin.hpp"
#include "hsum/vbf.hpp"

using namespace hsum;

namespace {

Vbf power(std::uint64_t d, unsigned m)
{
    return from_power(d, default_field(m), FieldBasis::ascending(m));
}

} // namespace

TEST(Vbf, Gamma1TableIsFrozen)
{
    const auto g = builtin::gamma1();
    const std::vector<Word> expected{0, 6, 3, 7, 4, 1, 5, 2};
    EXPECT_EQ(std::vector<Word>(g.table().begin(), g.table().end()), expected);
    EXPECT_TRUE(g.is_permutation());
}

TEST(Vbf, TableValidation)
{
    EXPECT_THROW(Vbf(3, 3, {0, 1, 2}), std::invalid_argument);
    EXPECT_THROW(Vbf(2, 2, {0, 1, 2, 4}), WidthMismatch);
    EXPECT_THROW(Vbf(17, 17, {}), std::invalid_argument);
    EXPECT_FALSE(Vbf(2, 2, {0, 0, 1, 2}).is_permutation());
}

TEST(Vbf, UnivariateMatchesPower)
{
    const auto fs = default_field(4);
    std::vector<Word> coeffs(8, 0);
    coeffs[7] = 1;
    EXPECT_EQ(from_univariate(coeffs, fs, FieldBasis::ascending(4)), power(7, 4));
}

TEST(Differential, Gamma1)
{
    const auto g = builtin::gamma1();
    const auto ds = diff_uniformity(g, true);
    EXPECT_EQ(ds.delta, 4u);
    EXPECT_EQ(ds.count(ds.witness_a, ds.witness_b), 4u);
    EXPECT_FALSE(is_apn(g));
    EXPECT_FALSE(is_weakly_apn(g));

    const std::vector<std::size_t> sizes{4, 2, 4, 4, 2, 4, 2};
    for (Word a = 1; a < 8; ++a) {
        const auto img = derivative_image(g, a);
        EXPECT_EQ(img.size(), sizes[a - 1]) << "a=" << a;
        EXPECT_TRUE(is_coset(img.image, 3)) << "a=" << a;
    }
    // alpha^2 is 0b100 in the ascending basis.
    EXPECT_EQ(derivative_image(g, 0b100).image, (std::vector<Word>{4, 5, 6, 7}));
    EXPECT_TRUE(is_crooked(g).holds);
    const auto ac = is_anti_crooked(g);
    EXPECT_FALSE(ac.holds);
    ASSERT_TRUE(ac.witness.has_value());
}

TEST(Differential, ComponentSpacesOfGamma1)
{
    const auto g = builtin::gamma1();
    EXPECT_EQ(component_space(g, 0b100).size(), 1u); // 4-element image
    EXPECT_EQ(component_space(g, 0b010).size(), 2u); // 2-element image
    EXPECT_EQ(n_hat(g), 3u);
}

TEST(Differential, GoldIsApnAndCrooked)
{
    const auto f = power(3, 3);
    EXPECT_TRUE(is_apn(f));
    EXPECT_TRUE(is_crooked(f).holds);
    EXPECT_TRUE(is_weakly_apn(f));
}

TEST(Differential, DerivativeDirectionValidated)
{
    const auto g = builtin::gamma1();
    EXPECT_THROW(derivative_image(g, 0), std::invalid_argument);
    EXPECT_THROW(derivative_image(g, 8), WidthMismatch);
}

TEST(Cosets, Membership)
{
    EXPECT_TRUE(is_coset(std::vector<Word>{5}, 3));
    EXPECT_TRUE(is_coset(std::vector<Word>{1, 2}, 3));
    EXPECT_TRUE(is_coset(std::vector<Word>{1, 2, 5, 6}, 3));
    EXPECT_FALSE(is_coset(std::vector<Word>{0, 1, 2}, 3));
    EXPECT_FALSE(is_coset(std::vector<Word>{0, 1, 2, 4}, 3)); // right size, not closed
    EXPECT_THROW(is_coset(std::vector<Word>{}, 3), std::invalid_argument);
}

TEST(Cosets, AffineHullIsCanonical)
{
    const auto h = affine_hull(std::vector<Word>{1, 2, 4}, 3);
    EXPECT_EQ(h.dimension(), 2u);
    EXPECT_TRUE(h.contains(7));
    EXPECT_FALSE(h.contains(0));
    const std::vector<Word> dirs{3, 5};
    EXPECT_EQ(h, AffineSubspace(7, dirs, 3));
    EXPECT_EQ(h.elements().size(), 4u);
}

TEST(AntiCrooked, InversionFamily)
{
    // x^6 over F_8 is (x^3)^2, so all of its derivative images are cosets.
    EXPECT_FALSE(is_anti_crooked(power(6, 3)).holds);
    EXPECT_TRUE(is_crooked(power(6, 3)).holds);
    for (unsigned m = 4; m <= 8; ++m)
        EXPECT_TRUE(is_anti_crooked(power((std::uint64_t{1} << m) - 2, m)).holds) << "m=" << m;
}

TEST(AntiCrooked, F64Exponents)
{
    const auto x49 = power(49, 6);
    EXPECT_FALSE(x49.is_permutation());
    EXPECT_THROW(is_anti_crooked(x49), NotPermutation);
    EXPECT_TRUE(coset_profile(x49).no_cosets());

    const auto x5 = power(5, 6);
    EXPECT_FALSE(is_anti_crooked(x5).holds);
    const Word e6 = gf_pow(2, 6, default_field(6));
    const auto img = derivative_image(x5, e6);
    EXPECT_EQ(img.size(), 16u);
    EXPECT_TRUE(is_coset(img.image, 6));

    const auto x38 = power(38, 6);
    EXPECT_TRUE(is_anti_crooked(x38).holds);
    EXPECT_EQ(inverse_vbf(x38), x5);
}

TEST(AntiCrooked, DichotomyAgreesOnSmallFields)
{
    for (unsigned m = 3; m <= 5; ++m) {
        const auto fs = default_field(m);
        const auto b = FieldBasis::ascending(m);
        const std::uint64_t q = (std::uint64_t{1} << m) - 1;
        for (std::uint64_t d = 1; d < q; ++d) {
            if (std::gcd(d, q) != 1) continue;
            const bool ac = is_anti_crooked(from_power(d, fs, b)).holds;
            EXPECT_EQ(power_ac_dichotomy(d, fs, b) == PowerClass::anti_crooked, ac) << "m=" << m << " d=" << d;
        }
    }
}

TEST(EaTransform, PreservesCosetStructure)
{
    std::mt19937_64 rng(77);
    const unsigned m = 5;
    const auto f = power(30, m); // inversion, anti-crooked
    auto rand_mat = [&](bool inv) {
        while (true) {
            std::vector<Word> rows(m);
            for (auto& r : rows) r = rng() & low_mask(m);
            BinMatrix a(rows);
            if (!inv || a.invertible()) return a;
        }
    };
    for (int trial = 0; trial < 30; ++trial) {
        const AffineMap outer(rand_mat(true), BinVec(m, rng() & 31));
        const AffineMap inner(rand_mat(true), BinVec(m, rng() & 31));
        const AffineFunction added(rand_mat(false), BinVec(m, rng() & 31));
        EXPECT_TRUE(coset_profile(ea_transform(f, outer, inner, added)).no_cosets());
    }
}

TEST(Inverse, RoundTripAndRejection)
{
    const auto g = builtin::gamma1();
    const auto gi = inverse_vbf(g);
    for (Word x = 0; x < 8; ++x) EXPECT_EQ(gi(g(x)), x);
    EXPECT_THROW(inverse_vbf(power(49, 6)), NotPermutation);
}
