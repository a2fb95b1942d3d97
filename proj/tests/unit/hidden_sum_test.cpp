#include <random>

#include <gtest/gtest.h>

#include "hsum/builtin.hpp"
#include "hsum/hidden_sum.hpp"
#include "hsum/trapdoor.hpp"

using namespace hsum;

namespace {

AffineMap am(const char* rows, const char* t)
{
    return AffineMap(parse_matrix_text(rows), BinVec::parse(t));
}

} // namespace

TEST(RegularGroup, ToyGeneratorsCloseToOrderEight)
{
    const auto g = builtin::toy_generators();
    const auto group = build_group({g.begin(), g.end()});
    ASSERT_EQ(group.elements().size(), 8u);
    for (Word v = 0; v < 8; ++v) EXPECT_EQ(group.element(v).apply(0), v);
}

TEST(RegularGroup, RejectsNonCommutingGenerators)
{
    const auto a = am("100\n010\n011\n", "100");
    const auto b = am("110\n010\n001\n", "010");
    try {
        (void)build_group({a, b});
        FAIL() << "expected GroupError";
    } catch (const GroupError& e) {
        EXPECT_EQ(e.kind(), GroupError::Kind::not_abelian);
        ASSERT_TRUE(e.offending_pair().has_value());
        EXPECT_EQ(*e.offending_pair(), (std::pair<std::size_t, std::size_t>{0, 1}));
    }
}

TEST(RegularGroup, RejectsNonRegularGroups)
{
    // Two translations only reach 4 of 8 points.
    try {
        (void)build_group({AffineMap::translation(BinVec::parse("100")), AffineMap::translation(BinVec::parse("010"))});
        FAIL() << "expected GroupError";
    } catch (const GroupError& e) {
        EXPECT_EQ(e.kind(), GroupError::Kind::not_regular);
    }
    // A linear involution fixes 0, as does the identity.
    try {
        (void)build_group({am("01\n10\n", "00")});
        FAIL() << "expected GroupError";
    } catch (const GroupError& e) {
        EXPECT_EQ(e.kind(), GroupError::Kind::not_regular);
    }
}

TEST(RegularGroup, RejectsCyclicOfOrderFour)
{
    // x -> x + 1 on Z/4 written in binary is affine with an order-4 element.
    const auto c4 = am("11\n01\n", "10");
    EXPECT_THROW(HiddenSum(build_group({c4})), GroupError);
}

TEST(HiddenSumOps, ToySum)
{
    const auto hs = builtin::toy_sum();
    for (Word x = 0; x < 8; ++x) {
        EXPECT_EQ(hs.combine(x, 0), x);
        EXPECT_EQ(hs.combine(x, x), 0u);
        for (Word y = 0; y < 8; ++y) {
            EXPECT_EQ(hs.combine(x, y), hs.combine(y, x));
            for (Word z = 0; z < 8; ++z)
                EXPECT_EQ(hs.combine(hs.combine(x, y), z), hs.combine(x, hs.combine(y, z)));
        }
    }
    EXPECT_NE(hs, HiddenSum::translations(3));
    EXPECT_EQ(hidden_op(hs, BinVec::parse("100"), BinVec::parse("001")), BinVec(3, hs.combine(1, 4)));
}

TEST(HiddenSumOps, KappaRingAndU)
{
    const auto hs = builtin::toy_sum();
    EXPECT_TRUE(check_kappa_homomorphism(hs).ok());
    const auto u = compute_U(hs);
    EXPECT_EQ(u.elements, (std::vector<Word>{0, 2}));
    const auto ring = check_ring_axioms(hs);
    EXPECT_TRUE(ring.ok());
    EXPECT_EQ(ring.nilpotency_index, 3u);
    for (Word x = 0; x < 8; ++x) EXPECT_TRUE(check_uV_subgroup(hs, x));
    EXPECT_EQ(kappa(hs, BinVec::parse("010")), BinMatrix::identity(3));
}

TEST(HiddenSumOps, TranslationSumHasFullU)
{
    const auto hs = HiddenSum::translations(4);
    EXPECT_EQ(compute_U(hs).size(), 16u);
    EXPECT_EQ(check_ring_axioms(hs).nilpotency_index, 2u); // x·y = 0 identically
}

TEST(HiddenSumOps, KappaAuditCatchesBrokenTables)
{
    const auto hs = builtin::toy_sum();
    std::vector<AffineMap> elems(hs.elements().begin(), hs.elements().end());
    elems[3] = AffineMap(elems[3].matrix().with_flipped(2, 0), elems[3].translation());
    if (elems[3].matrix().invertible()) EXPECT_FALSE(check_kappa_homomorphism(elems).ok());
}

TEST(AglMembership, TranslationsAndRoundMap)
{
    const auto sum = builtin::toy_product_sum();
    for (unsigned i = 0; i < 6; ++i) EXPECT_TRUE(agl_membership(translation_table(BinVec::unit(6, i)), sum));
    std::vector<Word> swap(64);
    for (Word x = 0; x < 64; ++x) swap[x] = ((x & 7) << 3) | (x >> 3);
    EXPECT_TRUE(agl_membership(swap, sum)); // brick swap respects a symmetric product
    std::vector<Word> bad(64);
    for (Word x = 0; x < 64; ++x) bad[x] = x;
    std::swap(bad[1], bad[2]);
    EXPECT_FALSE(agl_membership(bad, sum));
    bad[1] = bad[2];
    EXPECT_THROW(agl_membership(bad, sum), NotPermutation);
}

TEST(CoordinateMap, StandardCoordinatesAreAnIsomorphism)
{
    const auto sum = builtin::toy_product_sum();
    const auto cm = CoordinateMap::standard(sum);
    for (Word x = 0; x < 64; ++x) {
        EXPECT_EQ(cm.point(cm.coords(x)), x);
        EXPECT_EQ(cm.coords(x), toy_coefficients(x));
        for (Word y = 0; y < 64; y += 7) EXPECT_EQ(cm.coords(sum.combine(x, y)), cm.coords(x) ^ cm.coords(y));
    }
    for (Word x = 0; x < 8; ++x) EXPECT_EQ(toy_brick_coefficients(x), CoordinateMap::standard(builtin::toy_sum()).coords(x));
}

TEST(CoordinateMap, RejectsDependentBasis)
{
    const auto hs = builtin::toy_sum();
    EXPECT_THROW(CoordinateMap(hs, {BinVec::parse("100"), BinVec::parse("100"), BinVec::parse("001")}), NotABasis);
}

TEST(Enumeration, CountsInSmallDimensions)
{
    EXPECT_EQ(enumerate_regular_subgroups(1).size(), 1u);
    EXPECT_EQ(enumerate_regular_subgroups(2).size(), 1u);
    const auto three = enumerate_regular_subgroups(3);
    EXPECT_EQ(three.size(), 7u);
    EXPECT_NE(std::find(three.begin(), three.end(), builtin::toy_sum()), three.end());
    EXPECT_NE(std::find(three.begin(), three.end(), HiddenSum::translations(3)), three.end());
    EXPECT_THROW(enumerate_regular_subgroups(5), std::invalid_argument);
}

TEST(Search, IdentityGeneratorAdmitsEveryProduct)
{
    std::vector<Word> id(64);
    for (Word x = 0; x < 64; ++x) id[x] = x;
    const std::vector<std::vector<Word>> gens{id};
    const unsigned widths[] = {3, 3};
    EXPECT_EQ(find_hidden_sums(gens, widths, HiddenSumSearch{false}).size(), 49u);
    // Each of these sums is normalized by the XOR translations, so requiring
    // them changes nothing here.
    EXPECT_EQ(find_hidden_sums(gens, widths).size(), 49u);
}

TEST(Search, RejectsOversizedLayouts)
{
    const std::vector<std::vector<Word>> none;
    const unsigned wide[] = {5};
    EXPECT_THROW(find_hidden_sums(none, wide), std::invalid_argument);
    const unsigned many[] = {4, 4, 4, 4};
    EXPECT_THROW(find_hidden_sums(none, many), std::invalid_argument);
}
