#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "hsum/builtin.hpp"
#include "hsum/formats.hpp"
#include "hsum/report.hpp"

using namespace hsum;

namespace {

template <class F>
ParseError capture(F&& f)
{
    try {
        f();
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "expected ParseError";
    return ParseError("none");
}

} // namespace

TEST(SboxText, ParsesHeaderAndValues)
{
    const auto f = parse_sbox_text("m=3 n=3\n0 6 3 7\n4,1,5,0x2  # gamma1\n");
    EXPECT_EQ(f, builtin::gamma1());
}

TEST(SboxText, ErrorsCarryLineAndColumn)
{
    auto e = capture([] { parse_sbox_text("m=3 n=3\n0 6 zz 7 4 1 5 2\n", "box.txt"); });
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 5u);
    EXPECT_NE(std::string(e.what()).find("box.txt:2:5"), std::string::npos);

    e = capture([] { parse_sbox_text("m=2 n=2\n0 1 2\n"); });
    EXPECT_EQ(e.line(), 3u);
    e = capture([] { parse_sbox_text("m=2 n=1\n0 1 2 3\n"); });
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 5u);
    e = capture([] { parse_sbox_text("x=2 n=1\n"); });
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 1u);
}

TEST(VbfConfig, PowerAndUnivariate)
{
    const auto p = parse_vbf_config(R"({"field": {"m": 6, "modulus": "1011011"}, "kind": "power", "exponent": 5})");
    EXPECT_EQ(p, from_power(5, default_field(6), FieldBasis::ascending(6)));
    const auto u = parse_vbf_config(R"({"field": {"m": 3, "modulus": "1011"}, "kind": "univariate",
                                        "coeffs": [0, 2, 2, 7, 4, 2, 7]})");
    EXPECT_EQ(u, builtin::gamma1());
}

TEST(VbfConfig, Errors)
{
    auto e = capture([] { parse_vbf_config("{\n  \"field\": {\"m\": 3,\n  }\n}", "cfg.json"); });
    EXPECT_EQ(e.line(), 3u);
    EXPECT_THROW(parse_vbf_config(R"({"field": {"m": 3}, "kind": "rational"})"), ParseError);
    EXPECT_THROW(parse_vbf_config(R"({"field": {"m": 3, "modulus": "1111"}, "kind": "power", "exponent": 3})"),
                 ParseError);
    EXPECT_THROW(parse_vbf_config(R"({"field": {"m": 3}, "kind": "univariate", "coeffs": [9]})"), ParseError);
    EXPECT_THROW(parse_vbf_config(R"({"kind": "power", "exponent": 3})"), ParseError);
}

TEST(LoadVbf, BuiltinsAndFiles)
{
    EXPECT_EQ(load_vbf("builtin:gamma1"), builtin::gamma1());
    EXPECT_EQ(load_vbf("builtin:power:3:5"), from_power(3, default_field(5), FieldBasis::ascending(5)));
    EXPECT_THROW(load_vbf("builtin:nope"), ParseError);
    EXPECT_THROW(load_vbf("/nonexistent/file.txt"), ParseError);

    const auto dir = std::filesystem::temp_directory_path() / "hsum_formats_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "g.txt") << "m=3 n=3\n0 6 3 7 4 1 5 2\n";
    EXPECT_EQ(load_vbf("g.txt", dir), builtin::gamma1());
}

TEST(GroupSpec, ParsesToyGenerators)
{
    const auto gens = parse_group_spec("3\n100010011|100\n100010001|010\n110010001|001\n");
    const auto toy = builtin::toy_generators();
    ASSERT_EQ(gens.size(), 3u);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(gens[i], toy[i]);
}

TEST(GroupSpec, Errors)
{
    auto e = capture([] { parse_group_spec("3\n100010011|100\n10001000|010\n"); });
    EXPECT_EQ(e.line(), 3u);
    e = capture([] { parse_group_spec("3\n100010011|1x0\n"); });
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 12u);
    e = capture([] { parse_group_spec("3\n110110001|100\n"); });
    EXPECT_NE(std::string(e.what()).find("singular"), std::string::npos);
    EXPECT_THROW(parse_group_spec("3\n"), ParseError);
    EXPECT_THROW(parse_group_spec("0\n"), ParseError);
}

TEST(CipherConfig, InlineAndBuiltins)
{
    const auto cfg = parse_cipher_config(
        R"({"bricks": ["builtin:gamma1", "builtin:gamma1"], "mixing": "builtin:toy", "rounds": 7})");
    const auto spec = cfg.build();
    EXPECT_EQ(spec.rounds(), 7u);
    EXPECT_EQ(round_map_table(spec), round_map_table(builtin_toy_spec()));

    const auto custom = parse_cipher_config(
        R"({"bricks": ["builtin:gamma1", "builtin:gamma1"],
            "mixing": ["011010","010000","111010","010111","000010","010110"],
            "schedule": "custom", "seed": 4})");
    EXPECT_EQ(custom.schedule, "custom");
    EXPECT_EQ(custom.seed, 4u);
    EXPECT_EQ(custom.mixing, builtin::toy_mixing());
    EXPECT_NO_THROW(custom.build());

    EXPECT_THROW(parse_cipher_config(R"({"bricks": [], "mixing": "builtin:toy"})"), ParseError);
    EXPECT_THROW(parse_cipher_config(R"({"bricks": ["builtin:gamma1"], "mixing": "builtin:toy", "schedule": "x"})"),
                 ParseError);
    EXPECT_THROW(parse_cipher_config(R"({"bricks": ["builtin:gamma1"], "mixing": "builtin:toy"})").build(),
                 InvalidCipher);
}

TEST(HexBlocks, TwoDigitsForSixBits)
{
    EXPECT_EQ(format_hex_word(0x05, 6), "05");
    EXPECT_EQ(format_hex_word(0x3f, 6), "3f");
    EXPECT_EQ(parse_hex_word("3F", 6), 0x3fu);
    EXPECT_EQ(parse_hex_word("0x2a", 6), 0x2au);
    EXPECT_THROW(parse_hex_word("40", 6), ParseError);
    EXPECT_THROW(parse_hex_word("", 6), ParseError);
}

TEST(Reports, AnalysisFields)
{
    const auto r = analyze(builtin::gamma1());
    const auto j = r.to_json();
    EXPECT_EQ(j["delta"], 4);
    EXPECT_EQ(j["apn"], false);
    EXPECT_EQ(j["anti_crooked"], false);
    EXPECT_EQ(j["crooked"], true);
    EXPECT_TRUE(j.contains("witnesses"));
    EXPECT_TRUE(j.contains("n_hat"));
    EXPECT_TRUE(j.contains("weakly_apn"));

    const auto x49 = analyze(from_power(49, default_field(6), FieldBasis::ascending(6))).to_json();
    EXPECT_EQ(x49["anti_crooked"], true);
    EXPECT_EQ(x49["permutation"], false);
    const auto x3 = analyze(from_power(3, default_field(3), FieldBasis::ascending(3))).to_json();
    EXPECT_EQ(x3["apn"], true);
    EXPECT_EQ(x3["crooked"], true);
}

TEST(Reports, HiddenSumVerification)
{
    const auto g = builtin::toy_generators();
    const auto ok = verify_hidden_sum({g.begin(), g.end()});
    EXPECT_TRUE(ok.passed());
    EXPECT_EQ(ok.to_json()["nilpotency_index"], 3);
    EXPECT_EQ(ok.to_json()["U_basis"], nlohmann::ordered_json::array({"010"}));

    const auto bad = verify_hidden_sum({g[0], AffineMap(parse_matrix_text("110\n010\n001\n"), BinVec::parse("010"))});
    EXPECT_FALSE(bad.passed());
    EXPECT_FALSE(bad.abelian);
}
