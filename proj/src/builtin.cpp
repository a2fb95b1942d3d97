#include "hsum/builtin.hpp"

namespace hsum::builtin {

FieldSpec toy_field() { return FieldSpec::parse(kToyFieldModulus); }
FieldSpec f64_field() { return FieldSpec::parse(kF64Modulus); }
FieldBasis toy_basis() { return FieldBasis(parse_matrix_text(kToyBasisText)); }
BinMatrix toy_mixing() { return parse_matrix_text(kToyMixingText); }

std::vector<Word> gamma1_coefficients()
{
    // alpha^5 x^6 + alpha x^5 + alpha^2 x^4 + alpha^5 x^3 + alpha x^2 + alpha x
    const auto fs = toy_field();
    const Word a = 0b010;
    const Word a2 = gf_pow(a, 2, fs);
    const Word a5 = gf_pow(a, 5, fs);
    return {0, a, a, a5, a2, a, a5};
}

Vbf gamma1()
{
    return from_univariate(gamma1_coefficients(), toy_field(), toy_basis());
}

std::array<AffineMap, 3> toy_generators()
{
    return {
        AffineMap(parse_matrix_text("100\n010\n011\n"), BinVec::parse("100")),
        AffineMap(parse_matrix_text("100\n010\n001\n"), BinVec::parse("010")),
        AffineMap(parse_matrix_text("110\n010\n001\n"), BinVec::parse("001")),
    };
}

HiddenSum toy_sum()
{
    const auto g = toy_generators();
    return HiddenSum(build_group({g.begin(), g.end()}));
}

HiddenSum toy_product_sum()
{
    const std::array<HiddenSum, 2> parts{toy_sum(), toy_sum()};
    return product_sum(parts);
}

} // namespace hsum::builtin
