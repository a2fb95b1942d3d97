#pragma once

// Constants of the toy translation-based cipher with a hidden-sum trapdoor:
// F_8 with alpha^3 = alpha + 1, the S-box gamma1, the 6x6 mixing layer and
// the three generators of the 3-bit hidden sum.

#include <array>
#include <string_view>
#include <vector>

#include "hsum/affine.hpp"
#include "hsum/gf2m.hpp"
#include "hsum/hidden_sum.hpp"
#include "hsum/vbf.hpp"

namespace hsum::builtin {

inline constexpr std::string_view kToyFieldModulus = "1011";   // x^3 + x + 1
inline constexpr std::string_view kF64Modulus = "1011011";     // x^6 + x^4 + x^3 + x + 1

inline constexpr std::string_view kToyMixingText =
    "011010\n"
    "010000\n"
    "111010\n"
    "010111\n"
    "000010\n"
    "010110\n";

/// Field->coordinate basis under which gamma1 x gamma1 followed by x·λ is
/// affine for the toy product sum: the ascending polynomial basis.
inline constexpr std::string_view kToyBasisText =
    "100\n"
    "010\n"
    "001\n";

FieldSpec toy_field();
FieldSpec f64_field();
FieldBasis toy_basis();
BinMatrix toy_mixing();

/// Coefficients of gamma1 indexed by degree 0..6.
std::vector<Word> gamma1_coefficients();
Vbf gamma1();

/// τ_1, τ_2, τ_3 on F_2^3.
std::array<AffineMap, 3> toy_generators();
/// The 3-bit hidden sum ∘ generated by τ_1, τ_2, τ_3.
HiddenSum toy_sum();
/// ∘' = ∘ × ∘ on F_2^6.
HiddenSum toy_product_sum();

} // namespace hsum::builtin
