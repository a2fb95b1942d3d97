#include "hsum/gf2m.hpp"

#include <array>

namespace hsum {

namespace {

int degree_of(Word p) noexcept
{
    return p == 0 ? -1 : static_cast<int>(std::bit_width(p)) - 1;
}

Word poly_mod(Word a, Word b) noexcept
{
    const int db = degree_of(b);
    for (int da = degree_of(a); da >= db; da = degree_of(a))
        a ^= b << (da - db);
    return a;
}

void check_element(Word a, const FieldSpec& fs)
{
    if (a >= fs.order())
        throw WidthMismatch("field element " + std::to_string(a) + " does not fit GF(2^" +
                            std::to_string(fs.degree()) + ")");
}

} // namespace

bool is_irreducible(Word poly)
{
    const int m = degree_of(poly);
    if (m < 1) return false;
    // Trial division by every polynomial of degree 1..m/2.
    for (int deg = 1; deg <= m / 2; ++deg)
        for (Word d = Word{1} << deg; d < (Word{2} << deg); ++d)
            if (poly_mod(poly, d) == 0) return false;
    return true;
}

FieldSpec::FieldSpec(unsigned m, Word modulus) : m_(m), modulus_(modulus)
{
    if (m == 0 || m > kMaxFieldDegree)
        throw std::invalid_argument("field degree must be in 1..32");
    if (degree_of(modulus) != static_cast<int>(m))
        throw NotIrreducible("modulus " + modulus_string() + " does not have degree " +
                             std::to_string(m));
    if (!is_irreducible(modulus))
        throw NotIrreducible("modulus " + modulus_string() + " is reducible over F_2");
}

FieldSpec FieldSpec::parse(std::string_view modulus)
{
    if (modulus.size() < 2 || modulus.size() > kMaxFieldDegree + 1)
        throw std::invalid_argument("modulus literal must have 2..33 binary digits");
    Word p = 0;
    for (char c : modulus) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("modulus literal may only contain '0' and '1'");
        p = (p << 1) | static_cast<Word>(c == '1');
    }
    return FieldSpec(static_cast<unsigned>(degree_of(p)), p);
}

std::string FieldSpec::modulus_string() const
{
    std::string s;
    for (int i = degree_of(modulus_); i >= 0; --i) s += ((modulus_ >> i) & 1u) ? '1' : '0';
    return s.empty() ? "0" : s;
}

FieldSpec default_field(unsigned m)
{
    static constexpr std::array<Word, 17> kModuli = {
        0, 0,
        0b111,               // 2
        0b1011,              // 3
        0b10011,             // 4
        0b100101,            // 5
        0b1011011,           // 6
        0b10000011,          // 7
        0b100011011,         // 8
        0b1000010001,        // 9
        0b10000001001,       // 10
        0b100000000101,      // 11
        0b1000001010011,     // 12
        0b10000000011011,    // 13
        0b100010001000011,   // 14
        0b1000000000000011,  // 15
        0b10001000000001011, // 16
    };
    if (m < 2 || m >= kModuli.size())
        throw std::invalid_argument("no default field polynomial for degree " + std::to_string(m));
    return FieldSpec(m, kModuli[m]);
}

Word gf_mul(Word a, Word b, const FieldSpec& fs)
{
    check_element(a, fs);
    check_element(b, fs);
    const Word top = Word{1} << fs.degree();
    Word r = 0;
    while (b != 0) {
        if (b & 1u) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= fs.modulus();
    }
    return r;
}

Word gf_pow(Word a, std::uint64_t k, const FieldSpec& fs)
{
    check_element(a, fs);
    Word r = 1;
    while (k != 0) {
        if (k & 1u) r = gf_mul(r, a, fs);
        a = gf_mul(a, a, fs);
        k >>= 1;
    }
    return r;
}

FieldBasis::FieldBasis(BinMatrix basis) : forward_(basis), inverse_(mat_inverse(basis)) {}

BinVec field_to_vec(Word a, const FieldBasis& basis)
{
    if (a > low_mask(basis.dim()))
        throw WidthMismatch("field element wider than basis");
    return BinVec(basis.dim(), basis.to_vec(a));
}

Word vec_to_field(const BinVec& v, const FieldBasis& basis)
{
    if (v.width() != basis.dim())
        throw WidthMismatch("vector width does not match basis dimension");
    return basis.to_field(v.bits());
}

} // namespace hsum
