#include "hsum/cipher.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include "hsum/builtin.hpp"
#include "hsum/hidden_sum.hpp"

namespace hsum {

BinVec default_key_schedule(const BinVec& key, unsigned round)
{
    const unsigned d = key.width();
    const unsigned r = round % d;
    if (r == 0) return key;
    const Word k = key.bits();
    return BinVec(d, ((k << r) | (k >> (d - r))) & low_mask(d));
}

KeySchedule rotate_schedule()
{
    return [](const BinVec& key, unsigned round) { return default_key_schedule(key, round); };
}

KeySchedule random_permutation_schedule(unsigned width, std::uint64_t seed)
{
    if (width == 0 || width > 16)
        throw std::invalid_argument("random permutation schedule supports widths 1..16");
    return [width, seed](const BinVec& key, unsigned round) {
        if (key.width() != width)
            throw WidthMismatch("session key width does not match the schedule");
        // Fisher-Yates driven directly by mt19937_64 so tables are identical
        // across standard library implementations.
        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (round + 1)));
        std::vector<Word> perm(std::size_t{1} << width);
        for (Word i = 0; i < perm.size(); ++i) perm[i] = i;
        for (std::size_t i = perm.size() - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
        return BinVec(width, perm[key.bits()]);
    };
}

CipherSpec::CipherSpec(std::vector<Vbf> bricks, BinMatrix mixing, unsigned rounds, KeySchedule schedule)
    : bricks_(std::move(bricks)),
      mixing_(std::move(mixing)),
      mixing_inverse_(BinMatrix::identity(1)),
      rounds_(rounds),
      schedule_(std::move(schedule))
{
    if (bricks_.empty())
        throw InvalidCipher("a cipher needs at least one brick");
    const unsigned m = bricks_.front().in_width();
    for (const auto& b : bricks_) {
        if (b.in_width() != m || b.out_width() != m)
            throw InvalidCipher("all bricks must be m-bit to m-bit with the same m");
        if (!b.is_permutation())
            throw InvalidCipher("every brick must be a permutation");
        if (b(0) != 0)
            throw InvalidCipher("every brick must fix 0");
        inverse_bricks_.push_back(inverse_vbf(b));
    }
    if (mixing_.dim() != m * bricks_.size())
        throw InvalidCipher("mixing layer must be " + std::to_string(m * bricks_.size()) + "x" +
                            std::to_string(m * bricks_.size()));
    if (!mixing_.invertible())
        throw InvalidCipher("mixing layer is singular (rank " + std::to_string(mixing_.rank()) + ")");
    mixing_inverse_ = mat_inverse(mixing_);
    if (rounds_ == 0 || rounds_ > kMaxRounds)
        throw InvalidCipher("round count must be in 1.." + std::to_string(kMaxRounds));
    if (!schedule_)
        throw InvalidCipher("missing key schedule");

    const unsigned d = width();
    if (d <= 8) {
        const Word n = Word{1} << d;
        for (unsigned h = 1; h <= rounds_ && !h0_; ++h) {
            std::vector<bool> hit(n, false);
            Word distinct = 0;
            for (Word k = 0; k < n; ++k) {
                const Word rk = round_key(BinVec(d, k), h).bits();
                if (!hit[rk]) ++distinct;
                hit[rk] = true;
            }
            if (distinct == n) h0_ = h;
        }
        if (!h0_)
            throw InvalidCipher("no round index has a surjective key schedule");
    }
}

BinVec CipherSpec::round_key(const BinVec& key, unsigned round) const
{
    if (key.width() != width())
        throw WidthMismatch("session key width does not match the cipher");
    auto rk = schedule_(key, round);
    if (rk.width() != width())
        throw WidthMismatch("key schedule returned a round key of the wrong width");
    return rk;
}

CipherSpec CipherSpec::with_rounds(unsigned rounds) const
{
    return CipherSpec(bricks_, mixing_, rounds, schedule_);
}

CipherSpec CipherSpec::with_schedule(KeySchedule schedule) const
{
    return CipherSpec(bricks_, mixing_, rounds_, std::move(schedule));
}

CipherSpec CipherSpec::with_bricks(std::vector<Vbf> bricks) const
{
    return CipherSpec(std::move(bricks), mixing_, rounds_, schedule_);
}

CipherSpec CipherSpec::with_mixing(BinMatrix mixing) const
{
    return CipherSpec(bricks_, std::move(mixing), rounds_, schedule_);
}

namespace {

Word bricklayer(const std::vector<Vbf>& bricks, Word x)
{
    const unsigned m = bricks.front().in_width();
    const Word mask = low_mask(m);
    Word out = 0;
    for (unsigned i = 0; i < bricks.size(); ++i) out |= bricks[i]((x >> (i * m)) & mask) << (i * m);
    return out;
}

void check_block(const CipherSpec& spec, const BinVec& x)
{
    if (x.width() != spec.width())
        throw WidthMismatch("block width does not match the cipher");
}

} // namespace

Word gamma_apply(const CipherSpec& spec, Word x) { return bricklayer(spec.bricks(), x); }

Word gamma_inverse_apply(const CipherSpec& spec, Word x) { return bricklayer(spec.inverse_bricks(), x); }

Word lambda_apply(const CipherSpec& spec, Word x) { return spec.mixing().apply(x); }

BinVec gamma_apply(const CipherSpec& spec, const BinVec& x)
{
    check_block(spec, x);
    return BinVec(spec.width(), gamma_apply(spec, x.bits()));
}

BinVec lambda_apply(const CipherSpec& spec, const BinVec& x)
{
    check_block(spec, x);
    return BinVec(spec.width(), lambda_apply(spec, x.bits()));
}

Word round_apply(const CipherSpec& spec, Word x, Word round_key)
{
    return lambda_apply(spec, gamma_apply(spec, x)) ^ round_key;
}

BinVec encrypt(const CipherSpec& spec, const BinVec& key, const BinVec& plaintext)
{
    check_block(spec, plaintext);
    Word x = plaintext.bits();
    for (unsigned h = 1; h <= spec.rounds(); ++h) x = round_apply(spec, x, spec.round_key(key, h).bits());
    return BinVec(spec.width(), x);
}

BinVec decrypt(const CipherSpec& spec, const BinVec& key, const BinVec& ciphertext)
{
    check_block(spec, ciphertext);
    Word y = ciphertext.bits();
    for (unsigned h = spec.rounds(); h >= 1; --h) {
        y ^= spec.round_key(key, h).bits();
        y = gamma_inverse_apply(spec, spec.mixing_inverse().apply(y));
    }
    return BinVec(spec.width(), y);
}

std::vector<Word> encryption_table(const CipherSpec& spec, const BinVec& key)
{
    std::vector<Word> round_keys;
    for (unsigned h = 1; h <= spec.rounds(); ++h) round_keys.push_back(spec.round_key(key, h).bits());
    std::vector<Word> t(std::size_t{1} << spec.width());
    for (Word x = 0; x < t.size(); ++x) {
        Word y = x;
        for (Word rk : round_keys) y = round_apply(spec, y, rk);
        t[x] = y;
    }
    return t;
}

std::vector<Word> round_map_table(const CipherSpec& spec)
{
    std::vector<Word> t(std::size_t{1} << spec.width());
    for (Word x = 0; x < t.size(); ++x) t[x] = round_apply(spec, x, 0);
    return t;
}

const char* to_string(MixingConvention c) noexcept
{
    return c == MixingConvention::row ? "row (x*L)" : "column (L*x)";
}

BasisCalibration calibrate_toy_basis(const BinMatrix& mixing)
{
    if (mixing.dim() != 6)
        throw WidthMismatch("toy calibration needs a 6x6 mixing layer");
    const auto fs = builtin::toy_field();
    const auto coeffs = builtin::gamma1_coefficients();
    const auto sum = builtin::toy_product_sum();

    std::vector<std::vector<Word>> translations;
    for (unsigned i = 0; i < 6; ++i) translations.push_back(translation_table(BinVec::unit(6, i)));

    std::optional<BasisCalibration> first;
    std::size_t valid = 0;
    for (Word code = 0; code < 512; ++code) {
        const BinMatrix b({(code >> 6) & 7, (code >> 3) & 7, code & 7});
        if (!b.invertible()) continue;
        const FieldBasis basis(b);
        const auto sbox = from_univariate(coeffs, fs, basis);
        for (auto convention : {MixingConvention::row, MixingConvention::column}) {
            const auto lam = convention == MixingConvention::row ? mixing : mixing.transpose();
            std::vector<Word> round(64);
            for (Word x = 0; x < 64; ++x) round[x] = lam.apply(sbox(x & 7) | (sbox(x >> 3) << 3));
            bool ok = agl_membership(round, sum);
            for (const auto& t : translations) ok = ok && agl_membership(t, sum);
            if (!ok) continue;
            ++valid;
            if (!first) first = BasisCalibration{basis, convention};
        }
    }
    if (!first)
        throw std::logic_error("no field basis makes the toy round map affine for the hidden sum");
    first->valid_count = valid;
    return *first;
}

// The pinned basis is the first hit of calibrate_toy_basis, which scans bases
// in lexicographic order of their row codes (row 0 most significant).
CipherSpec builtin_toy_spec(unsigned rounds, KeySchedule schedule)
{
    const auto fs = builtin::toy_field();
    const auto sbox = from_univariate(builtin::gamma1_coefficients(), fs, builtin::toy_basis());
    return CipherSpec({sbox, sbox}, builtin::toy_mixing(), rounds, std::move(schedule));
}

Oracle::Oracle(OracleDirection direction, unsigned width, std::function<Word(Word)> fn)
    : direction_(direction), width_(width), fn_(std::move(fn))
{
}

Word Oracle::call(const BinVec& input)
{
    if (input.width() != width_)
        throw WidthMismatch("oracle input width does not match");
    return fn_(input.bits());
}

BinVec Oracle::query(const BinVec& input)
{
    const Word y = call(input);
    ++queries_;
    return BinVec(width_, y);
}

BinVec Oracle::verify(const BinVec& input)
{
    const Word y = call(input);
    ++verifications_;
    return BinVec(width_, y);
}

Oracle make_encryption_oracle(const CipherSpec& spec, const BinVec& key)
{
    return Oracle(OracleDirection::encrypt, spec.width(),
                  [spec, key](Word x) { return encrypt(spec, key, BinVec(spec.width(), x)).bits(); });
}

Oracle make_decryption_oracle(const CipherSpec& spec, const BinVec& key)
{
    return Oracle(OracleDirection::decrypt, spec.width(),
                  [spec, key](Word y) { return decrypt(spec, key, BinVec(spec.width(), y)).bits(); });
}

Oracle make_table_oracle(OracleDirection direction, std::vector<Word> table)
{
    const auto width = static_cast<unsigned>(std::countr_zero(table.size()));
    if (!std::has_single_bit(table.size()) || width == 0)
        throw std::invalid_argument("oracle table size must be a power of two >= 2");
    return Oracle(direction, width, [t = std::move(table)](Word x) { return t.at(x); });
}

} // namespace hsum
