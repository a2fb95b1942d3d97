#include "hsum/trapdoor.hpp"

#include <random>
#include <string>

namespace hsum {

Word toy_brick_coefficients(Word x)
{
    const Word x1 = x & 1u;
    const Word x2 = (x >> 1) & 1u;
    const Word x3 = (x >> 2) & 1u;
    const Word l1 = x1;
    const Word l3 = x3;
    const Word l2 = (l1 & l3) ^ x2;
    return l1 | (l2 << 1) | (l3 << 2);
}

Word toy_coefficients(Word v)
{
    return toy_brick_coefficients(v & 7u) | (toy_brick_coefficients((v >> 3) & 7u) << 3);
}

AffineRepr::AffineRepr(std::shared_ptr<const CoordinateMap> coords, BinMatrix matrix, BinVec translation,
                       std::optional<BinMatrix> inverse)
    : coords_(std::move(coords)),
      matrix_(std::move(matrix)),
      inverse_(inverse ? std::move(*inverse) : mat_inverse(matrix_)),
      translation_(translation)
{
    if (!coords_)
        throw std::invalid_argument("affine representation needs a coordinate map");
    if (matrix_.dim() != coords_->width() || inverse_.dim() != coords_->width() ||
        translation_.width() != coords_->width())
        throw WidthMismatch("affine representation does not match the coordinate width");
}

Word AffineRepr::apply(Word v) const
{
    return coords_->point(matrix_.apply(coords_->coords(v)) ^ translation_.bits());
}

Word AffineRepr::apply_inverse(Word w) const
{
    return coords_->point(inverse_.apply(coords_->coords(w) ^ translation_.bits()));
}

BinVec apply_repr(const AffineRepr& repr, const BinVec& v)
{
    if (v.width() != repr.coordinates().width())
        throw WidthMismatch("block width does not match the representation");
    return BinVec(v.width(), repr.apply(v.bits()));
}

BinVec apply_repr_inverse(const AffineRepr& repr, const BinVec& w)
{
    if (w.width() != repr.coordinates().width())
        throw WidthMismatch("block width does not match the representation");
    return BinVec(w.width(), repr.apply_inverse(w.bits()));
}

ConsistencyFailure::ConsistencyFailure(Word plaintext)
    : std::runtime_error("oracle is not affine for the hidden sum (plaintext " +
                         std::to_string(plaintext) + ")"),
      plaintext_(plaintext)
{
}

namespace {

struct Probe {
    Word base;              // coordinates of the image of 0
    std::vector<Word> rows; // coordinates of the image of b_i, minus base
};

// Queries the oracle at 0 and at each basis vector b_i (coordinates e_i).
Probe probe(Oracle& oracle, const CoordinateMap& coords, AttackTranscript& transcript)
{
    const unsigned d = coords.width();
    auto ask = [&](Word x) {
        const Word y = oracle.query(BinVec(d, x)).bits();
        transcript.queries.push_back({oracle.direction(), x, y});
        if (oracle.direction() == OracleDirection::encrypt)
            ++transcript.encryption_count;
        else
            ++transcript.decryption_count;
        return coords.coords(y);
    };

    Probe p;
    p.base = ask(0);
    for (unsigned i = 0; i < d; ++i) p.rows.push_back(ask(coords.point(Word{1} << i)) ^ p.base);
    return p;
}

void spot_check(const AffineRepr& repr, Oracle& encryption, const AttackOptions& options)
{
    const unsigned d = repr.coordinates().width();
    const Word n = Word{1} << d;
    std::vector<Word> inputs;
    if (options.full_check) {
        for (Word x = 0; x < n; ++x) inputs.push_back(x);
    } else {
        std::mt19937_64 rng(options.seed);
        for (unsigned i = 0; i < options.spot_checks; ++i) inputs.push_back(rng() % n);
    }
    for (Word x : inputs)
        if (encryption.verify(BinVec(d, x)).bits() != repr.apply(x)) throw ConsistencyFailure(x);
}

void check_oracle(const Oracle& oracle, OracleDirection direction, const CoordinateMap& coords)
{
    if (oracle.direction() != direction)
        throw std::invalid_argument("oracle has the wrong direction for this role");
    if (oracle.width() != coords.width())
        throw WidthMismatch("oracle width does not match the coordinate map");
}

} // namespace

AttackResult reconstruct_cp(Oracle& encryption, std::shared_ptr<const CoordinateMap> coords,
                            const AttackOptions& options)
{
    if (!coords) throw std::invalid_argument("reconstruct_cp needs a coordinate map");
    check_oracle(encryption, OracleDirection::encrypt, *coords);

    AttackTranscript transcript;
    const auto p = probe(encryption, *coords, transcript);
    const unsigned d = coords->width();
    BinMatrix m(p.rows);
    if (!m.invertible()) throw ConsistencyFailure(0);

    AffineRepr repr(std::move(coords), std::move(m), BinVec(d, p.base));
    spot_check(repr, encryption, options);
    return {std::move(repr), std::move(transcript)};
}

AttackResult reconstruct_cpcc(Oracle& encryption, Oracle& decryption,
                              std::shared_ptr<const CoordinateMap> coords, const AttackOptions& options)
{
    if (!coords) throw std::invalid_argument("reconstruct_cpcc needs a coordinate map");
    check_oracle(encryption, OracleDirection::encrypt, *coords);
    check_oracle(decryption, OracleDirection::decrypt, *coords);

    AttackTranscript transcript;
    const auto fwd = probe(encryption, *coords, transcript);
    const auto bwd = probe(decryption, *coords, transcript);
    const unsigned d = coords->width();

    BinMatrix m(fwd.rows);
    BinMatrix m_inv(bwd.rows);
    if (m * m_inv != BinMatrix::identity(d))
        throw InverseMismatch("M * M^-1 is not the identity; encryption and decryption oracles disagree");

    AffineRepr repr(std::move(coords), std::move(m), BinVec(d, fwd.base), std::move(m_inv));
    spot_check(repr, encryption, options);
    return {std::move(repr), std::move(transcript)};
}

DeductionReport verify_global_deduction(const AffineRepr& repr, Oracle& encryption,
                                        const AttackTranscript& transcript)
{
    const unsigned d = repr.coordinates().width();
    if (encryption.width() != d)
        throw WidthMismatch("oracle width does not match the representation");
    DeductionReport r;
    r.attack_encryptions = transcript.encryption_count;
    r.attack_decryptions = transcript.decryption_count;
    const std::size_t before = encryption.verification_count();
    for (Word x = 0; x < (Word{1} << d); ++x) {
        ++r.verified_blocks;
        if (encryption.verify(BinVec(d, x)).bits() != repr.apply(x)) ++r.mismatches;
    }
    r.verification_queries = encryption.verification_count() - before;
    return r;
}

} // namespace hsum
