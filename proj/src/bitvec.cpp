#include "hsum/bitvec.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace hsum {

namespace {

void check_width(unsigned width)
{
    if (width == 0 || width > kMaxWidth)
        throw std::invalid_argument("vector width must be in 1..64, got " + std::to_string(width));
}

} // namespace

BinVec::BinVec(unsigned width, Word bits) : width_(width), bits_(bits)
{
    check_width(width);
    if ((bits & ~low_mask(width)) != 0)
        throw WidthMismatch("bits exceed vector width " + std::to_string(width));
}

BinVec BinVec::unit(unsigned width, unsigned index)
{
    if (index >= width)
        throw std::out_of_range("unit vector index out of range");
    return BinVec(width, Word{1} << index);
}

BinVec BinVec::parse(std::string_view text)
{
    Word bits = 0;
    for (std::size_t j = 0; j < text.size(); ++j) {
        if (text[j] == '1')
            bits |= Word{1} << j;
        else if (text[j] != '0')
            throw std::invalid_argument("bit string may only contain '0' and '1'");
    }
    return BinVec(static_cast<unsigned>(text.size()), bits);
}

bool BinVec::operator[](unsigned i) const
{
    if (i >= width_)
        throw std::out_of_range("bit index out of range");
    return (bits_ >> i) & 1u;
}

BinVec& BinVec::operator^=(const BinVec& other)
{
    if (other.width_ != width_)
        throw WidthMismatch("xor of vectors with widths " + std::to_string(width_) + " and " +
                            std::to_string(other.width_));
    bits_ ^= other.bits_;
    return *this;
}

std::string BinVec::to_string() const
{
    std::string s(width_, '0');
    for (unsigned j = 0; j < width_; ++j)
        if ((bits_ >> j) & 1u) s[j] = '1';
    return s;
}

SingularMatrix::SingularMatrix(unsigned dim, unsigned rank)
    : std::domain_error("singular " + std::to_string(dim) + "x" + std::to_string(dim) +
                        " matrix (rank " + std::to_string(rank) + ")"),
      rank_(rank)
{
}

BinMatrix::BinMatrix(std::vector<Word> rows) : rows_(std::move(rows))
{
    check_width(dim());
    const Word mask = low_mask(dim());
    for (Word r : rows_)
        if ((r & ~mask) != 0)
            throw WidthMismatch("matrix row wider than its dimension " + std::to_string(dim()));
    rank_ = rank_of(rows_);
}

BinMatrix BinMatrix::identity(unsigned dim)
{
    std::vector<Word> rows(dim);
    for (unsigned i = 0; i < dim; ++i) rows[i] = Word{1} << i;
    return BinMatrix(std::move(rows));
}

BinMatrix BinMatrix::from_rows(std::span<const BinVec> rows)
{
    std::vector<Word> words;
    words.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.width() != rows.size())
            throw WidthMismatch("matrix rows must have width equal to the row count");
        words.push_back(r.bits());
    }
    return BinMatrix(std::move(words));
}

BinMatrix BinMatrix::transpose() const
{
    std::vector<Word> out(dim(), 0);
    for (unsigned i = 0; i < dim(); ++i)
        for (unsigned j = 0; j < dim(); ++j)
            if (get(i, j)) out[j] |= Word{1} << i;
    return BinMatrix(std::move(out));
}

BinMatrix BinMatrix::with_flipped(unsigned i, unsigned j) const
{
    if (i >= dim() || j >= dim())
        throw std::out_of_range("matrix index out of range");
    auto rows = rows_;
    rows[i] ^= Word{1} << j;
    return BinMatrix(std::move(rows));
}

BinMatrix operator*(const BinMatrix& a, const BinMatrix& b)
{
    if (a.dim() != b.dim())
        throw WidthMismatch("matrix product of mismatched dimensions");
    std::vector<Word> rows(a.dim());
    for (unsigned i = 0; i < a.dim(); ++i) rows[i] = b.apply(a.rows_[i]);
    return BinMatrix(std::move(rows));
}

BinVec mat_vec_mul(const BinVec& x, const BinMatrix& m)
{
    if (x.width() != m.dim())
        throw WidthMismatch("vector of width " + std::to_string(x.width()) + " times " +
                            std::to_string(m.dim()) + "x" + std::to_string(m.dim()) + " matrix");
    return BinVec(m.dim(), m.apply(x.bits()));
}

BinMatrix mat_inverse(const BinMatrix& m)
{
    if (!m.invertible())
        throw SingularMatrix(m.dim(), m.rank());

    // Gauss-Jordan on [M | I].
    const unsigned d = m.dim();
    std::vector<Word> left(m.rows().begin(), m.rows().end());
    std::vector<Word> right(d);
    for (unsigned i = 0; i < d; ++i) right[i] = Word{1} << i;

    for (unsigned col = 0; col < d; ++col) {
        unsigned pivot = col;
        while (((left[pivot] >> col) & 1u) == 0) ++pivot;
        std::swap(left[pivot], left[col]);
        std::swap(right[pivot], right[col]);
        for (unsigned r = 0; r < d; ++r) {
            if (r != col && ((left[r] >> col) & 1u)) {
                left[r] ^= left[col];
                right[r] ^= right[col];
            }
        }
    }
    return BinMatrix(std::move(right));
}

std::vector<Word> echelon_basis(std::span<const Word> vectors)
{
    std::vector<Word> basis;
    for (Word v : vectors) {
        v = reduce(v, basis);
        if (v == 0) continue;
        const Word lead = std::bit_floor(v);
        for (auto& b : basis)
            if (b & lead) b ^= v;
        basis.push_back(v);
        std::sort(basis.begin(), basis.end(), std::greater<>());
    }
    return basis;
}

Word reduce(Word x, std::span<const Word> echelon)
{
    for (Word b : echelon)
        if (x & std::bit_floor(b)) x ^= b;
    return x;
}

unsigned rank_of(std::span<const Word> vectors)
{
    return static_cast<unsigned>(echelon_basis(vectors).size());
}

std::vector<Word> orthogonal_complement(std::span<const Word> vectors, unsigned width)
{
    // Solve <v, b> = 0 for each basis row b: pivot columns are determined by the
    // reduced echelon form, free columns parametrize the solution space.
    const auto basis = echelon_basis(vectors);
    Word pivots = 0;
    for (Word b : basis) pivots |= std::bit_floor(b);

    std::vector<Word> out;
    for (unsigned free = 0; free < width; ++free) {
        const Word f = Word{1} << free;
        if (pivots & f) continue;
        Word v = f;
        for (Word b : basis)
            if (b & f) v |= std::bit_floor(b);
        out.push_back(v);
    }
    return out;
}

std::vector<Word> span_elements(std::span<const Word> basis)
{
    std::vector<Word> out{0};
    out.reserve(std::size_t{1} << basis.size());
    for (Word b : basis) {
        const std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] ^ b);
    }
    return out;
}

BinMatrix parse_matrix_text(std::string_view text)
{
    std::vector<Word> rows;
    std::size_t width = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    unsigned lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        if (width == 0) width = line.size();
        if (line.size() != width)
            throw std::invalid_argument("matrix line " + std::to_string(lineno) + ": expected " +
                                        std::to_string(width) + " columns, got " +
                                        std::to_string(line.size()));
        for (std::size_t j = 0; j < line.size(); ++j)
            if (line[j] != '0' && line[j] != '1')
                throw std::invalid_argument("matrix line " + std::to_string(lineno) + ", column " +
                                            std::to_string(j + 1) + ": expected '0' or '1'");
        rows.push_back(BinVec::parse(line).bits());
    }
    if (rows.size() != width)
        throw std::invalid_argument("matrix is not square: " + std::to_string(rows.size()) +
                                    " rows of width " + std::to_string(width));
    return BinMatrix(std::move(rows));
}

std::string format_matrix_text(const BinMatrix& m)
{
    std::string out;
    for (Word r : m.rows()) {
        out += BinVec(m.dim(), r).to_string();
        out += '\n';
    }
    return out;
}

} // namespace hsum
