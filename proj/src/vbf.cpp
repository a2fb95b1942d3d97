#include "hsum/vbf.hpp"

#include <algorithm>
#include <string>

namespace hsum {

namespace {

void require_square(const Vbf& f, const char* what)
{
    if (f.in_width() != f.out_width())
        throw std::invalid_argument(std::string(what) + " requires m = n");
}

void require_square_permutation(const Vbf& f, const char* what)
{
    require_square(f, what);
    if (!f.is_permutation())
        throw NotPermutation(std::string(what) + " requires a permutation");
}

void require_direction(const Vbf& f, Word a)
{
    if (a == 0)
        throw std::invalid_argument("derivative direction must be nonzero");
    if (a >= f.size())
        throw WidthMismatch("derivative direction wider than the function input");
}

std::vector<Word> sorted_unique(std::span<const Word> set)
{
    std::vector<Word> s(set.begin(), set.end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

} // namespace

Vbf::Vbf(unsigned m, unsigned n, std::vector<Word> table, unsigned max_width)
    : m_(m), n_(n), table_(std::move(table))
{
    if (m == 0 || n == 0 || m > max_width || n > kMaxWidth)
        throw std::invalid_argument("table widths must satisfy 1 <= m <= " +
                                    std::to_string(max_width) + " and 1 <= n <= 64");
    if (table_.size() != (std::size_t{1} << m))
        throw std::invalid_argument("table for m=" + std::to_string(m) + " must have " +
                                    std::to_string(std::size_t{1} << m) + " entries, got " +
                                    std::to_string(table_.size()));
    const Word mask = low_mask(n);
    for (Word y : table_)
        if (y & ~mask)
            throw WidthMismatch("table value exceeds output width " + std::to_string(n));

    if (m == n) {
        std::vector<bool> seen(table_.size(), false);
        permutation_ = true;
        for (Word y : table_) {
            if (seen[y]) {
                permutation_ = false;
                break;
            }
            seen[y] = true;
        }
    }
}

Vbf Vbf::identity(unsigned m)
{
    std::vector<Word> t(std::size_t{1} << m);
    for (std::size_t x = 0; x < t.size(); ++x) t[x] = x;
    return Vbf(m, m, std::move(t));
}

BinVec Vbf::at(const BinVec& x) const
{
    if (x.width() != m_)
        throw WidthMismatch("input width does not match function");
    return BinVec(n_, table_[x.bits()]);
}

Vbf from_power(std::uint64_t d, const FieldSpec& fs, const FieldBasis& basis)
{
    if (basis.dim() != fs.degree())
        throw WidthMismatch("basis dimension does not match field degree");
    const unsigned m = fs.degree();
    std::vector<Word> t(std::size_t{1} << m);
    for (Word v = 0; v < t.size(); ++v)
        t[v] = basis.to_vec(gf_pow(basis.to_field(v), d, fs));
    return Vbf(m, m, std::move(t));
}

Vbf from_univariate(std::span<const Word> coeffs, const FieldSpec& fs, const FieldBasis& basis)
{
    if (basis.dim() != fs.degree())
        throw WidthMismatch("basis dimension does not match field degree");
    const unsigned m = fs.degree();
    std::vector<Word> t(std::size_t{1} << m);
    for (Word v = 0; v < t.size(); ++v) {
        const Word x = basis.to_field(v);
        Word acc = 0;
        for (auto c = coeffs.rbegin(); c != coeffs.rend(); ++c)
            acc = gf_mul(acc, x, fs) ^ *c;
        t[v] = basis.to_vec(acc);
    }
    return Vbf(m, m, std::move(t));
}

DerivativeImage derivative_image(const Vbf& f, Word a, const GroupOp& sum)
{
    require_direction(f, a);
    require_square(f, "derivative under a group operation");
    if (sum.width() != f.in_width())
        throw WidthMismatch("group operation width does not match function");

    std::vector<bool> hit(f.size(), false);
    for (Word x = 0; x < f.size(); ++x)
        hit[sum.combine(f(sum.combine(x, a)), sum.negate(f(x)))] = true;

    DerivativeImage out{a, {}};
    for (Word y = 0; y < hit.size(); ++y)
        if (hit[y]) out.image.push_back(y);
    return out;
}

DerivativeImage derivative_image(const Vbf& f, Word a)
{
    require_direction(f, a);
    std::vector<Word> img;
    img.reserve(f.size());
    for (Word x = 0; x < f.size(); ++x) img.push_back(f(x ^ a) ^ f(x));
    return DerivativeImage{a, sorted_unique(img)};
}

DiffSpectrum diff_uniformity(const Vbf& f, bool keep_counts)
{
    const std::size_t outputs = std::size_t{1} << f.out_width();
    DiffSpectrum s;
    s.out_width = f.out_width();
    if (keep_counts) {
        s.counts.assign(f.size() * outputs, 0);
        s.counts[0] = static_cast<std::uint32_t>(f.size());
    }

    std::vector<std::uint32_t> row(outputs);
    for (Word a = 1; a < f.size(); ++a) {
        std::fill(row.begin(), row.end(), 0);
        for (Word x = 0; x < f.size(); ++x) ++row[f(x ^ a) ^ f(x)];
        for (Word b = 0; b < outputs; ++b) {
            if (row[b] > s.delta) {
                s.delta = row[b];
                s.witness_a = a;
                s.witness_b = b;
            }
        }
        if (keep_counts)
            std::copy(row.begin(), row.end(), s.counts.begin() + static_cast<std::ptrdiff_t>(a * outputs));
    }
    return s;
}

bool is_apn(const Vbf& f)
{
    require_square(f, "APN test");
    return diff_uniformity(f).delta == 2;
}

bool is_weakly_apn(const Vbf& f)
{
    require_square(f, "weakly-APN test");
    const std::size_t bound = f.size() / 4;
    for (Word a = 1; a < f.size(); ++a)
        if (derivative_image(f, a).size() <= bound) return false;
    return true;
}

bool is_coset(std::span<const Word> set, const GroupOp& sum)
{
    if (set.empty())
        throw std::invalid_argument("coset test of an empty set");
    const auto s = sorted_unique(set);
    if (sum.is_xor()) return is_coset(s, sum.width());

    // Translate by the inverse of the smallest element, then test closure.
    const Word shift = sum.negate(s.front());
    std::vector<bool> member(std::size_t{1} << sum.width(), false);
    std::vector<Word> t;
    t.reserve(s.size());
    for (Word x : s) {
        const Word y = sum.combine(x, shift);
        member[y] = true;
        t.push_back(y);
    }
    if (!member[0]) return false;
    for (Word x : t)
        for (Word y : t)
            if (!member[sum.combine(x, y)]) return false;
    return true;
}

bool is_coset(std::span<const Word> set, unsigned width)
{
    if (set.empty())
        throw std::invalid_argument("coset test of an empty set");
    const auto s = sorted_unique(set);
    if (!std::has_single_bit(s.size())) return false;
    // A set of size 2^k is a coset iff its differences span only k dimensions.
    return affine_hull(s, width).dimension() == static_cast<unsigned>(std::countr_zero(s.size()));
}

AffineSubspace::AffineSubspace(Word point, std::span<const Word> directions, unsigned width)
    : basis_(echelon_basis(directions)), width_(width)
{
    if ((point & ~low_mask(width)) != 0)
        throw WidthMismatch("affine subspace base point wider than its space");
    base_ = reduce(point, basis_);
}

std::vector<Word> AffineSubspace::elements() const
{
    auto e = span_elements(basis_);
    for (auto& x : e) x ^= base_;
    std::sort(e.begin(), e.end());
    return e;
}

AffineSubspace affine_hull(std::span<const Word> set, unsigned width)
{
    if (set.empty())
        throw std::invalid_argument("affine hull of an empty set");
    std::vector<Word> diffs;
    diffs.reserve(set.size());
    for (Word x : set) diffs.push_back(x ^ set.front());
    return AffineSubspace(set.front(), diffs, width);
}

CosetProfile coset_profile(const Vbf& f, const GroupOp& sum)
{
    require_square(f, "coset profile");
    CosetProfile p;
    for (Word a = 1; a < f.size(); ++a) {
        const auto img = sum.is_xor() ? derivative_image(f, a) : derivative_image(f, a, sum);
        (is_coset(img.image, sum) ? p.coset_directions : p.non_coset_directions).push_back(a);
    }
    return p;
}

CosetProfile coset_profile(const Vbf& f)
{
    return coset_profile(f, XorOp(f.in_width()));
}

Verdict is_anti_crooked(const Vbf& f, const GroupOp& sum)
{
    require_square_permutation(f, "anti-crooked test");
    for (Word a = 1; a < f.size(); ++a) {
        const auto img = sum.is_xor() ? derivative_image(f, a) : derivative_image(f, a, sum);
        if (is_coset(img.image, sum)) return Verdict{false, a};
    }
    return Verdict{true, std::nullopt};
}

Verdict is_anti_crooked(const Vbf& f)
{
    return is_anti_crooked(f, XorOp(f.in_width()));
}

Verdict is_crooked(const Vbf& f, const GroupOp& sum)
{
    require_square_permutation(f, "crooked test");
    for (Word a = 1; a < f.size(); ++a) {
        const auto img = sum.is_xor() ? derivative_image(f, a) : derivative_image(f, a, sum);
        if (!is_coset(img.image, sum)) return Verdict{false, a};
    }
    return Verdict{true, std::nullopt};
}

Verdict is_crooked(const Vbf& f)
{
    return is_crooked(f, XorOp(f.in_width()));
}

const char* to_string(PowerClass c) noexcept
{
    return c == PowerClass::crooked ? "crooked" : "anti_crooked";
}

PowerClass power_ac_dichotomy(std::uint64_t d, const FieldSpec& fs, const FieldBasis& basis)
{
    const auto f = from_power(d, fs, basis);
    const auto img = derivative_image(f, basis.to_vec(1));
    return is_coset(img.image, f.out_width()) ? PowerClass::crooked : PowerClass::anti_crooked;
}

std::vector<Word> component_space(const Vbf& f, Word a)
{
    const auto img = derivative_image(f, a);
    const Word y0 = img.image.front();
    const std::size_t outputs = std::size_t{1} << f.out_width();
    std::vector<Word> members;
    for (Word v = 1; v < outputs; ++v) {
        const unsigned c = parity(y0 & v);
        bool constant = true;
        for (Word y : img.image) {
            if (parity(y & v) != c) {
                constant = false;
                break;
            }
        }
        if (constant) members.push_back(v);
    }
    return echelon_basis(members);
}

std::uint64_t n_hat(const Vbf& f)
{
    std::size_t t = 0;
    for (Word a = 1; a < f.size(); ++a) t = std::max(t, component_space(f, a).size());
    return (std::uint64_t{1} << t) - 1;
}

Vbf ea_transform(const Vbf& f, const AffineMap& outer, const AffineMap& inner,
                 const AffineFunction& added)
{
    require_square(f, "EA transform");
    const unsigned m = f.in_width();
    if (outer.width() != m || inner.width() != m || added.width() != m)
        throw WidthMismatch("EA transform maps must match the function width");
    std::vector<Word> t(f.size());
    for (Word x = 0; x < f.size(); ++x) t[x] = outer.apply(f(inner.apply(x))) ^ added.apply(x);
    return Vbf(m, m, std::move(t));
}

Vbf inverse_vbf(const Vbf& f)
{
    require_square_permutation(f, "inversion");
    std::vector<Word> t(f.size());
    for (Word x = 0; x < f.size(); ++x) t[f(x)] = x;
    return Vbf(f.in_width(), f.out_width(), std::move(t));
}

} // namespace hsum
