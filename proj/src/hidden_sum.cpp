#include "hsum/hidden_sum.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <string>

#include "hsum/vbf.hpp"

namespace hsum {

RegularGroup build_group(std::vector<AffineMap> generators)
{
    if (generators.empty())
        throw std::invalid_argument("a group needs at least one generator");
    const unsigned d = generators.front().width();
    if (d > kMaxGroupWidth)
        throw std::invalid_argument("group width above " + std::to_string(kMaxGroupWidth));
    for (const auto& g : generators)
        if (g.width() != d)
            throw WidthMismatch("generators of different widths");

    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = i + 1; j < generators.size(); ++j)
            if (generators[i].after(generators[j]) != generators[j].after(generators[i]))
                throw GroupError(GroupError::Kind::not_abelian,
                                 "generators " + std::to_string(i) + " and " + std::to_string(j) +
                                     " do not commute",
                                 std::pair{i, j});

    // Breadth-first closure; in a finite group the products of generators are
    // closed under inversion, so this is the generated subgroup.
    const std::size_t cap = std::size_t{1} << d;
    std::set<AffineMap> seen{AffineMap::identity(d)};
    std::deque<AffineMap> queue{AffineMap::identity(d)};
    while (!queue.empty()) {
        const AffineMap e = queue.front();
        queue.pop_front();
        for (const auto& g : generators) {
            auto c = g.after(e);
            if (seen.insert(c).second) {
                if (seen.size() > cap)
                    throw GroupError(GroupError::Kind::closure_overflow,
                                     "closure exceeds " + std::to_string(cap) + " elements");
                queue.push_back(std::move(c));
            }
        }
    }

    std::vector<std::optional<AffineMap>> by_image(cap);
    for (const auto& e : seen) {
        auto& slot = by_image[e.translation().bits()];
        if (slot)
            throw GroupError(GroupError::Kind::not_regular,
                             "two elements map 0 to " + e.translation().to_string());
        slot = e;
    }
    if (seen.size() != cap)
        throw GroupError(GroupError::Kind::not_regular,
                         "orbit of 0 has " + std::to_string(seen.size()) + " points, expected " +
                             std::to_string(cap));

    std::vector<AffineMap> elements;
    elements.reserve(cap);
    for (auto& slot : by_image) elements.push_back(std::move(*slot));
    return RegularGroup(d, std::move(generators), std::move(elements));
}

HiddenSum::HiddenSum(RegularGroup group) : group_(std::move(group))
{
    const auto id = AffineMap::identity(width());
    for (const auto& g : group_.generators())
        if (g.after(g) != id)
            throw GroupError(GroupError::Kind::not_elementary,
                             "generator of order greater than 2; only elementary abelian groups are supported");
}

HiddenSum HiddenSum::translations(unsigned width)
{
    std::vector<AffineMap> gens;
    for (unsigned i = 0; i < width; ++i) gens.push_back(AffineMap::translation(BinVec::unit(width, i)));
    return HiddenSum(build_group(std::move(gens)));
}

BinVec HiddenSum::op(const BinVec& x, const BinVec& y) const
{
    if (x.width() != width() || y.width() != width())
        throw WidthMismatch("hidden sum operands must match the sum width");
    return BinVec(width(), combine(x.bits(), y.bits()));
}

BinVec HiddenSum::neg(const BinVec& x) const
{
    if (x.width() != width())
        throw WidthMismatch("hidden sum operand must match the sum width");
    return BinVec(width(), negate(x.bits()));
}

BinVec hidden_op(const HiddenSum& hs, const BinVec& x, const BinVec& y) { return hs.op(x, y); }
BinVec hidden_neg(const HiddenSum& hs, const BinVec& x) { return hs.neg(x); }

BinMatrix kappa(const HiddenSum& hs, const BinVec& y)
{
    if (y.width() != hs.width())
        throw WidthMismatch("kappa index must match the sum width");
    return hs.kappa(y.bits());
}

KappaReport check_kappa_homomorphism(std::span<const AffineMap> elements)
{
    KappaReport r;
    const Word n = elements.size();
    auto op = [&](Word x, Word y) { return elements[y].apply(x); };
    auto neg = [&](Word y) {
        for (Word z = 0; z < n; ++z)
            if (op(y, z) == 0) return z;
        return y;
    };

    for (Word x = 0; x < n && r.homomorphism; ++x) {
        for (Word y = 0; y < n; ++y) {
            // κ_y κ_x as maps is v ↦ (v·K_x)·K_y, i.e. K_x * K_y in row convention.
            if (elements[op(x, y)].matrix() != elements[x].matrix() * elements[y].matrix()) {
                r.homomorphism = false;
                r.witness = std::pair{x, y};
                break;
            }
        }
    }
    for (Word y = 0; y < n; ++y) {
        const auto& k = elements[y].matrix();
        if (!k.invertible() || elements[neg(y)].matrix() != mat_inverse(k)) {
            r.inversion = false;
            if (!r.witness) r.witness = std::pair{y, neg(y)};
            break;
        }
    }
    return r;
}

KappaReport check_kappa_homomorphism(const HiddenSum& hs)
{
    return check_kappa_homomorphism(hs.elements());
}

bool Subspace::contains(Word x) const
{
    return std::binary_search(elements.begin(), elements.end(), x);
}

Subspace compute_U(const HiddenSum& hs)
{
    const auto id = BinMatrix::identity(hs.width());
    Subspace u;
    for (Word y = 0; y < hs.elements().size(); ++y)
        if (hs.kappa(y) == id) u.elements.push_back(y);
    u.basis = echelon_basis(u.elements);
    if (u.size() < 2)
        throw std::logic_error("U is trivial; the element table is not a unipotent regular group");
    return u;
}

Word ring_product(const HiddenSum& hs, Word x, Word y)
{
    return x ^ y ^ hs.combine(x, y);
}

BinVec ring_product(const HiddenSum& hs, const BinVec& x, const BinVec& y)
{
    if (x.width() != hs.width() || y.width() != hs.width())
        throw WidthMismatch("ring operands must match the sum width");
    return BinVec(hs.width(), ring_product(hs, x.bits(), y.bits()));
}

RingReport check_ring_axioms(const HiddenSum& hs)
{
    const Word n = hs.elements().size();
    std::vector<Word> prod(n * n);
    for (Word x = 0; x < n; ++x)
        for (Word y = 0; y < n; ++y) prod[x * n + y] = ring_product(hs, x, y);
    auto mul = [&](Word x, Word y) { return prod[x * n + y]; };

    RingReport r;
    r.commutative = true;
    r.associative = true;
    r.distributive = true;
    for (Word x = 0; x < n; ++x) {
        for (Word y = 0; y < n; ++y) {
            if (mul(x, y) != mul(y, x)) r.commutative = false;
            for (Word z = 0; z < n; ++z) {
                if (mul(mul(x, y), z) != mul(x, mul(y, z))) r.associative = false;
                if (mul(x, y ^ z) != (mul(x, y) ^ mul(x, z))) r.distributive = false;
            }
        }
    }

    // V^1 = V, V^(k+1) = additive span of V^k · V.
    std::vector<Word> power(n);
    std::iota(power.begin(), power.end(), Word{0});
    for (unsigned k = 1; k <= hs.width() + 1; ++k) {
        if (power.size() == 1) {
            r.nilpotent = true;
            r.nilpotency_index = k;
            break;
        }
        std::vector<Word> products;
        for (Word x : power)
            for (Word y = 0; y < n; ++y) products.push_back(mul(x, y));
        power = span_elements(echelon_basis(products));
    }
    return r;
}

bool check_uV_subgroup(const HiddenSum& hs, Word u)
{
    const Word n = hs.elements().size();
    if (u >= n)
        throw WidthMismatch("u wider than the sum");
    std::vector<bool> member(n, false);
    std::vector<Word> uv;
    for (Word v = 0; v < n; ++v) {
        const Word p = ring_product(hs, u, v);
        if (!member[p]) uv.push_back(p);
        member[p] = true;
    }
    if (!member[0]) return false;
    for (Word a : uv)
        for (Word b : uv)
            if (!member[a ^ b] || !member[hs.combine(a, b)]) return false;
    return true;
}

bool agl_membership(std::span<const Word> g, const HiddenSum& hs)
{
    const Word n = hs.elements().size();
    if (g.size() != n)
        throw WidthMismatch("permutation table size does not match the sum");
    std::vector<bool> seen(n, false);
    for (Word y : g) {
        if (y >= n || seen[y])
            throw NotPermutation("agl_membership requires a bijection of V");
        seen[y] = true;
    }

    const Word shift = hs.negate(g[0]);
    std::vector<Word> h(n);
    for (Word x = 0; x < n; ++x) h[x] = hs.combine(g[x], shift);
    for (Word x = 0; x < n; ++x)
        for (Word y = 0; y < n; ++y)
            if (h[hs.combine(x, y)] != hs.combine(h[x], h[y])) return false;
    return true;
}

std::vector<Word> translation_table(const BinVec& v)
{
    std::vector<Word> t(std::size_t{1} << v.width());
    for (Word x = 0; x < t.size(); ++x) t[x] = x ^ v.bits();
    return t;
}

HiddenSum product_sum(std::span<const HiddenSum> parts)
{
    if (parts.empty())
        throw std::invalid_argument("product of zero sums");
    unsigned total = 0;
    for (const auto& p : parts) total += p.width();
    if (total > kMaxGroupWidth)
        throw std::invalid_argument("product width above " + std::to_string(kMaxGroupWidth));

    std::vector<AffineMap> gens;
    unsigned offset = 0;
    for (const auto& p : parts) {
        for (unsigned j = 0; j < p.width(); ++j) {
            const auto& e = p.group().element(Word{1} << j);
            std::vector<Word> rows(total);
            for (unsigned i = 0; i < total; ++i) rows[i] = Word{1} << i;
            for (unsigned i = 0; i < p.width(); ++i) rows[offset + i] = e.matrix().row(i) << offset;
            gens.emplace_back(BinMatrix(std::move(rows)),
                              BinVec(total, e.translation().bits() << offset));
        }
        offset += p.width();
    }
    return HiddenSum(build_group(std::move(gens)));
}

CoordinateMap::CoordinateMap(HiddenSum sum, std::vector<BinVec> basis)
    : sum_(std::move(sum)), basis_(std::move(basis))
{
    const unsigned d = sum_.width();
    if (basis_.size() != d)
        throw NotABasis("a basis of (V, op) needs exactly " + std::to_string(d) + " vectors");
    for (const auto& b : basis_)
        if (b.width() != d)
            throw WidthMismatch("basis vector width does not match the sum");

    const Word n = Word{1} << d;
    points_.assign(n, 0);
    coords_.assign(n, n);
    coords_[0] = 0;
    for (Word c = 1; c < n; ++c) {
        const unsigned top = static_cast<unsigned>(std::bit_width(c)) - 1;
        const Word x = sum_.combine(points_[c ^ (Word{1} << top)], basis_[top].bits());
        if (coords_[x] != n)
            throw NotABasis("basis vectors are not independent for the hidden sum");
        points_[c] = x;
        coords_[x] = c;
    }
}

CoordinateMap CoordinateMap::standard(HiddenSum sum)
{
    std::vector<BinVec> basis;
    for (unsigned i = 0; i < sum.width(); ++i) basis.push_back(BinVec::unit(sum.width(), i));
    return CoordinateMap(std::move(sum), std::move(basis));
}

BinVec CoordinateMap::coordinates(const BinVec& x) const
{
    if (x.width() != width())
        throw WidthMismatch("vector width does not match the coordinate map");
    return BinVec(width(), coords(x.bits()));
}

BinVec CoordinateMap::from_coordinates(const BinVec& c) const
{
    if (c.width() != width())
        throw WidthMismatch("coefficient width does not match the coordinate map");
    return BinVec(width(), point(c.bits()));
}

BinVec coordinates(const CoordinateMap& map, const BinVec& x) { return map.coordinates(x); }

namespace {

// Affine involutions x ↦ x·A + e_i: need A² = I and e_i·A = e_i.
std::vector<AffineMap> involutions_through(unsigned width, unsigned i)
{
    std::vector<AffineMap> out;
    const Word e = Word{1} << i;
    const std::size_t count = std::size_t{1} << (width * width);
    std::vector<Word> rows(width);
    for (std::size_t code = 0; code < count; ++code) {
        for (unsigned r = 0; r < width; ++r) rows[r] = (code >> (r * width)) & low_mask(width);
        if (rows[i] != e) continue;
        BinMatrix a(rows);
        if (!a.invertible() || a * a != BinMatrix::identity(width)) continue;
        out.emplace_back(std::move(a), BinVec(width, e));
    }
    return out;
}

void extend(std::vector<std::vector<AffineMap>> const& candidates, std::vector<AffineMap>& chosen,
            std::set<std::vector<AffineMap>>& found)
{
    const std::size_t i = chosen.size();
    if (i == candidates.size()) {
        try {
            auto group = build_group(chosen);
            const auto elems = group.elements();
            found.emplace(elems.begin(), elems.end());
        } catch (const GroupError&) {
        }
        return;
    }
    for (const auto& c : candidates[i]) {
        bool commutes = true;
        for (const auto& g : chosen)
            if (g.after(c) != c.after(g)) {
                commutes = false;
                break;
            }
        if (!commutes) continue;
        chosen.push_back(c);
        extend(candidates, chosen, found);
        chosen.pop_back();
    }
}

} // namespace

std::vector<HiddenSum> enumerate_regular_subgroups(unsigned width)
{
    if (width == 0 || width > kMaxSearchBrickWidth)
        throw std::invalid_argument("regular subgroup enumeration supports widths 1.." +
                                    std::to_string(kMaxSearchBrickWidth));

    // An elementary abelian regular group is generated by σ_{e_1}, ..., σ_{e_d},
    // which are commuting affine involutions with σ_{e_i}(0) = e_i. Over F_2 every
    // involutory matrix is unipotent, hence unitriangularizable.
    std::vector<std::vector<AffineMap>> candidates;
    for (unsigned i = 0; i < width; ++i) candidates.push_back(involutions_through(width, i));

    std::set<std::vector<AffineMap>> found;
    std::vector<AffineMap> chosen;
    extend(candidates, chosen, found);

    std::vector<HiddenSum> out;
    for (const auto& elems : found) {
        std::vector<AffineMap> gens;
        for (unsigned i = 0; i < width; ++i) gens.push_back(elems[Word{1} << i]);
        out.emplace_back(build_group(std::move(gens)));
    }
    return out;
}

std::vector<HiddenSum> find_hidden_sums(std::span<const std::vector<Word>> round_generators,
                                        std::span<const unsigned> brick_widths,
                                        const HiddenSumSearch& options)
{
    if (brick_widths.empty())
        throw std::invalid_argument("at least one brick is required");
    unsigned total = 0;
    for (unsigned w : brick_widths) {
        if (w == 0 || w > kMaxSearchBrickWidth)
            throw std::invalid_argument("brick width " + std::to_string(w) +
                                        " too large for exhaustive enumeration");
        total += w;
    }
    if (total > kMaxSearchWidth)
        throw std::invalid_argument("total width " + std::to_string(total) +
                                    " too large for exhaustive enumeration");
    for (const auto& g : round_generators)
        if (g.size() != (std::size_t{1} << total))
            throw WidthMismatch("generator table size does not match the brick layout");

    std::vector<std::vector<Word>> tests(round_generators.begin(), round_generators.end());
    if (options.include_translations)
        for (unsigned i = 0; i < total; ++i) tests.push_back(translation_table(BinVec::unit(total, i)));

    std::vector<std::vector<HiddenSum>> per_brick;
    for (unsigned w : brick_widths) per_brick.push_back(enumerate_regular_subgroups(w));

    std::vector<HiddenSum> result;
    std::vector<std::size_t> index(brick_widths.size(), 0);
    while (true) {
        std::vector<HiddenSum> parts;
        for (std::size_t b = 0; b < index.size(); ++b) parts.push_back(per_brick[b][index[b]]);
        auto candidate = product_sum(parts);
        const bool ok = std::all_of(tests.begin(), tests.end(),
                                    [&](const auto& g) { return agl_membership(g, candidate); });
        if (ok) result.push_back(std::move(candidate));

        // Lexicographic odometer, first brick most significant.
        std::size_t b = index.size();
        while (b > 0) {
            --b;
            if (++index[b] < per_brick[b].size()) break;
            index[b] = 0;
            if (b == 0) return result;
        }
    }
}

} // namespace hsum
