#include "hsum/checks.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>

#include "hsum/builtin.hpp"
#include "hsum/formats.hpp"
#include "hsum/hidden_sum.hpp"
#include "hsum/trapdoor.hpp"

namespace hsum {

namespace {

std::vector<unsigned> sweep(const ReproduceOptions& o)
{
    if (o.rounds) return {*o.rounds};
    return {1, 20, 100};
}

std::string join(const std::vector<unsigned>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

Vbf power(std::uint64_t d, unsigned m)
{
    return from_power(d, default_field(m), FieldBasis::ascending(m));
}

std::vector<Word> random_permutation(unsigned m, std::mt19937_64& rng)
{
    std::vector<Word> t(std::size_t{1} << m);
    std::iota(t.begin(), t.end(), Word{0});
    for (std::size_t i = t.size() - 1; i > 0; --i) std::swap(t[i], t[rng() % (i + 1)]);
    return t;
}

BinMatrix random_matrix(unsigned m, std::mt19937_64& rng, bool invertible)
{
    while (true) {
        std::vector<Word> rows(m);
        for (auto& r : rows) r = rng() & low_mask(m);
        BinMatrix a(std::move(rows));
        if (!invertible || a.invertible()) return a;
    }
}

std::vector<std::vector<Word>> toy_round_generators(const CipherSpec& spec)
{
    std::vector<std::vector<Word>> g{round_map_table(spec)};
    for (unsigned i = 0; i < spec.width(); ++i) g.push_back(translation_table(BinVec::unit(spec.width(), i)));
    return g;
}

// ---- criteria ----

CheckResult c1(const ReproduceOptions&)
{
    const auto ds = diff_uniformity(builtin::gamma1());
    return {"1", "differential uniformity of gamma1 is 4", ds.delta == 4,
            "delta=" + std::to_string(ds.delta) + " at a=" + std::to_string(ds.witness_a) +
                ", b=" + std::to_string(ds.witness_b)};
}

CheckResult c2(const ReproduceOptions&)
{
    const auto g = builtin::gamma1();
    const auto ac = is_anti_crooked(g);
    std::optional<Word> witness;
    for (Word a = 1; a < 8 && !witness; ++a) {
        const auto img = derivative_image(g, a);
        if (img.size() == 2 && is_coset(img.image, 3)) witness = a;
    }
    const Word a2 = builtin::toy_basis().to_vec(gf_pow(2, 2, builtin::toy_field()));
    const auto at_a2 = derivative_image(g, a2);
    std::string detail = witness ? "dimension-1 coset image at a=" + std::to_string(*witness)
                                 : std::string("no direction with a dimension-1 coset image");
    detail += "; Im(D_{alpha^2}) has " + std::to_string(at_a2.size()) + " elements";
    return {"2", "gamma1 is not anti-crooked (a derivative image is a 1-dimensional coset)",
            !ac.holds && witness.has_value(), detail};
}

CheckResult c3(const ReproduceOptions&)
{
    const auto f49 = power(49, 6);
    const auto p49 = coset_profile(f49);
    const auto f5 = power(5, 6);
    const auto ac5 = is_anti_crooked(f5);
    const Word e6 = gf_pow(2, 6, default_field(6));
    const auto img = derivative_image(f5, e6);
    const bool coset16 = img.size() == 16 && is_coset(img.image, 6);
    const bool ok = p49.no_cosets() && p49.non_coset_directions.size() == 63 && !ac5.holds && coset16;
    return {"3", "x^49 over F_64 has no coset derivative image; x^5 is not AC with a 16-element coset",
            ok,
            "x^49: " + std::to_string(p49.non_coset_directions.size()) + "/63 non-coset directions; x^5: AC=" +
                (ac5.holds ? "true" : "false") + ", |Im(D_{e^6})|=" + std::to_string(img.size()) +
                (coset16 ? " (coset)" : " (not a coset)")};
}

CheckResult c4(const ReproduceOptions&)
{
    bool ok = true;
    std::string detail;
    for (unsigned m = 3; m <= 8; ++m) {
        const auto v = is_anti_crooked(power((std::uint64_t{1} << m) - 2, m));
        detail += (m > 3 ? " " : "") + std::string("m=") + std::to_string(m) + ":" + (v.holds ? "AC" : "not-AC");
        if (!v.holds) {
            ok = false;
            detail += "(coset at a=" + std::to_string(*v.witness) + ")";
        }
    }
    return {"4", "x^(2^m-2) is anti-crooked for m = 3..8", ok, detail};
}

CheckResult c5(const ReproduceOptions&)
{
    bool ok = true;
    std::size_t tested = 0;
    std::string failures;
    for (unsigned m : {3u, 5u}) {
        for (unsigned k = 1; k < m; ++k) {
            if (std::gcd(k, m) != 1) continue;
            const std::uint64_t d = (std::uint64_t{1} << k) + 1;
            const auto f = power(d, m);
            ++tested;
            if (!is_crooked(f).holds || !is_apn(f)) {
                ok = false;
                failures += " m=" + std::to_string(m) + ",d=" + std::to_string(d);
            }
        }
    }
    return {"5", "Gold exponents 2^k+1 with gcd(k,m)=1 are crooked and APN for m in {3,5}", ok,
            std::to_string(tested) + " exponents checked" + (failures.empty() ? "" : "; failing:" + failures)};
}

CheckResult c6(const ReproduceOptions&)
{
    std::size_t tested = 0, disagree = 0;
    std::string first;
    for (unsigned m = 2; m <= 6; ++m) {
        const std::uint64_t q = (std::uint64_t{1} << m) - 1;
        const auto fs = default_field(m);
        const auto basis = FieldBasis::ascending(m);
        for (std::uint64_t d = 1; d < q; ++d) {
            if (std::gcd(d, q) != 1) continue;
            ++tested;
            const auto label = power_ac_dichotomy(d, fs, basis);
            const auto f = from_power(d, fs, basis);
            const bool ac = is_anti_crooked(f).holds;
            const bool cr = is_crooked(f).holds;
            const bool agree = label == PowerClass::anti_crooked ? (ac && !cr) : (cr && !ac);
            if (!agree) {
                ++disagree;
                if (first.empty()) first = " first at m=" + std::to_string(m) + ", d=" + std::to_string(d);
            }
        }
    }
    return {"6", "single-direction dichotomy matches exhaustive classification of power permutations, m <= 6",
            disagree == 0,
            std::to_string(tested) + " power permutations, " + std::to_string(disagree) + " disagreements" + first};
}

CheckResult c7(const ReproduceOptions& o)
{
    std::size_t subjects = 0, violations = 0;
    std::string first;
    for (unsigned m = 3; m <= 6; ++m) {
        for (const auto& e : pinned_corpus(m, o.seed)) {
            if (!is_weakly_apn(e.f) || is_apn(e.f)) continue;
            ++subjects;
            if (coset_profile(e.f).non_coset_directions.empty()) {
                ++violations;
                if (first.empty()) first = "; first violation: " + e.name;
            }
        }
    }
    return {"7", "every weakly-APN, non-APN corpus function has a non-coset derivative image",
            subjects > 0 && violations == 0,
            std::to_string(subjects) + " weakly-APN non-APN functions, " + std::to_string(violations) +
                " violations" + first};
}

CheckResult c8(const ReproduceOptions& o)
{
    std::size_t functions = 0, pairs = 0, violations = 0;
    std::string first;
    for (unsigned m = 3; m <= 6; ++m) {
        for (const auto& e : pinned_corpus(m, o.seed)) {
            ++functions;
            for (Word a = 1; a < e.f.size(); ++a) {
                ++pairs;
                const auto img = derivative_image(e.f, a);
                const auto hull = affine_hull(img.image, m);
                const auto perp = orthogonal_complement(component_space(e.f, a), m);
                if (hull != AffineSubspace(e.f(a), perp, m)) {
                    ++violations;
                    if (first.empty()) first = "; first: " + e.name + " a=" + std::to_string(a);
                }
            }
        }
    }
    return {"8", "affine hull of Im(D_a f) equals f(a) + V_a^perp on the corpus", violations == 0,
            std::to_string(functions) + " functions, " + std::to_string(pairs) + " directions, " +
                std::to_string(violations) + " violations" + first};
}

CheckResult c9(const ReproduceOptions& o)
{
    std::size_t transforms = 0, ac_bases = 0, changed = 0;
    for (unsigned m = 3; m <= 6; ++m) {
        const auto corpus = pinned_corpus(m, o.seed);
        std::mt19937_64 rng(o.seed ^ (0xea00 + m));
        for (unsigned i = 0; i < 100; ++i) {
            const auto& base = corpus[i % corpus.size()].f;
            const AffineMap outer(random_matrix(m, rng, true), BinVec(m, rng() & low_mask(m)));
            const AffineMap inner(random_matrix(m, rng, true), BinVec(m, rng() & low_mask(m)));
            const AffineFunction added(random_matrix(m, rng, false), BinVec(m, rng() & low_mask(m)));
            const auto g = ea_transform(base, outer, inner, added);
            const bool before = coset_profile(base).no_cosets();
            ++transforms;
            if (before) ++ac_bases;
            if (coset_profile(g).no_cosets() != before) ++changed;
        }
    }
    return {"9", "random EA transforms preserve the anti-crooked verdict, m = 3..6", changed == 0,
            std::to_string(transforms) + " transforms (" + std::to_string(ac_bases) + " of AC functions), " +
                std::to_string(changed) + " verdict changes"};
}

CheckResult c10(const ReproduceOptions&)
{
    const auto gens = builtin::toy_generators();
    const auto group = build_group({gens.begin(), gens.end()});
    const HiddenSum hs(group);
    const auto k = check_kappa_homomorphism(hs);
    const auto u = compute_U(hs);
    const auto ring = check_ring_axioms(hs);
    bool uv = true;
    for (Word x = 0; x < 8; ++x) uv = uv && check_uV_subgroup(hs, x);
    const bool ok = group.elements().size() == 8 && k.homomorphism && k.inversion && u.contains(0b010) &&
                    u.size() >= 2 && ring.ok() && uv;
    std::ostringstream d;
    d << "order " << group.elements().size() << ", kappa hom=" << k.homomorphism << " inv=" << k.inversion
      << ", |U|=" << u.size() << (u.contains(0b010) ? " contains e2" : " lacks e2") << ", ring ok=" << ring.ok()
      << " nilpotency index " << ring.nilpotency_index << ", uV subgroups=" << uv;
    return {"10", "toy generators give an elementary abelian regular group with the expected structure", ok,
            d.str()};
}

CheckResult c11(const ReproduceOptions&)
{
    const auto brick = CoordinateMap::standard(builtin::toy_sum());
    std::size_t brick_bad = 0;
    for (Word x = 0; x < 8; ++x)
        if (toy_brick_coefficients(x) != brick.coords(x)) ++brick_bad;

    const auto sum = builtin::toy_product_sum();
    const auto cm = CoordinateMap::standard(sum);
    std::vector<bool> hit(64, false);
    std::size_t closed_bad = 0, iso_bad = 0;
    for (Word x = 0; x < 64; ++x) {
        hit[cm.coords(x)] = true;
        if (toy_coefficients(x) != cm.coords(x)) ++closed_bad;
        for (Word y = 0; y < 64; ++y)
            if (cm.coords(sum.combine(x, y)) != (cm.coords(x) ^ cm.coords(y))) ++iso_bad;
    }
    const bool bijective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    return {"11", "Algorithm 1 matches the coordinate map; coordinates are an isomorphism onto XOR",
            brick_bad == 0 && closed_bad == 0 && iso_bad == 0 && bijective,
            std::to_string(brick_bad) + " brick mismatches, " + std::to_string(closed_bad) +
                " block mismatches, " + std::to_string(iso_bad) + " homomorphism failures, bijective=" +
                (bijective ? "true" : "false")};
}

CheckResult c12(const ReproduceOptions& o)
{
    const auto sum = builtin::toy_product_sum();
    const auto rounds = sweep(o);
    const auto spec = check_cipher(o, rounds.front());
    std::size_t gen_fail = 0;
    for (const auto& g : toy_round_generators(spec))
        if (!agl_membership(g, sum)) ++gen_fail;

    std::mt19937_64 rng(o.seed ^ 0x7e12);
    std::size_t keys_fail = 0, tested = 0;
    for (unsigned i = 0; i < 10; ++i) {
        const BinVec key(6, rng() & 63);
        for (unsigned l : rounds) {
            ++tested;
            if (!agl_membership(encryption_table(spec.with_rounds(l), key), sum)) ++keys_fail;
        }
    }
    return {"12", "toy round generators and every tested encryption function are affine for the hidden sum",
            gen_fail == 0 && keys_fail == 0,
            std::to_string(gen_fail) + "/7 generators fail; " + std::to_string(keys_fail) + "/" +
                std::to_string(tested) + " (key, rounds) pairs fail; rounds " + join(rounds)};
}

CheckResult c13(const ReproduceOptions& o)
{
    const auto rounds = sweep(o);
    const auto cm = std::make_shared<const CoordinateMap>(CoordinateMap::standard(builtin::toy_product_sum()));
    std::size_t attacks = 0, bad_cost = 0, bad_blocks = 0, failures = 0;

    const std::vector<std::pair<std::string, KeySchedule>> schedules{
        {"rotate", rotate_schedule()}, {"random-permutation", random_permutation_schedule(6, o.seed)}};
    for (const auto& [name, sched] : schedules) {
        for (unsigned l : rounds) {
            const auto spec = check_cipher(o, l).with_schedule(sched);
            for (Word k = 0; k < 64; ++k) {
                ++attacks;
                auto enc = make_encryption_oracle(spec, BinVec(6, k));
                try {
                    auto [repr, tr] = reconstruct_cp(enc, cm, AttackOptions{3, false, o.seed + k});
                    if (tr.encryption_count != 7 || tr.decryption_count != 0 || enc.query_count() != 7) ++bad_cost;
                    const auto rep = verify_global_deduction(repr, enc, tr);
                    if (rep.mismatches != 0 || rep.verified_blocks != 64) ++bad_blocks;
                } catch (const std::exception&) {
                    ++failures;
                }
            }
        }
    }

    std::size_t cc_bad = 0;
    const auto spec = check_cipher(o, o.rounds.value_or(kDefaultToyRounds));
    for (Word k = 0; k < 64; ++k) {
        auto enc = make_encryption_oracle(spec, BinVec(6, k));
        auto dec = make_decryption_oracle(spec, BinVec(6, k));
        try {
            auto [repr, tr] = reconstruct_cpcc(enc, dec, cm, AttackOptions{3, false, o.seed + k});
            const bool ok = tr.encryption_count == 7 && tr.decryption_count == 7 && enc.query_count() == 7 &&
                            dec.query_count() == 7 &&
                            repr.matrix() * repr.inverse_matrix() == BinMatrix::identity(6) &&
                            verify_global_deduction(repr, enc, tr).mismatches == 0;
            if (!ok) ++cc_bad;
        } catch (const std::exception&) {
            ++cc_bad;
        }
    }

    const bool ok = bad_cost == 0 && bad_blocks == 0 && failures == 0 && cc_bad == 0;
    return {"13", "attack: 7 encryptions reconstruct every key, any round count or schedule; cpcc uses 7+7", ok,
            std::to_string(attacks) + " cp attacks (rounds " + join(rounds) + ", 2 schedules): " +
                std::to_string(failures) + " aborted, " + std::to_string(bad_cost) + " wrong cost, " +
                std::to_string(bad_blocks) + " with mismatches; cpcc: " + std::to_string(cc_bad) + "/64 bad"};
}

CheckResult c14(const ReproduceOptions& o)
{
    const unsigned widths[] = {3, 3};
    const auto spec = check_cipher(o, kDefaultToyRounds);
    const auto x6 = from_power(6, builtin::toy_field(), builtin::toy_basis());
    const auto inv_spec = spec.with_bricks({x6, x6});
    const auto inv_found = find_hidden_sums(toy_round_generators(inv_spec), widths);
    const auto found = find_hidden_sums(toy_round_generators(spec), widths);
    const auto toy = builtin::toy_product_sum();
    const bool has_toy = std::find(found.begin(), found.end(), toy) != found.end();
    return {"14", "x^6 bricks admit no hidden sum; the gamma1 cipher admits the toy sum",
            inv_found.empty() && !found.empty() && has_toy,
            "x^6 cipher: " + std::to_string(inv_found.size()) + " sums; gamma1 cipher: " +
                std::to_string(found.size()) + " sums" + (has_toy ? ", toy sum among them" : ", toy sum missing")};
}

// ---- supplementary claims ----

CheckResult claim_gamma1_permutation()
{
    const auto g = builtin::gamma1();
    return {"a", "gamma1 is a permutation of F_8 fixing 0", g.is_permutation() && g(0) == 0,
            "table " + [&] {
                std::string s;
                for (Word v : g.table()) s += std::to_string(v) + " ";
                s.pop_back();
                return s;
            }()};
}

CheckResult claim_mixing_invertible(const ReproduceOptions& o)
{
    const auto l = o.corrupt_mixing ? corrupted_toy_mixing() : builtin::toy_mixing();
    return {"b", "the toy mixing layer is invertible", l.invertible(), "rank " + std::to_string(l.rank())};
}

CheckResult claim_ccz()
{
    const auto f = power(38, 6);
    const auto inv = inverse_vbf(f);
    const bool inverse_is_x5 = inv == power(5, 6);
    const bool f_ac = is_anti_crooked(f).holds;
    const bool inv_ac = is_anti_crooked(inv).holds;
    return {"c", "anti-crookedness is not CCZ-invariant: x^38 is AC, its inverse x^5 is not",
            inverse_is_x5 && f_ac && !inv_ac,
            std::string("inverse is x^5: ") + (inverse_is_x5 ? "yes" : "no") + ", x^38 AC=" +
                (f_ac ? "true" : "false") + ", x^5 AC=" + (inv_ac ? "true" : "false")};
}

CheckResult claim_u_nontrivial()
{
    std::size_t sums = 0, trivial = 0;
    for (unsigned w = 2; w <= 3; ++w) {
        for (const auto& hs : enumerate_regular_subgroups(w)) {
            ++sums;
            try {
                compute_U(hs);
            } catch (const std::logic_error&) {
                ++trivial;
            }
        }
    }
    return {"d", "U is nontrivial for every elementary abelian regular subgroup in dimensions 2 and 3",
            sums > 0 && trivial == 0, std::to_string(sums) + " groups, " + std::to_string(trivial) + " with U = {0}"};
}

CheckResult claim_rounds_bijective(const ReproduceOptions& o)
{
    const auto spec = check_cipher(o, kDefaultToyRounds);
    auto t = round_map_table(spec);
    std::sort(t.begin(), t.end());
    bool ok = true;
    for (Word x = 0; x < t.size(); ++x) ok = ok && t[x] == x;
    return {"e", "the toy round map is a bijection of V", ok, ok ? "64 distinct images" : "collision found"};
}

} // namespace

std::vector<CorpusEntry> pinned_corpus(unsigned m, std::uint64_t seed)
{
    if (m < 3 || m > 6) throw std::invalid_argument("pinned corpus covers m = 3..6");
    std::vector<CorpusEntry> out;
    const std::uint64_t q = (std::uint64_t{1} << m) - 1;
    for (std::uint64_t d = 1; d < q; ++d)
        if (std::gcd(d, q) == 1) out.push_back({"x^" + std::to_string(d) + " (m=" + std::to_string(m) + ")", power(d, m)});
    if (m == 3) out.push_back({"gamma1", builtin::gamma1()});
    std::mt19937_64 rng(seed ^ (0xc0de00 + m));
    for (unsigned i = 0; i < 50; ++i) {
        auto t = random_permutation(m, rng);
        const Word f0 = t[0];
        for (auto& v : t) v ^= f0;
        out.push_back({"random #" + std::to_string(i) + " (m=" + std::to_string(m) + ")", Vbf(m, m, std::move(t))});
    }
    return out;
}

BinMatrix corrupted_toy_mixing()
{
    // Several flips leave the round map inside the affine group of the toy
    // sum (harmless for the trapdoor), so skip those.
    const auto l = builtin::toy_mixing();
    const auto spec = builtin_toy_spec(1);
    const auto sum = builtin::toy_product_sum();
    for (unsigned i = 0; i < l.dim(); ++i)
        for (unsigned j = 0; j < l.dim(); ++j)
            if (auto c = l.with_flipped(i, j);
                c.invertible() && !agl_membership(round_map_table(spec.with_mixing(c)), sum))
                return c;
    throw std::logic_error("no single-entry flip breaks the toy trapdoor");
}

CipherSpec check_cipher(const ReproduceOptions& options, unsigned rounds)
{
    auto spec = builtin_toy_spec(rounds);
    return options.corrupt_mixing ? spec.with_mixing(corrupted_toy_mixing()) : spec;
}

CheckResult run_criterion(unsigned id, const ReproduceOptions& options)
{
    using Fn = CheckResult (*)(const ReproduceOptions&);
    static constexpr Fn table[] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13, c14};
    if (id < 1 || id > kCriterionCount) throw std::out_of_range("criterion id must be 1.." + std::to_string(kCriterionCount));
    try {
        return table[id - 1](options);
    } catch (const std::exception& e) {
        return {std::to_string(id), "criterion " + std::to_string(id), false, std::string("error: ") + e.what()};
    }
}

std::vector<CheckResult> run_supplementary_claims(const ReproduceOptions& options)
{
    std::vector<std::function<CheckResult()>> claims{
        [] { return claim_gamma1_permutation(); },
        [&] { return claim_mixing_invertible(options); },
        [] { return claim_ccz(); },
        [] { return claim_u_nontrivial(); },
        [&] { return claim_rounds_bijective(options); },
    };
    std::vector<CheckResult> out;
    const std::string ids = "abcde";
    for (std::size_t i = 0; i < claims.size(); ++i) {
        try {
            out.push_back(claims[i]());
        } catch (const std::exception& e) {
            out.push_back({std::string(1, ids[i]), "supplementary claim", false, std::string("error: ") + e.what()});
        }
    }
    return out;
}

std::vector<CheckResult> run_reproduce(const ReproduceOptions& options)
{
    std::vector<CheckResult> out;
    for (unsigned id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, options));
    for (auto& r : run_supplementary_claims(options)) out.push_back(std::move(r));
    return out;
}

std::string format_check_line(const CheckResult& r)
{
    std::string id = r.id;
    if (id.size() < 2) id.insert(0, 2 - id.size(), ' ');
    return std::string(r.passed ? "PASS" : "FAIL") + " [" + id + "] " + r.title + " | " + r.detail;
}

} // namespace hsum
