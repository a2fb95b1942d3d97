#include "hsum/report.hpp"

#include <cstdlib>
#include <sstream>
#include <string_view>

#include "hsum/formats.hpp"
#include "hsum/hidden_sum.hpp"

namespace hsum {

using nlohmann::ordered_json;

ReportFormat default_report_format()
{
    const char* env = std::getenv("HSUM_REPORT_FORMAT");
    return env && std::string_view(env) == "json" ? ReportFormat::json : ReportFormat::text;
}

std::string bits_string(Word v, unsigned width)
{
    return BinVec(width, v & low_mask(width)).to_string();
}

namespace {

template <class T>
ordered_json opt(const std::optional<T>& v)
{
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

template <class T>
std::string opt_text(const std::optional<T>& v)
{
    if (!v) return "n/a";
    if constexpr (std::is_same_v<T, bool>)
        return *v ? "true" : "false";
    else
        return std::to_string(*v);
}

const char* yes(bool b) { return b ? "true" : "false"; }

ordered_json rows_json(const std::vector<Word>& rows, unsigned width)
{
    auto out = ordered_json::array();
    for (Word r : rows) out.push_back(bits_string(r, width));
    return out;
}

} // namespace

AnalysisReport analyze(const Vbf& f)
{
    AnalysisReport r;
    r.m = f.in_width();
    r.n = f.out_width();
    r.permutation = f.is_permutation();
    const auto ds = diff_uniformity(f);
    r.delta = ds.delta;
    r.delta_a = ds.witness_a;
    r.delta_b = ds.witness_b;
    if (r.m != r.n) return r;

    r.apn = ds.delta == 2;
    r.weakly_apn = is_weakly_apn(f);
    // Coset definitions apply to any square function, so non-permutations
    // still get crooked/anti-crooked answers.
    const auto profile = coset_profile(f);
    r.crooked = profile.all_cosets();
    r.anti_crooked = profile.no_cosets();
    if (!profile.non_coset_directions.empty()) r.crooked_witness = profile.non_coset_directions.front();
    if (!profile.coset_directions.empty()) r.anti_crooked_witness = profile.coset_directions.front();

    std::size_t best = 0;
    Word best_a = 1;
    for (Word a = 1; a < f.size(); ++a) {
        const auto t = component_space(f, a).size();
        if (t > best) {
            best = t;
            best_a = a;
        }
    }
    r.n_hat = (std::uint64_t{1} << best) - 1;
    r.n_hat_witness = best_a;
    return r;
}

ordered_json AnalysisReport::to_json() const
{
    ordered_json j;
    j["m"] = m;
    j["n"] = n;
    j["permutation"] = permutation;
    j["delta"] = delta;
    j["apn"] = opt(apn);
    j["weakly_apn"] = opt(weakly_apn);
    j["crooked"] = opt(crooked);
    j["anti_crooked"] = opt(anti_crooked);
    j["n_hat"] = opt(n_hat);
    ordered_json w;
    w["delta"] = {{"a", delta_a}, {"b", delta_b}};
    w["non_coset_direction"] = opt(crooked_witness);
    w["coset_direction"] = opt(anti_crooked_witness);
    w["n_hat_direction"] = opt(n_hat_witness);
    j["witnesses"] = w;
    return j;
}

std::string AnalysisReport::to_text() const
{
    std::ostringstream o;
    o << "function      " << m << " -> " << n << " bits" << (permutation ? ", permutation" : ", not a permutation")
      << "\n";
    o << "delta         " << delta << " (a=" << delta_a << ", b=" << delta_b << ")\n";
    o << "apn           " << opt_text(apn) << "\n";
    o << "weakly_apn    " << opt_text(weakly_apn) << "\n";
    o << "crooked       " << opt_text(crooked);
    if (crooked_witness) o << " (direction " << *crooked_witness << " has a non-coset image)";
    o << "\n";
    o << "anti_crooked  " << opt_text(anti_crooked);
    if (anti_crooked_witness) o << " (direction " << *anti_crooked_witness << " has a coset image)";
    o << "\n";
    o << "n_hat         " << opt_text(n_hat);
    if (n_hat_witness) o << " (direction " << *n_hat_witness << ")";
    o << "\n";
    return o.str();
}

bool HiddenSumReport::passed() const noexcept
{
    return error.empty() && abelian && regular && elementary && kappa_homomorphism && kappa_inversion &&
           !u_basis.empty() && commutative && associative && distributive && nilpotent;
}

HiddenSumReport verify_hidden_sum(const std::vector<AffineMap>& generators)
{
    HiddenSumReport r;
    r.generators = generators.size();
    if (!generators.empty()) r.width = generators.front().width();
    try {
        auto group = build_group(generators);
        r.abelian = true;
        r.regular = true;
        r.order = group.elements().size();
        HiddenSum hs(std::move(group));
        r.elementary = true;
        const auto k = check_kappa_homomorphism(hs);
        r.kappa_homomorphism = k.homomorphism;
        r.kappa_inversion = k.inversion;
        try {
            r.u_basis = compute_U(hs).basis;
        } catch (const std::logic_error& e) {
            r.error = e.what();
        }
        const auto ring = check_ring_axioms(hs);
        r.commutative = ring.commutative;
        r.associative = ring.associative;
        r.distributive = ring.distributive;
        r.nilpotent = ring.nilpotent;
        r.nilpotency_index = ring.nilpotency_index;
    } catch (const GroupError& e) {
        // Commutativity is checked first, so any later failure implies abelian.
        r.abelian = e.kind() != GroupError::Kind::not_abelian;
        r.regular = e.kind() == GroupError::Kind::not_elementary;
        r.error = e.what();
    }
    return r;
}

ordered_json HiddenSumReport::to_json() const
{
    ordered_json j;
    j["width"] = width;
    j["generators"] = generators;
    j["abelian"] = abelian;
    j["regular"] = regular;
    j["elementary"] = elementary;
    j["order"] = order;
    j["kappa_homomorphism"] = kappa_homomorphism;
    j["kappa_inversion"] = kappa_inversion;
    j["U_basis"] = rows_json(u_basis, width);
    j["ring_axioms"] = {{"commutative", commutative},
                        {"associative", associative},
                        {"distributive", distributive},
                        {"nilpotent", nilpotent}};
    j["nilpotency_index"] = nilpotency_index;
    j["error"] = error.empty() ? ordered_json(nullptr) : ordered_json(error);
    j["passed"] = passed();
    return j;
}

std::string HiddenSumReport::to_text() const
{
    std::ostringstream o;
    o << "width               " << width << " (" << generators << " generators)\n";
    o << "abelian             " << yes(abelian) << "\n";
    o << "regular             " << yes(regular) << "\n";
    o << "elementary          " << yes(elementary) << "\n";
    o << "order               " << order << "\n";
    o << "kappa_homomorphism  " << yes(kappa_homomorphism) << "\n";
    o << "kappa_inversion     " << yes(kappa_inversion) << "\n";
    o << "U_basis            ";
    if (u_basis.empty()) o << " (none)";
    for (Word u : u_basis) o << " " << bits_string(u, width);
    o << "\n";
    o << "ring_axioms         commutative=" << yes(commutative) << " associative=" << yes(associative)
      << " distributive=" << yes(distributive) << " nilpotent=" << yes(nilpotent) << "\n";
    o << "nilpotency_index    " << nilpotency_index << "\n";
    if (!error.empty()) o << "error               " << error << "\n";
    o << "verdict             " << (passed() ? "PASS" : "FAIL") << "\n";
    return o.str();
}

AttackReport make_attack_report(std::string mode, unsigned rounds, Word key, const AffineRepr& repr,
                                const DeductionReport& deduction)
{
    AttackReport r;
    r.mode = std::move(mode);
    r.rounds = rounds;
    r.key = key;
    r.width = repr.coordinates().width();
    const auto m = repr.matrix().rows();
    const auto mi = repr.inverse_matrix().rows();
    r.matrix.assign(m.begin(), m.end());
    r.inverse.assign(mi.begin(), mi.end());
    r.translation = repr.translation().bits();
    r.deduction = deduction;
    return r;
}

ordered_json AttackReport::to_json() const
{
    ordered_json j;
    j["mode"] = mode;
    j["rounds"] = rounds;
    j["key"] = format_hex_word(key, width);
    j["M"] = rows_json(matrix, width);
    j["M_inv"] = rows_json(inverse, width);
    j["t"] = bits_string(translation, width);
    j["enc_queries"] = deduction.attack_encryptions;
    j["dec_queries"] = deduction.attack_decryptions;
    j["verification_queries"] = deduction.verification_queries;
    j["verified_blocks"] = deduction.verified_blocks;
    j["mismatches"] = deduction.mismatches;
    j["passed"] = passed();
    return j;
}

std::string AttackReport::to_text() const
{
    std::ostringstream o;
    o << "mode                  " << mode << "\n";
    o << "rounds                " << rounds << "\n";
    o << "key                   " << format_hex_word(key, width) << "\n";
    o << "M                    ";
    for (Word r : matrix) o << " " << bits_string(r, width);
    o << "\nM_inv                ";
    for (Word r : inverse) o << " " << bits_string(r, width);
    o << "\nt                     " << bits_string(translation, width) << "\n";
    o << "enc_queries           " << deduction.attack_encryptions << "\n";
    o << "dec_queries           " << deduction.attack_decryptions << "\n";
    o << "verification_queries  " << deduction.verification_queries << "\n";
    o << "verified_blocks       " << deduction.verified_blocks << "\n";
    o << "mismatches            " << deduction.mismatches << "\n";
    o << "verdict               " << (passed() ? "PASS" : "FAIL") << "\n";
    return o.str();
}

} // namespace hsum
