// hsum: command-line front end for function analysis, hidden-sum checks,
// the toy cipher and the global-deduction attack.
//
// Exit status: 0 success, 1 a check failed, 2 bad input.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hsum/builtin.hpp"
#include "hsum/checks.hpp"
#include "hsum/cipher.hpp"
#include "hsum/formats.hpp"
#include "hsum/hidden_sum.hpp"
#include "hsum/report.hpp"
#include "hsum/trapdoor.hpp"
#include "hsum/vbf.hpp"

namespace {

using namespace hsum;
using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

struct Common {
    bool json_flag = false;
    std::string format;

    ReportFormat resolve() const
    {
        if (json_flag) return ReportFormat::json;
        if (format == "json") return ReportFormat::json;
        if (format == "text") return ReportFormat::text;
        return default_report_format();
    }
};

void emit(const Common& c, const ordered_json& j, const std::string& text)
{
    if (c.resolve() == ReportFormat::json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

// Cipher selection shared by encrypt, decrypt, attack and hidden-search.
struct CipherOpts {
    std::string config;
    std::optional<unsigned> rounds;
    std::string schedule;
    std::uint64_t schedule_seed = 0;

    void add_to(CLI::App* sub, bool with_rounds = true)
    {
        sub->add_option("--config", config, "cipher config (JSON); the built-in toy cipher when omitted")
            ->check(CLI::ExistingFile);
        if (with_rounds) sub->add_option("--rounds", rounds, "round count override")->check(CLI::Range(1u, kMaxRounds));
        sub->add_option("--schedule", schedule, "key schedule override")->check(CLI::IsMember({"rotate", "custom"}));
        sub->add_option("--schedule-seed", schedule_seed, "seed of the custom schedule");
    }

    CipherSpec build() const
    {
        CipherConfig cfg;
        if (config.empty()) {
            const auto g = builtin::gamma1();
            cfg.bricks = {g, g};
            cfg.mixing = builtin::toy_mixing();
        } else {
            const std::filesystem::path p(config);
            cfg = parse_cipher_config(read_text_file(p), p.parent_path(), p.string());
        }
        if (rounds) cfg.rounds = *rounds;
        if (!schedule.empty()) {
            cfg.schedule = schedule;
            cfg.seed = schedule_seed;
        }
        return cfg.build();
    }
};

HiddenSum load_sum(const std::string& group_file, unsigned width)
{
    if (group_file.empty()) {
        if (width != 6)
            throw std::invalid_argument("no --group given and the built-in toy sum needs a 6-bit cipher");
        return builtin::toy_product_sum();
    }
    const auto gens = parse_group_spec(read_text_file(group_file), group_file);
    HiddenSum hs(build_group(gens));
    if (hs.width() != width) throw WidthMismatch("hidden sum width does not match the cipher");
    return hs;
}

std::string group_spec_text(const HiddenSum& hs)
{
    std::string out = std::to_string(hs.width()) + "\n";
    for (unsigned i = 0; i < hs.width(); ++i) {
        const auto& e = hs.group().element(Word{1} << i);
        for (Word r : e.matrix().rows()) out += bits_string(r, hs.width());
        out += "|" + e.translation().to_string() + "\n";
    }
    return out;
}

int cmd_analyze(const Common& c, const std::string& ref)
{
    const auto f = load_vbf(ref);
    const auto r = analyze(f);
    emit(c, r.to_json(), r.to_text());
    return kOk;
}

int cmd_hidden_verify(const Common& c, const std::string& group_file)
{
    std::vector<AffineMap> gens;
    if (group_file.empty()) {
        const auto g = builtin::toy_generators();
        gens.assign(g.begin(), g.end());
    } else {
        gens = parse_group_spec(read_text_file(group_file), group_file);
    }
    const auto r = verify_hidden_sum(gens);
    emit(c, r.to_json(), r.to_text());
    return r.passed() ? kOk : kCheckFailed;
}

int cmd_hidden_search(const Common& c, const CipherOpts& co, bool no_translations)
{
    const auto spec = co.build();
    if (spec.brick_width() > kMaxSearchBrickWidth || spec.width() > kMaxSearchWidth)
        throw std::invalid_argument("cipher too wide for exhaustive hidden-sum search");
    std::vector<std::vector<Word>> gens{round_map_table(spec)};
    const std::vector<unsigned> widths(spec.brick_count(), spec.brick_width());
    const auto found = find_hidden_sums(gens, widths, HiddenSumSearch{!no_translations});

    const auto toy = spec.width() == 6 ? std::optional(builtin::toy_product_sum()) : std::nullopt;
    ordered_json j;
    j["bricks"] = spec.brick_count();
    j["brick_width"] = spec.brick_width();
    j["include_translations"] = !no_translations;
    j["count"] = found.size();
    auto list = ordered_json::array();
    std::string text = "hidden sums found: " + std::to_string(found.size()) + "\n";
    for (std::size_t i = 0; i < found.size(); ++i) {
        const auto spec_text = group_spec_text(found[i]);
        const bool is_toy = toy && found[i] == *toy;
        list.push_back({{"group_spec", spec_text}, {"toy_sum", is_toy}});
        text += "-- sum " + std::to_string(i + 1) + (is_toy ? " (toy sum)" : "") + "\n" + spec_text;
    }
    j["sums"] = list;
    emit(c, j, text);
    return kOk;
}

int cmd_crypt(const Common& c, const CipherOpts& co, const std::string& key_hex, const std::string& block_hex,
              bool encrypting)
{
    const auto spec = co.build();
    const unsigned d = spec.width();
    const BinVec key(d, parse_hex_word(key_hex, d));
    const BinVec in(d, parse_hex_word(block_hex, d));
    const auto out = encrypting ? encrypt(spec, key, in) : decrypt(spec, key, in);
    ordered_json j;
    j["key"] = format_hex_word(key.bits(), d);
    j[encrypting ? "pt" : "ct"] = format_hex_word(in.bits(), d);
    j[encrypting ? "ct" : "pt"] = format_hex_word(out.bits(), d);
    j["rounds"] = spec.rounds();
    emit(c, j, format_hex_word(out.bits(), d) + "\n");
    return kOk;
}

int cmd_attack(const Common& c, const CipherOpts& co, const std::string& mode, const std::string& key_text,
               std::uint64_t seed, const std::string& group_file, unsigned spot_checks, bool full_check)
{
    const auto spec = co.build();
    const unsigned d = spec.width();
    Word key = 0;
    if (key_text == "random") {
        std::mt19937_64 rng(seed);
        key = rng() & low_mask(d);
    } else {
        key = parse_hex_word(key_text, d);
    }
    const auto cm = std::make_shared<const CoordinateMap>(CoordinateMap::standard(load_sum(group_file, d)));
    const AttackOptions opts{spot_checks, full_check, seed};

    auto enc = make_encryption_oracle(spec, BinVec(d, key));
    auto dec = make_decryption_oracle(spec, BinVec(d, key));
    try {
        auto [repr, tr] = mode == "cpcc" ? reconstruct_cpcc(enc, dec, cm, opts) : reconstruct_cp(enc, cm, opts);
        const auto deduction = verify_global_deduction(repr, enc, tr);
        const auto r = make_attack_report(mode, spec.rounds(), key, repr, deduction);
        emit(c, r.to_json(), r.to_text());
        return r.passed() ? kOk : kCheckFailed;
    } catch (const ConsistencyFailure& e) {
        emit(c, ordered_json{{"mode", mode}, {"passed", false}, {"error", e.what()}},
             std::string("attack failed: ") + e.what() + "\nverdict FAIL\n");
        return kCheckFailed;
    } catch (const InverseMismatch& e) {
        emit(c, ordered_json{{"mode", mode}, {"passed", false}, {"error", e.what()}},
             std::string("attack failed: ") + e.what() + "\nverdict FAIL\n");
        return kCheckFailed;
    }
}

int cmd_reproduce(const Common& c, std::optional<unsigned> rounds, bool corrupt, std::uint64_t seed,
                  std::optional<unsigned> only)
{
    ReproduceOptions o;
    o.rounds = rounds;
    o.corrupt_mixing = corrupt;
    o.seed = seed;
    const auto results = only ? std::vector<CheckResult>{run_criterion(*only, o)} : run_reproduce(o);

    bool all = true;
    std::string text;
    auto list = ordered_json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        text += format_check_line(r) + "\n";
        list.push_back({{"id", r.id}, {"claim", r.title}, {"passed", r.passed}, {"detail", r.detail}});
    }
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.passed;
    text += std::to_string(passed) + "/" + std::to_string(results.size()) + " checks passed\n";
    emit(c, ordered_json{{"checks", list}, {"passed", passed}, {"total", results.size()}, {"all_passed", all}},
         text);
    return all ? kOk : kCheckFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hidden-sum trapdoor toolkit: function analysis, hidden sums, toy cipher and attack"};
    app.require_subcommand(1);
    Common common;
    app.add_flag("--json", common.json_flag, "structured JSON output");
    app.add_option("--format", common.format, "report format (default: $HSUM_REPORT_FORMAT or text)")
        ->check(CLI::IsMember({"text", "json"}));

    std::string analyze_ref;
    auto* analyze = app.add_subcommand("analyze", "differential and coset properties of a function");
    analyze->add_option("spec", analyze_ref,
                        "S-box file, JSON function config, builtin:gamma1 or builtin:power:<d>:<m>")
        ->required();

    std::string verify_group;
    auto* hverify = app.add_subcommand("hidden-verify", "check that generators induce a hidden sum");
    hverify->add_option("--group", verify_group, "group spec file; the toy generators when omitted")
        ->check(CLI::ExistingFile);

    CipherOpts search_opts;
    bool no_translations = false;
    auto* hsearch = app.add_subcommand("hidden-search", "enumerate brick-wise hidden sums making the cipher affine");
    search_opts.add_to(hsearch);
    hsearch->add_flag("--no-translations", no_translations, "do not require XOR translations to be affine");

    CipherOpts enc_opts;
    std::string enc_key, enc_pt;
    auto* enc = app.add_subcommand("encrypt", "encrypt one block");
    enc_opts.add_to(enc);
    enc->add_option("--key", enc_key, "session key (hex)")->required();
    enc->add_option("--pt", enc_pt, "plaintext block (hex)")->required();

    CipherOpts dec_opts;
    std::string dec_key, dec_ct;
    auto* dec = app.add_subcommand("decrypt", "decrypt one block");
    dec_opts.add_to(dec);
    dec->add_option("--key", dec_key, "session key (hex)")->required();
    dec->add_option("--ct", dec_ct, "ciphertext block (hex)")->required();

    CipherOpts atk_opts;
    std::string atk_mode = "cp", atk_key = "random", atk_group;
    std::uint64_t atk_seed = 0;
    unsigned spot_checks = 3;
    bool full_check = false;
    auto* atk = app.add_subcommand("attack", "reconstruct the encryption function from chosen queries");
    atk_opts.add_to(atk);
    atk->add_option("--mode", atk_mode, "cp (7 encryptions) or cpcc (7 encryptions + 7 decryptions)")
        ->check(CLI::IsMember({"cp", "cpcc"}));
    atk->add_option("--key", atk_key, "session key (hex) or 'random'");
    atk->add_option("--seed", atk_seed, "seed for a random key and spot checks");
    atk->add_option("--group", atk_group, "hidden sum as a group spec file; the toy sum when omitted")
        ->check(CLI::ExistingFile);
    atk->add_option("--spot-checks", spot_checks, "random consistency checks after reconstruction");
    atk->add_flag("--full-check", full_check, "consistency-check every block");

    std::optional<unsigned> rep_rounds, rep_only;
    bool corrupt = false;
    std::uint64_t rep_seed = kDefaultCheckSeed;
    auto* rep = app.add_subcommand("reproduce", "run every acceptance criterion and claim check");
    rep->add_option("--rounds", rep_rounds, "use this round count instead of the 1/20/100 sweep")
        ->check(CLI::Range(1u, kMaxRounds));
    rep->add_flag("--corrupt-mixing", corrupt, "fault injection: flip one entry of the mixing layer");
    rep->add_option("--seed", rep_seed, "seed of the random corpus, keys and transforms");
    rep->add_option("--criterion", rep_only, "run a single criterion")->check(CLI::Range(1u, kCriterionCount));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    try {
        if (*analyze) return cmd_analyze(common, analyze_ref);
        if (*hverify) return cmd_hidden_verify(common, verify_group);
        if (*hsearch) return cmd_hidden_search(common, search_opts, no_translations);
        if (*enc) return cmd_crypt(common, enc_opts, enc_key, enc_pt, true);
        if (*dec) return cmd_crypt(common, dec_opts, dec_key, dec_ct, false);
        if (*atk)
            return cmd_attack(common, atk_opts, atk_mode, atk_key, atk_seed, atk_group, spot_checks, full_check);
        if (*rep) return cmd_reproduce(common, rep_rounds, corrupt, rep_seed, rep_only);
    } catch (const GroupError& e) {
        std::cerr << "hsum: " << e.what() << "\n";
        return kCheckFailed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hsum: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::domain_error& e) {
        std::cerr << "hsum: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "hsum: internal error: " << e.what() << "\n";
        return kCheckFailed;
    }
    return kBadInput;
}
