#pragma once

// Structured reports for the command-line tool, rendered as JSON or text.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hsum/affine.hpp"
#include "hsum/trapdoor.hpp"
#include "hsum/vbf.hpp"

namespace hsum {

enum class ReportFormat { text, json };

/// HSUM_REPORT_FORMAT ("text" or "json") when set, text otherwise.
ReportFormat default_report_format();

struct AnalysisReport {
    unsigned m = 0;
    unsigned n = 0;
    bool permutation = false;
    unsigned delta = 0;
    Word delta_a = 0;
    Word delta_b = 0;
    // Square functions only.
    std::optional<bool> apn;
    std::optional<bool> weakly_apn;
    std::optional<bool> crooked;      ///< every derivative image is a coset
    std::optional<bool> anti_crooked; ///< no derivative image is a coset
    std::optional<Word> crooked_witness;
    std::optional<Word> anti_crooked_witness;
    std::optional<std::uint64_t> n_hat;
    std::optional<Word> n_hat_witness;

    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
};

AnalysisReport analyze(const Vbf& f);

struct HiddenSumReport {
    unsigned width = 0;
    std::size_t generators = 0;
    bool abelian = false;
    bool regular = false;
    bool elementary = false;
    std::size_t order = 0;
    bool kappa_homomorphism = false;
    bool kappa_inversion = false;
    std::vector<Word> u_basis;
    bool commutative = false;
    bool associative = false;
    bool distributive = false;
    bool nilpotent = false;
    unsigned nilpotency_index = 0;
    std::string error;

    bool passed() const noexcept;
    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
};

/// Never throws on group-theoretic failures; they land in the flags and error.
HiddenSumReport verify_hidden_sum(const std::vector<AffineMap>& generators);

struct AttackReport {
    std::string mode;
    unsigned rounds = 0;
    Word key = 0;
    unsigned width = 0;
    std::vector<Word> matrix;  ///< rows of M
    std::vector<Word> inverse; ///< rows of M^-1
    Word translation = 0;      ///< [t]
    DeductionReport deduction;

    bool passed() const noexcept { return deduction.passed(); }
    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
};

AttackReport make_attack_report(std::string mode, unsigned rounds, Word key, const AffineRepr& repr,
                                const DeductionReport& deduction);

std::string bits_string(Word v, unsigned width);

} // namespace hsum
