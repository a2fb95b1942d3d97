#pragma once

// The reproduction suite: numbered acceptance criteria plus supplementary
// claim checks, shared by the `reproduce` command and the acceptance tests.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hsum/bitvec.hpp"
#include "hsum/cipher.hpp"
#include "hsum/vbf.hpp"

namespace hsum {

inline constexpr unsigned kCriterionCount = 14;
inline constexpr std::uint64_t kDefaultCheckSeed = 0x5eed2024;

struct ReproduceOptions {
    /// Replaces the {1, 20, 100} round sweep of the cipher checks.
    std::optional<unsigned> rounds;
    /// Fault injection: use corrupted_toy_mixing().
    bool corrupt_mixing = false;
    std::uint64_t seed = kDefaultCheckSeed;
};

struct CheckResult {
    std::string id; ///< "1".."14" for criteria, letters for supplementary claims
    std::string title;
    bool passed = false;
    std::string detail;
};

struct CorpusEntry {
    std::string name;
    Vbf f;
};

/// Power permutations (all exponents coprime to 2^m - 1), gamma1 at m = 3, and
/// 50 seeded random permutations normalized to fix 0. m in 3..6.
std::vector<CorpusEntry> pinned_corpus(unsigned m, std::uint64_t seed = kDefaultCheckSeed);

/// The toy mixing layer with its first single-entry flip (row-major) that keeps
/// it invertible and takes the round map out of the toy sum's affine group.
BinMatrix corrupted_toy_mixing();

/// The toy cipher the checks run against, honouring corrupt_mixing.
CipherSpec check_cipher(const ReproduceOptions& options, unsigned rounds);

/// Runs criterion id (1..kCriterionCount). Exceptions become failures.
CheckResult run_criterion(unsigned id, const ReproduceOptions& options = {});
std::vector<CheckResult> run_supplementary_claims(const ReproduceOptions& options = {});
/// Criteria 1..14 followed by the supplementary claims.
std::vector<CheckResult> run_reproduce(const ReproduceOptions& options = {});

std::string format_check_line(const CheckResult& r);

} // namespace hsum
