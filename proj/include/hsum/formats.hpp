#pragma once

// Text and JSON input formats: S-box tables, power/univariate function
// configs, group generator files and cipher configs.

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hsum/affine.hpp"
#include "hsum/cipher.hpp"
#include "hsum/vbf.hpp"

namespace hsum {

/// Malformed input. line and column are 1-based; 0 means "not known", as for
/// semantic errors in a JSON document that parsed fine.
class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0,
               std::string source = {});
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& source() const noexcept { return source_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string source_;
};

/// "m=<int> n=<int>" then 2^m hex values in input order. Values may be split
/// across lines and separated by whitespace or commas; '#' starts a comment.
Vbf parse_sbox_text(std::string_view text, std::string_view source = {});

/// { "field": {"m": 6, "modulus": "1011011"}, "kind": "power", "exponent": 49 }
/// or "kind": "univariate" with "coeffs" listed by ascending degree. Field
/// elements are integers (bit i is the coefficient of alpha^i) or hex strings.
/// An optional "basis" holds the field basis as row strings.
Vbf parse_vbf_config(std::string_view json_text, std::string_view source = {});

/// Loads a function reference: "builtin:gamma1", "builtin:power:<d>:<m>", a
/// JSON config, or an S-box text file. Relative paths resolve against base_dir.
Vbf load_vbf(const std::string& ref, const std::filesystem::path& base_dir = {});

/// First line d, then one generator per line as
/// "<d*d matrix bits, rows concatenated>|<d translation bits>".
std::vector<AffineMap> parse_group_spec(std::string_view text, std::string_view source = {});

struct CipherConfig {
    std::vector<Vbf> bricks;
    BinMatrix mixing = BinMatrix::identity(1);
    unsigned rounds = kDefaultToyRounds;
    std::string schedule = "rotate";
    std::uint64_t seed = 0;

    CipherSpec build() const;
};

/// { "bricks": [refs...], "mixing": ref, "rounds": N, "schedule": "rotate"|"custom",
///   "seed": S }. Bricks take load_vbf references or inline function configs;
/// mixing takes "builtin:toy", a matrix file path or an array of row strings.
/// "custom" is a seeded random-permutation schedule.
CipherConfig parse_cipher_config(std::string_view json_text,
                                 const std::filesystem::path& base_dir = {},
                                 std::string_view source = {});

std::string read_text_file(const std::filesystem::path& path);

/// Block I/O: a hex integer whose bit i is coordinate i + 1.
Word parse_hex_word(std::string_view text, unsigned width);
std::string format_hex_word(Word value, unsigned width);

} // namespace hsum
