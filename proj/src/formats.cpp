#include "hsum/formats.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hsum/builtin.hpp"
#include "hsum/hidden_sum.hpp"

namespace hsum {

using nlohmann::json;

namespace {

std::string located(const std::string& message, std::size_t line, std::size_t column,
                    const std::string& source)
{
    std::string where = source.empty() ? std::string() : source + ":";
    if (line > 0) {
        where += std::to_string(line) + ":";
        if (column > 0) where += std::to_string(column) + ":";
    }
    return where.empty() ? message : where + " " + message;
}

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == ','; }

std::uint64_t parse_uint(std::string_view s, int base, const char* what, std::size_t line,
                         std::size_t column, std::string_view source)
{
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size())
        throw ParseError(std::string("bad ") + what + " '" + std::string(s) + "'", line, column,
                         std::string(source));
    return v;
}

// Byte offset to 1-based line/column, for JSON syntax errors.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset)
{
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < std::min(offset, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

json parse_json(std::string_view text, std::string_view source)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // byte is one past the offending character.
        const auto [line, column] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
        std::string msg = e.what();
        if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
        throw ParseError(msg, line, column, std::string(source));
    }
}

[[noreturn]] void semantic(const std::string& message, std::string_view source)
{
    throw ParseError(message, 0, 0, std::string(source));
}

const json& require(const json& obj, const char* key, std::string_view source)
{
    if (!obj.is_object() || !obj.contains(key)) semantic(std::string("missing field '") + key + "'", source);
    return obj.at(key);
}

unsigned require_uint(const json& v, const char* key, std::string_view source)
{
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        semantic(std::string("field '") + key + "' must be a non-negative integer", source);
    return v.get<unsigned>();
}

Word field_element(const json& v, std::string_view source)
{
    if (v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)) return v.get<Word>();
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) s = s.substr(2);
        return parse_uint(s, 16, "field element", 0, 0, source);
    }
    semantic("field elements must be integers or hex strings", source);
}

BinMatrix matrix_from_rows(const json& rows, const char* what, std::string_view source)
{
    if (!rows.is_array()) semantic(std::string(what) + " must be an array of row strings", source);
    std::string text;
    for (const auto& r : rows) {
        if (!r.is_string()) semantic(std::string(what) + " rows must be strings", source);
        text += r.get<std::string>() + "\n";
    }
    try {
        return parse_matrix_text(text);
    } catch (const std::invalid_argument& e) {
        semantic(std::string(what) + ": " + e.what(), source);
    }
}

Vbf vbf_from_json(const json& doc, std::string_view source)
{
    const auto& field = require(doc, "field", source);
    const unsigned m = require_uint(require(field, "m", source), "field.m", source);
    FieldSpec fs = [&] {
        try {
            if (field.contains("modulus")) {
                const auto& mod = field.at("modulus");
                if (!mod.is_string()) semantic("field.modulus must be a binary string", source);
                auto f = FieldSpec::parse(mod.get<std::string>());
                if (f.degree() != m)
                    semantic("field.modulus has degree " + std::to_string(f.degree()) + ", expected " +
                                 std::to_string(m),
                             source);
                return f;
            }
            return default_field(m);
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            semantic(std::string("field: ") + e.what(), source);
        }
    }();
    FieldBasis basis = FieldBasis::ascending(m);
    if (doc.contains("basis")) {
        auto b = matrix_from_rows(doc.at("basis"), "basis", source);
        if (b.dim() != m) semantic("basis must be " + std::to_string(m) + "x" + std::to_string(m), source);
        if (!b.invertible()) semantic("basis matrix is singular", source);
        basis = FieldBasis(b);
    }

    const auto& kind = require(doc, "kind", source);
    if (!kind.is_string()) semantic("field 'kind' must be a string", source);
    const auto k = kind.get<std::string>();
    if (k == "power") {
        const auto& e = require(doc, "exponent", source);
        if (!e.is_number_integer() || e.get<long long>() < 0)
            semantic("field 'exponent' must be a non-negative integer", source);
        return from_power(e.get<std::uint64_t>(), fs, basis);
    }
    if (k == "univariate") {
        const auto& c = require(doc, "coeffs", source);
        if (!c.is_array() || c.empty()) semantic("field 'coeffs' must be a non-empty array", source);
        std::vector<Word> coeffs;
        for (const auto& v : c) {
            const Word w = field_element(v, source);
            if (w >= fs.order()) semantic("coefficient " + std::to_string(w) + " is not in the field", source);
            coeffs.push_back(w);
        }
        return from_univariate(coeffs, fs, basis);
    }
    semantic("field 'kind' must be \"power\" or \"univariate\", got \"" + k + "\"", source);
}

std::filesystem::path resolve(const std::string& ref, const std::filesystem::path& base_dir)
{
    std::filesystem::path p(ref);
    return p.is_relative() && !base_dir.empty() ? base_dir / p : p;
}

} // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column, std::string source)
    : std::invalid_argument(located(message, line, column, source)),
      line_(line),
      column_(column),
      source_(std::move(source))
{
}

Vbf parse_sbox_text(std::string_view text, std::string_view source)
{
    const std::string src(source);
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    unsigned m = 0, n = 0;
    std::vector<Word> values;

    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && is_blank(line[i])) ++i;
            if (i >= line.size()) break;
            std::size_t j = i;
            while (j < line.size() && !is_blank(line[j])) ++j;
            const std::string_view tok(line.data() + i, j - i);
            const std::size_t column = i + 1;

            if (!have_header) {
                const auto eq = tok.find('=');
                if (eq == std::string_view::npos || (tok.substr(0, eq) != "m" && tok.substr(0, eq) != "n"))
                    throw ParseError("expected header \"m=<int> n=<int>\", got '" + std::string(tok) + "'",
                                     lineno, column, src);
                const auto v = parse_uint(tok.substr(eq + 1), 10, "header value", lineno, column + eq + 1, src);
                if (v == 0 || v > kDefaultMaxTableWidth)
                    throw ParseError("header width must be 1.." + std::to_string(kDefaultMaxTableWidth),
                                     lineno, column, src);
                (tok[0] == 'm' ? m : n) = static_cast<unsigned>(v);
                if (m && n) have_header = true;
            } else {
                std::string_view digits = tok;
                if (digits.rfind("0x", 0) == 0 || digits.rfind("0X", 0) == 0) digits.remove_prefix(2);
                const Word v = parse_uint(digits, 16, "hex value", lineno, column, src);
                if (values.size() == (std::size_t{1} << m))
                    throw ParseError("too many values: expected " + std::to_string(std::size_t{1} << m),
                                     lineno, column, src);
                if (v >> n)
                    throw ParseError("value " + std::string(tok) + " exceeds n=" + std::to_string(n) + " bits",
                                     lineno, column, src);
                values.push_back(v);
            }
            i = j;
        }
        if (!have_header && (m || n))
            throw ParseError("header must give both m and n on one line", lineno, 1, src);
    }
    if (!have_header) throw ParseError("missing header \"m=<int> n=<int>\"", lineno + 1, 1, src);
    if (values.size() != (std::size_t{1} << m))
        throw ParseError("expected " + std::to_string(std::size_t{1} << m) + " values, got " +
                             std::to_string(values.size()),
                         lineno + 1, 1, src);
    return Vbf(m, n, std::move(values));
}

Vbf parse_vbf_config(std::string_view json_text, std::string_view source)
{
    return vbf_from_json(parse_json(json_text, source), source);
}

Vbf load_vbf(const std::string& ref, const std::filesystem::path& base_dir)
{
    if (ref == "builtin:gamma1") return builtin::gamma1();
    if (ref.rfind("builtin:power:", 0) == 0) {
        // builtin:power:<d>:<m> over the default field, ascending basis.
        const std::string rest = ref.substr(14);
        const auto colon = rest.find(':');
        if (colon == std::string::npos) throw ParseError("expected builtin:power:<d>:<m>", 0, 0, ref);
        const auto d = parse_uint(rest.substr(0, colon), 10, "exponent", 0, 0, ref);
        const auto m = parse_uint(rest.substr(colon + 1), 10, "field degree", 0, 0, ref);
        if (m < 2 || m > kDefaultMaxTableWidth) throw ParseError("field degree must be 2..16", 0, 0, ref);
        const auto mm = static_cast<unsigned>(m);
        return from_power(d, default_field(mm), FieldBasis::ascending(mm));
    }
    if (ref.rfind("builtin:", 0) == 0) throw ParseError("unknown builtin function '" + ref + "'", 0, 0, ref);

    const auto path = resolve(ref, base_dir);
    const auto text = read_text_file(path);
    const auto first = std::find_if(text.begin(), text.end(), [](unsigned char c) { return !std::isspace(c); });
    if (first != text.end() && *first == '{') return parse_vbf_config(text, path.string());
    return parse_sbox_text(text, path.string());
}

std::vector<AffineMap> parse_group_spec(std::string_view text, std::string_view source)
{
    const std::string src(source);
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    unsigned d = 0;
    std::vector<AffineMap> gens;

    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        const std::string_view body(line.data() + b, e - b + 1);

        if (d == 0) {
            const auto v = parse_uint(body, 10, "dimension", lineno, b + 1, src);
            if (v == 0 || v > kMaxGroupWidth)
                throw ParseError("dimension must be 1.." + std::to_string(kMaxGroupWidth), lineno, b + 1, src);
            d = static_cast<unsigned>(v);
            continue;
        }
        const auto bar = body.find('|');
        if (bar == std::string_view::npos)
            throw ParseError("expected \"<matrix bits>|<translation bits>\"", lineno, b + 1, src);
        const auto mat = body.substr(0, bar);
        const auto tr = body.substr(bar + 1);
        if (mat.size() != std::size_t{d} * d)
            throw ParseError("matrix part must have " + std::to_string(d * d) + " bits, got " +
                                 std::to_string(mat.size()),
                             lineno, b + 1, src);
        if (tr.size() != d)
            throw ParseError("translation part must have " + std::to_string(d) + " bits, got " +
                                 std::to_string(tr.size()),
                             lineno, b + bar + 2, src);
        for (std::size_t k = 0; k < body.size(); ++k)
            if (k != bar && body[k] != '0' && body[k] != '1')
                throw ParseError("expected '0' or '1'", lineno, b + k + 1, src);

        std::vector<Word> rows;
        for (unsigned i = 0; i < d; ++i) rows.push_back(BinVec::parse(mat.substr(i * d, d)).bits());
        BinMatrix a(std::move(rows));
        if (!a.invertible())
            throw ParseError("generator matrix is singular (rank " + std::to_string(a.rank()) + ")", lineno,
                             b + 1, src);
        gens.emplace_back(std::move(a), BinVec::parse(tr));
    }
    if (d == 0) throw ParseError("missing dimension line", lineno + 1, 1, src);
    if (gens.empty()) throw ParseError("no generators", lineno + 1, 1, src);
    return gens;
}

CipherSpec CipherConfig::build() const
{
    KeySchedule sched;
    if (schedule == "rotate")
        sched = rotate_schedule();
    else if (schedule == "custom")
        sched = random_permutation_schedule(mixing.dim(), seed);
    else
        throw InvalidCipher("unknown key schedule '" + schedule + "'");
    return CipherSpec(bricks, mixing, rounds, std::move(sched));
}

CipherConfig parse_cipher_config(std::string_view json_text, const std::filesystem::path& base_dir,
                                 std::string_view source)
{
    const auto doc = parse_json(json_text, source);
    if (!doc.is_object()) semantic("cipher config must be a JSON object", source);
    CipherConfig cfg;

    const auto& bricks = require(doc, "bricks", source);
    if (!bricks.is_array() || bricks.empty()) semantic("field 'bricks' must be a non-empty array", source);
    for (const auto& b : bricks) {
        if (b.is_string())
            cfg.bricks.push_back(load_vbf(b.get<std::string>(), base_dir));
        else if (b.is_object())
            cfg.bricks.push_back(vbf_from_json(b, source));
        else
            semantic("each brick must be a reference string or a function config", source);
    }

    const auto& mixing = require(doc, "mixing", source);
    if (mixing.is_array()) {
        cfg.mixing = matrix_from_rows(mixing, "mixing", source);
    } else if (mixing.is_string()) {
        const auto ref = mixing.get<std::string>();
        if (ref == "builtin:toy") {
            cfg.mixing = builtin::toy_mixing();
        } else {
            const auto path = resolve(ref, base_dir);
            try {
                cfg.mixing = parse_matrix_text(read_text_file(path));
            } catch (const ParseError&) {
                throw;
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), 0, 0, path.string());
            }
        }
    } else {
        semantic("field 'mixing' must be a reference string or an array of rows", source);
    }

    if (doc.contains("rounds")) cfg.rounds = require_uint(doc.at("rounds"), "rounds", source);
    if (doc.contains("schedule")) {
        const auto& s = doc.at("schedule");
        if (!s.is_string()) semantic("field 'schedule' must be a string", source);
        cfg.schedule = s.get<std::string>();
        if (cfg.schedule != "rotate" && cfg.schedule != "custom")
            semantic("field 'schedule' must be \"rotate\" or \"custom\"", source);
    }
    if (doc.contains("seed")) {
        const auto& s = doc.at("seed");
        if (!s.is_number_integer() || s.get<long long>() < 0)
            semantic("field 'seed' must be a non-negative integer", source);
        cfg.seed = s.get<std::uint64_t>();
    }
    return cfg;
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file", 0, 0, path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Word parse_hex_word(std::string_view text, unsigned width)
{
    std::string_view digits = text;
    if (digits.rfind("0x", 0) == 0 || digits.rfind("0X", 0) == 0) digits.remove_prefix(2);
    const Word v = parse_uint(digits, 16, "hex block", 0, 0, {});
    if (v >> width)
        throw ParseError("hex block '" + std::string(text) + "' exceeds " + std::to_string(width) + " bits");
    return v;
}

std::string format_hex_word(Word value, unsigned width)
{
    const unsigned digits = std::max(1u, (width + 3) / 4);
    std::string s;
    for (unsigned i = digits; i-- > 0;) s += "0123456789abcdef"[(value >> (4 * i)) & 0xF];
    return s;
}

} // namespace hsum
