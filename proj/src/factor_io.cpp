#include "lzdawg/factor_io.hpp"

#include <json.hpp>
#include <ostream>
#include <sstream>

namespace lzdawg {

namespace {

constexpr char kMagic[] = "LZF1";

void put_varint(std::ostream& os, std::uint64_t v) {
    while (v >= 0x80) {
        os.put(static_cast<char>((v & 0x7f) | 0x80));
        v >>= 7;
    }
    os.put(static_cast<char>(v));
}

std::uint64_t get_varint(const std::string& data, std::size_t& i) {
    std::uint64_t v = 0;
    for (unsigned shift = 0; shift < 64; shift += 7) {
        if (i >= data.size()) throw FormatError("truncated varint at byte " + std::to_string(i));
        const auto b = static_cast<unsigned char>(data[i++]);
        v |= std::uint64_t{b & 0x7fu} << shift;
        if (!(b & 0x80)) return v;
    }
    throw FormatError("varint too long at byte " + std::to_string(i));
}

Code checked_byte(std::uint64_t v, const std::string& where) {
    if (v > 255) throw FormatError(where + ": literal byte out of range");
    return static_cast<Code>(v);
}

void add_factor(std::vector<Factor>& fs, std::uint64_t& pos, Factor f, const std::string& where) {
    if (!f.is_literal()) {
        if (f.len == 0) throw FormatError(where + ": copy length must be positive");
        if (f.src == 0 || f.src >= pos) throw FormatError(where + ": copy source out of range");
    }
    f.start = pos;
    pos += f.length();
    fs.push_back(f);
}

std::vector<Factor> read_binary(const std::string& data) {
    std::vector<Factor> fs;
    std::uint64_t pos = 1;
    std::size_t i = 4;
    while (i < data.size()) {
        const std::string where = "byte " + std::to_string(i);
        const auto tag = static_cast<unsigned char>(data[i++]);
        if (tag == 0) {
            add_factor(fs, pos, Factor::literal(0, checked_byte(get_varint(data, i), where)), where);
        } else if (tag == 1) {
            const std::uint64_t src = get_varint(data, i);
            const std::uint64_t len = get_varint(data, i);
            add_factor(fs, pos, Factor::copy(0, src, len), where);
        } else {
            throw FormatError(where + ": unknown tag " + std::to_string(tag));
        }
    }
    return fs;
}

std::vector<Factor> read_lines(const std::string& data, bool json) {
    std::vector<Factor> fs;
    std::uint64_t pos = 1;
    std::istringstream in(data);
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const std::string where = "line " + std::to_string(lineno);
        if (json) {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(line);
                const std::string kind = j.at("kind").get<std::string>();
                if (kind == "literal")
                    add_factor(fs, pos, Factor::literal(0, checked_byte(j.at("byte").get<std::uint64_t>(), where)), where);
                else if (kind == "copy")
                    add_factor(fs, pos, Factor::copy(0, j.at("src").get<std::uint64_t>(), j.at("len").get<std::uint64_t>()),
                               where);
                else
                    throw FormatError(where + ": unknown kind '" + kind + "'");
            } catch (const nlohmann::json::exception& e) {
                throw FormatError(where + ": " + e.what());
            }
            continue;
        }
        std::istringstream ls(line);
        std::string tag, extra;
        ls >> tag;
        if (tag == "L") {
            std::uint64_t b;
            if (!(ls >> b)) throw FormatError(where + ": expected 'L <byte>'");
            if (ls >> extra) throw FormatError(where + ": trailing data");
            add_factor(fs, pos, Factor::literal(0, checked_byte(b, where)), where);
        } else if (tag == "C") {
            std::uint64_t src, len;
            if (!(ls >> src >> len)) throw FormatError(where + ": expected 'C <src> <len>'");
            if (ls >> extra) throw FormatError(where + ": trailing data");
            add_factor(fs, pos, Factor::copy(0, src, len), where);
        } else {
            throw FormatError(where + ": unknown record '" + tag + "'");
        }
    }
    return fs;
}

}  // namespace

FactorFormat parse_format(const std::string& name) {
    if (name == "text") return FactorFormat::Text;
    if (name == "jsonl") return FactorFormat::Jsonl;
    if (name == "binary") return FactorFormat::Binary;
    throw std::invalid_argument("unknown output format '" + name + "'");
}

FactorWriter::FactorWriter(std::ostream& os, FactorFormat fmt) : os_(os), fmt_(fmt) {
    if (fmt_ == FactorFormat::Binary) os_.write(kMagic, 4);
}

void FactorWriter::write(const Factor& f) {
    switch (fmt_) {
    case FactorFormat::Text:
        if (f.is_literal())
            os_ << "L " << unsigned{f.ch} << '\n';
        else
            os_ << "C " << f.src << ' ' << f.len << '\n';
        break;
    case FactorFormat::Jsonl:
        if (f.is_literal())
            os_ << R"({"kind":"literal","byte":)" << unsigned{f.ch} << "}\n";
        else
            os_ << R"({"kind":"copy","src":)" << f.src << R"(,"len":)" << f.len << "}\n";
        break;
    case FactorFormat::Binary:
        if (f.is_literal()) {
            os_.put(0);
            put_varint(os_, f.ch);
        } else {
            os_.put(1);
            put_varint(os_, f.src);
            put_varint(os_, f.len);
        }
        break;
    }
}

std::vector<Factor> read_factors(const std::string& data) {
    if (data.compare(0, 4, kMagic) == 0) return read_binary(data);
    const auto first = data.find_first_not_of(" \t\r\n");
    const bool json = first != std::string::npos && data[first] == '{';
    return read_lines(data, json);
}

std::string decode_factors(const std::vector<Factor>& fs) {
    std::string out;
    for (const Factor& f : fs) {
        if (f.is_literal()) {
            out.push_back(static_cast<char>(f.ch));
            continue;
        }
        if (f.src == 0 || f.src > out.size())
            throw FormatError("copy source " + std::to_string(f.src) + " out of range");
        const std::size_t from = f.src - 1;
        for (std::uint64_t i = 0; i < f.len; ++i) out.push_back(out[from + i]);
    }
    return out;
}

}  // namespace lzdawg
