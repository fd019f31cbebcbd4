#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lzdawg/dawg.hpp"
#include "lzdawg/factor_io.hpp"
#include "lzdawg/oracle.hpp"
#include "lzdawg/packed_lz.hpp"
#include "lzdawg/rle_lz.hpp"

using namespace lzdawg;

namespace {

constexpr int kExitIo = 2;
constexpr int kExitVerify = 3;
constexpr int kExitUsage = 64;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input = "-";
    std::string output = "-";
    std::string mode = "packed";
    std::string block_chars = "auto";
    std::optional<unsigned> alphabet_bits;
    std::string format = "text";
    std::string dot;
    bool verify = false;
    bool json = false;
};

/// Maps bytes to dense codes in order of first appearance.
class CodeTable {
public:
    explicit CodeTable(std::optional<unsigned> bits) : bits_(bits) { code_.fill(-1); }

    unsigned sigma() const { return bits_ ? (1u << *bits_) : 256u; }

    Code encode(unsigned char b) {
        if (!bits_) return b;
        if (code_[b] < 0) {
            if (bytes_.size() >= sigma())
                throw UsageError("input has more than " + std::to_string(sigma()) + " distinct bytes; raise --alphabet-bits");
            code_[b] = static_cast<int>(bytes_.size());
            bytes_.push_back(b);
        }
        return static_cast<Code>(code_[b]);
    }
    unsigned char decode(Code c) const { return bits_ ? bytes_[c] : c; }

private:
    std::optional<unsigned> bits_;
    std::array<int, 256> code_;
    std::vector<unsigned char> bytes_;
};

/// Reads input in chunks; "-" is standard input.
class Input {
public:
    explicit Input(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw IoError("cannot open '" + path + "'");
            in_ = &file_;
        }
    }
    /// Returns false at end of input.
    bool next(std::string& chunk) {
        chunk.resize(1 << 16);
        in_->read(chunk.data(), static_cast<std::streamsize>(chunk.size()));
        chunk.resize(static_cast<std::size_t>(in_->gcount()));
        if (in_->bad()) throw IoError("read error");
        return !chunk.empty();
    }
    std::string all() {
        std::string data, chunk;
        while (next(chunk)) data += chunk;
        return data;
    }

private:
    std::ifstream file_;
    std::istream* in_ = &std::cin;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw IoError("cannot open '" + path + "' for writing");
            out_ = &file_;
        }
    }
    std::ostream& stream() { return *out_; }
    void close() {
        out_->flush();
        if (!*out_) throw IoError("write error");
    }

private:
    std::ofstream file_;
    std::ostream* out_ = &std::cout;
};

/// Common driver over the three backends.
class Backend {
public:
    Backend(const Options& opt, CodeTable& table) : table_(table), mode_(opt.mode) {
        if (mode_ == "packed") {
            PackedConfig cfg;
            cfg.sigma = table.sigma();
            if (opt.block_chars != "auto") {
                try {
                    std::size_t used = 0;
                    const unsigned long k = std::stoul(opt.block_chars, &used);
                    if (used != opt.block_chars.size() || k == 0) throw std::invalid_argument("");
                    cfg.block_chars = static_cast<unsigned>(k);
                } catch (const std::logic_error&) {
                    throw UsageError("--block-chars expects a positive integer or 'auto'");
                }
                try {
                    (void)AlphabetCfg::make(cfg.sigma, *cfg.block_chars);
                } catch (const std::exception& e) {
                    throw UsageError(std::string("--block-chars: ") + e.what());
                }
            }
            packed_.emplace(cfg);
        } else if (mode_ == "rle") {
            rle_.emplace();
        }
    }

    std::vector<Factor> push(const std::string& chunk) {
        std::vector<Code> codes;
        codes.reserve(chunk.size());
        for (char c : chunk) codes.push_back(table_.encode(static_cast<unsigned char>(c)));
        n_ += codes.size();
        if (packed_) return to_bytes(packed_->push(codes));
        if (rle_) return rle_->push(codes);
        naive_text_.insert(naive_text_.end(), chunk.begin(), chunk.end());
        return {};
    }

    std::vector<Factor> finish() {
        if (packed_) return to_bytes(packed_->finish());
        if (rle_) return rle_->finish();
        auto fs = naive_factorize(naive_text_);
        naive_z_ = fs.size();
        return fs;
    }

    nlohmann::ordered_json stats() const {
        nlohmann::ordered_json j;
        j["mode"] = mode_;
        j["N"] = n_;
        if (packed_) {
            const auto s = packed_->stats();
            j["z"] = s.z;
            j["r"] = s.r;
            j["dawg_states"] = s.dawg_states;
            j["dawg_edges"] = s.dawg_edges;
            j["points_total"] = s.points_total;
            j["rebuilds"] = s.rebuilds;
        } else if (rle_) {
            const auto s = rle_->stats();
            j["z"] = s.z;
            j["dawg_states"] = s.dawg_states;
            j["dawg_edges"] = s.dawg_edges;
            j["points_total"] = s.dom_points;
            j["rebuilds"] = 0;
        } else {
            j["z"] = naive_z_;
        }
        return j;
    }

    const Dawg* dawg() const {
        if (packed_) return &packed_->dawg();
        if (rle_) return &rle_->dawg();
        return nullptr;
    }

private:
    std::vector<Factor> to_bytes(std::vector<Factor> fs) const {
        for (Factor& f : fs)
            if (f.is_literal()) f.ch = table_.decode(f.ch);
        return fs;
    }

    CodeTable& table_;
    std::string mode_;
    std::optional<PackedFactorizer> packed_;
    std::optional<RleFactorizer> rle_;
    std::vector<Code> naive_text_;
    std::uint64_t n_ = 0;
    std::uint64_t naive_z_ = 0;
};

/// Factor-length and copy-source agreement with the reference factorizer.
bool verify(const std::vector<Factor>& fs, const std::string& data) {
    const std::vector<Code> text(data.begin(), data.end());
    if (first_invalid_factor(fs, text) != fs.size()) {
        std::cerr << "verify: invalid factor sequence\n";
        return false;
    }
    if (factor_lengths(fs) != factor_lengths(naive_factorize(text))) {
        std::cerr << "verify: factor lengths differ from the reference\n";
        return false;
    }
    return true;
}

void write_dot(const Backend& be, const std::string& path) {
    const Dawg* d = be.dawg();
    if (!d) throw UsageError("--dot needs --mode packed or rle");
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << d->to_dot();
}

int cmd_factorize(const Options& opt) {
    CodeTable table(opt.alphabet_bits);
    Backend be(opt, table);
    Input in(opt.input);
    Output out(opt.output);
    FactorWriter writer(out.stream(), parse_format(opt.format));
    std::string chunk, data;
    std::vector<Factor> all;
    while (in.next(chunk)) {
        if (opt.verify) data += chunk;
        auto fs = be.push(chunk);
        writer.write(fs);
        if (opt.verify) all.insert(all.end(), fs.begin(), fs.end());
    }
    auto fs = be.finish();
    writer.write(fs);
    out.close();
    if (!opt.dot.empty()) write_dot(be, opt.dot);
    if (opt.verify) {
        all.insert(all.end(), fs.begin(), fs.end());
        if (!verify(all, data)) return kExitVerify;
    }
    return 0;
}

int cmd_decode(const Options& opt) {
    Input in(opt.input);
    const std::string data = in.all();
    std::string text;
    try {
        text = decode_factors(read_factors(data));
    } catch (const FormatError& e) {
        throw IoError(e.what());
    }
    Output out(opt.output);
    out.stream().write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    return 0;
}

int cmd_stats(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    CodeTable table(opt.alphabet_bits);
    Backend be(opt, table);
    Input in(opt.input);
    std::string chunk;
    std::uint64_t m = 0;
    int last = -1;
    while (in.next(chunk)) {
        for (char c : chunk) {
            const int b = static_cast<unsigned char>(c);
            if (b != last) ++m;
            last = b;
        }
        be.push(chunk);
    }
    be.finish();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto j = be.stats();
    j["m"] = m;
    j["wall_seconds"] = secs;
    if (!opt.dot.empty()) write_dot(be, opt.dot);
    Output out(opt.output);
    if (opt.json) {
        out.stream() << j.dump() << '\n';
    } else {
        for (const auto& [k, v] : j.items()) out.stream() << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
    out.close();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online LZ77 s-factorization"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool backend) {
        sub->add_option("input", opt.input, "input file, '-' for stdin");
        sub->add_option("-o,--out", opt.output, "output file, '-' for stdout");
        if (!backend) return;
        sub->add_option("--mode", opt.mode, "backend")->check(CLI::IsMember({"packed", "rle", "naive"}));
        sub->add_option("--block-chars", opt.block_chars, "characters per meta-character, or auto");
        sub->add_option("--alphabet-bits", opt.alphabet_bits, "dense code width for input bytes")
            ->check(CLI::Range(1, 8));
        sub->add_option("--dot", opt.dot, "write the final DAWG as Graphviz DOT");
    };

    auto* fact = app.add_subcommand("factorize", "emit s-factors of the input");
    add_common(fact, true);
    fact->add_option("--output", opt.format, "record format")->check(CLI::IsMember({"text", "jsonl", "binary"}));
    fact->add_flag("--verify", opt.verify, "check against the reference factorizer");

    auto* dec = app.add_subcommand("decode", "rebuild the input from a factor stream");
    add_common(dec, false);

    auto* st = app.add_subcommand("stats", "report factorization statistics");
    add_common(st, true);
    st->add_flag("--json", opt.json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        std::ios::sync_with_stdio(false);
        if (*fact) return cmd_factorize(opt);
        if (*dec) return cmd_decode(opt);
        return cmd_stats(opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}
