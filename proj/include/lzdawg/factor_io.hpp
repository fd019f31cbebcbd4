#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lzdawg/factor.hpp"

namespace lzdawg {

enum class FactorFormat { Text, Jsonl, Binary };

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

FactorFormat parse_format(const std::string& name);

/// Stream writer; binary output starts with the LZF1 magic on construction.
class FactorWriter {
public:
    FactorWriter(std::ostream& os, FactorFormat fmt);
    void write(const Factor& f);
    void write(const std::vector<Factor>& fs) {
        for (const Factor& f : fs) write(f);
    }

private:
    std::ostream& os_;
    FactorFormat fmt_;
};

/// Parses a whole factor file, detecting the format from its first bytes.
/// Factor start positions are recomputed from the lengths.
std::vector<Factor> read_factors(const std::string& data);

/// Expands factors back into bytes; throws FormatError on a bad copy source.
std::string decode_factors(const std::vector<Factor>& fs);

}  // namespace lzdawg
