#pragma once

// Two-one index strings and their comma/plus composition strings.
//
// An index string is {2}^{s_1}, 1, {2}^{s_2}, 1, ..., {2}^{s_m}, 1 (ends
// with 1) or {2}^{s_1}, 1, ..., {2}^{s_m}, 1, {2}^{s_{m+1}} (ends with 2,
// final exponent >= 1). Its composition strings arise from the block values
//
//   p  blocks: 2s_1+1, ..., 2s_m+1            [, 2s_{m+1}]
//   p~ blocks:  s_1+1, ...,  s_m+1            [,  s_{m+1}]
//
// by choosing comma or plus at each of the B-1 separators; a plus merges
// adjacent blocks by addition, applied to p and p~ simultaneously.
// Enumeration is in lexicographic mask order (mask bit = 1 means plus, the
// all-commas mask comes first).

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qzeta {

enum class Ending { One, Two };

class IndexString {
public:
    static IndexString ends_with_one(std::vector<int> exponents) {
        if (exponents.empty())
            throw std::invalid_argument("IndexString: an ends-with-1 string needs m >= 1");
        for (int s : exponents)
            if (s < 0) throw std::invalid_argument("IndexString: exponents must be >= 0");
        return IndexString(Ending::One, std::move(exponents));
    }

    static IndexString ends_with_two(std::vector<int> exponents) {
        if (exponents.empty())
            throw std::invalid_argument("IndexString: an ends-with-2 string needs a final block");
        for (int s : exponents)
            if (s < 0) throw std::invalid_argument("IndexString: exponents must be >= 0");
        if (exponents.back() < 1)
            throw std::invalid_argument("IndexString: the final exponent of an ends-with-2 string must be >= 1");
        return IndexString(Ending::Two, std::move(exponents));
    }

    // Parses the expanded form, e.g. "2,2,1" for {2}^2,1. Tokens are only
    // "1" and "2"; the empty string is not a valid IndexString.
    static IndexString parse_expanded(std::string_view text) {
        std::vector<int> tokens;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto comma = text.find(',', pos);
            std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
            while (!tok.empty() && (tok.front() == ' ')) tok.remove_prefix(1);
            while (!tok.empty() && (tok.back() == ' ')) tok.remove_suffix(1);
            if (tok == "1")
                tokens.push_back(1);
            else if (tok == "2")
                tokens.push_back(2);
            else
                throw std::invalid_argument("IndexString: token '" + std::string(tok) +
                                            "' is not a two-one symbol");
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        if (tokens.empty()) throw std::invalid_argument("IndexString: empty string");

        std::vector<int> exps;
        int run = 0;
        for (int t : tokens) {
            if (t == 2) {
                ++run;
            } else {
                exps.push_back(run);
                run = 0;
            }
        }
        if (tokens.back() == 1) return ends_with_one(std::move(exps));
        exps.push_back(run);
        return ends_with_two(std::move(exps));
    }

    Ending ending() const { return ending_; }
    const std::vector<int>& exponents() const { return exponents_; }

    // Number of 1s in the string.
    std::size_t ones_count() const {
        return ending_ == Ending::One ? exponents_.size() : exponents_.size() - 1;
    }

    std::size_t block_count() const { return exponents_.size(); }

    // The string as a flat exponent list of 2s and 1s, e.g. {2,2,1}.
    std::vector<int> expanded() const {
        std::vector<int> out;
        const std::size_t m = ones_count();
        for (std::size_t i = 0; i < exponents_.size(); ++i) {
            out.insert(out.end(), static_cast<std::size_t>(exponents_[i]), 2);
            if (i < m) out.push_back(1);
        }
        return out;
    }

    int weight() const {
        const int s = std::accumulate(exponents_.begin(), exponents_.end(), 0);
        return 2 * s + static_cast<int>(ones_count());
    }

    std::string display() const {
        std::string out;
        for (int v : expanded()) {
            if (!out.empty()) out += ',';
            out += static_cast<char>('0' + v);
        }
        return out;
    }

private:
    IndexString(Ending e, std::vector<int> exps) : ending_(e), exponents_(std::move(exps)) {}

    Ending ending_;
    std::vector<int> exponents_;
};

struct CompositionString {
    std::vector<int> p;
    std::vector<int> p_tilde;
    std::vector<bool> mask;  // mask[i] = true: separator i is a plus

    std::string mask_string() const {
        std::string out;
        for (bool b : mask) out += b ? '+' : ',';
        return out;
    }
};

// All 2^(B-1) composition strings of s, in lexicographic mask order.
inline std::vector<CompositionString> enumerate_compositions(const IndexString& s,
                                                             std::size_t max_blocks = 8) {
    const std::size_t blocks = s.block_count();
    if (blocks > max_blocks)
        throw std::invalid_argument("enumerate_compositions: block count " + std::to_string(blocks) +
                                    " exceeds the limit " + std::to_string(max_blocks));

    std::vector<int> bp, bpt;
    const std::size_t m = s.ones_count();
    for (std::size_t i = 0; i < blocks; ++i) {
        const int e = s.exponents()[i];
        if (i < m) {
            bp.push_back(2 * e + 1);
            bpt.push_back(e + 1);
        } else {
            bp.push_back(2 * e);  // final block of an ends-with-2 string
            bpt.push_back(e);
        }
    }

    const std::size_t seps = blocks - 1;
    std::vector<CompositionString> out;
    out.reserve(std::size_t{1} << seps);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << seps); ++mask) {
        CompositionString c;
        c.mask.resize(seps);
        // bit (seps-1-i) of the counter is separator i, so counting up walks
        // the masks in lexicographic order with all-commas first
        for (std::size_t i = 0; i < seps; ++i)
            c.mask[i] = (mask >> (seps - 1 - i)) & 1;
        c.p.push_back(bp[0]);
        c.p_tilde.push_back(bpt[0]);
        for (std::size_t i = 0; i < seps; ++i) {
            if (c.mask[i]) {
                c.p.back() += bp[i + 1];
                c.p_tilde.back() += bpt[i + 1];
            } else {
                c.p.push_back(bp[i + 1]);
                c.p_tilde.push_back(bpt[i + 1]);
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

inline std::size_t block_count(const IndexString& s) { return s.block_count(); }

}  // namespace qzeta
