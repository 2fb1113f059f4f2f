#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "lexidist/errors.hpp"

// Strict UTF-8 codec. ICU's converters substitute U+FFFD for bad input;
// wordlist ingestion needs a hard error with the offending byte offset
// instead, so decoding is done here and ICU only ever sees valid scalars.

namespace lexidist::utf8 {

// Decodes one scalar starting at s[i]. On success advances i and returns
// true. On malformed input leaves i at the offending byte and returns false.
inline bool decode_one(std::string_view s, std::size_t& i, char32_t& out) {
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    const unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        out = b0;
        ++i;
        return true;
    }
    int len;
    char32_t cp;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return false;  // continuation or invalid lead byte
    }
    if (i + static_cast<std::size_t>(len) > s.size()) return false;
    for (int k = 1; k < len; ++k) {
        const unsigned char bk = byte(i + static_cast<std::size_t>(k));
        if ((bk & 0xC0) != 0x80) return false;
        cp = (cp << 6) | (bk & 0x3F);
    }
    // reject overlong encodings, surrogates, and out-of-range values
    static constexpr char32_t min_for_len[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < min_for_len[len]) return false;
    if (cp >= 0xD800 && cp <= 0xDFFF) return false;
    if (cp > 0x10FFFF) return false;
    out = cp;
    i += static_cast<std::size_t>(len);
    return true;
}

inline bool try_decode(std::string_view s, std::u32string& out, std::size_t& bad_offset) {
    out.clear();
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        char32_t cp;
        if (!decode_one(s, i, cp)) {
            bad_offset = i;
            return false;
        }
        out.push_back(cp);
    }
    return true;
}

inline std::u32string decode(std::string_view s) {
    std::u32string out;
    std::size_t bad = 0;
    if (!try_decode(s, out, bad)) {
        throw encoding_error("invalid UTF-8 at byte offset " + std::to_string(bad));
    }
    return out;
}

inline void encode_one(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string encode(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : s) encode_one(cp, out);
    return out;
}

}  // namespace lexidist::utf8
