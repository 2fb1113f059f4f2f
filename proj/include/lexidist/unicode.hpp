#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/uscript.h>

// Thin ICU wrappers over char32_t sequences. Everything downstream works on
// Unicode scalar values; ICU is the authority for normalization, case
// folding, and character properties.

namespace lexidist::uni {

namespace detail {

inline icu::UnicodeString to_icu(std::u32string_view s) {
    std::vector<UChar32> buf(s.begin(), s.end());
    return icu::UnicodeString::fromUTF32(buf.data(), static_cast<int32_t>(buf.size()));
}

inline std::u32string from_icu(const icu::UnicodeString& us) {
    UErrorCode status = U_ZERO_ERROR;
    const int32_t len = us.toUTF32(nullptr, 0, status);
    status = U_ZERO_ERROR;  // preflight sets U_BUFFER_OVERFLOW_ERROR
    std::vector<UChar32> buf(static_cast<std::size_t>(len));
    us.toUTF32(buf.data(), len, status);
    if (U_FAILURE(status)) {
        throw std::runtime_error(std::string("ICU UTF-32 conversion failed: ") + u_errorName(status));
    }
    return std::u32string(buf.begin(), buf.end());
}

inline const icu::Normalizer2& nfc_instance() {
    UErrorCode status = U_ZERO_ERROR;
    static const icu::Normalizer2* inst = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status) || inst == nullptr) {
        throw std::runtime_error("ICU NFC normalizer unavailable");
    }
    return *inst;
}

}  // namespace detail

// Canonical composition (NFC).
inline std::u32string nfc(std::u32string_view s) {
    if (s.empty()) return {};
    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString out = detail::nfc_instance().normalize(detail::to_icu(s), status);
    if (U_FAILURE(status)) {
        throw std::runtime_error(std::string("ICU normalization failed: ") + u_errorName(status));
    }
    return detail::from_icu(out);
}

// Default (full) Unicode case folding.
inline std::u32string case_fold(std::u32string_view s) {
    if (s.empty()) return {};
    icu::UnicodeString us = detail::to_icu(s);
    us.foldCase(U_FOLD_CASE_DEFAULT);
    return detail::from_icu(us);
}

inline bool is_whitespace(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)) != 0; }

// General category P* (all punctuation classes).
inline bool is_punctuation(char32_t cp) { return u_ispunct(static_cast<UChar32>(cp)) != 0; }

inline bool is_uppercase(char32_t cp) { return u_isupper(static_cast<UChar32>(cp)) != 0; }

// Script property name, e.g. "Latin", "Arabic", "Common".
inline std::string script_name(char32_t cp) {
    UErrorCode status = U_ZERO_ERROR;
    const UScriptCode sc = uscript_getScript(static_cast<UChar32>(cp), &status);
    if (U_FAILURE(status)) return "Unknown";
    const char* name = uscript_getName(sc);
    return name != nullptr ? name : "Unknown";
}

// Counts concrete scripts (Common/Inherited/Unknown are skipped).
inline void accumulate_scripts(std::u32string_view s, std::map<std::string, std::size_t>& counts) {
    for (char32_t cp : s) {
        std::string name = script_name(cp);
        if (name == "Common" || name == "Inherited" || name == "Unknown") continue;
        ++counts[name];
    }
}

// Highest count wins; ties resolved alphabetically. "Common" when nothing
// concrete was seen.
inline std::string dominant_script(const std::map<std::string, std::size_t>& counts) {
    std::string best = "Common";
    std::size_t best_count = 0;
    for (const auto& [name, count] : counts) {
        if (count > best_count) {
            best = name;
            best_count = count;
        }
    }
    return best;
}

inline std::string dominant_script(std::u32string_view s) {
    std::map<std::string, std::size_t> counts;
    accumulate_scripts(s, counts);
    return dominant_script(counts);
}

}  // namespace lexidist::uni
