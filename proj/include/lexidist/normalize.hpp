#pragma once

#include <string>
#include <string_view>

#include "lexidist/unicode.hpp"
#include "lexidist/utf8.hpp"

namespace lexidist {

// Options are fixed for a whole run and echoed into every report.
struct NormalizationOptions {
    bool case_fold = true;
    bool strip_punctuation = true;            // leading/trailing only
    bool collapse_internal_whitespace = true; // runs of whitespace become one space

    bool operator==(const NormalizationOptions&) const = default;
};

// Pipeline: NFC -> optional case fold (re-composed) -> trim/edge-punctuation
// fixpoint -> optional internal whitespace collapsing. Idempotent: stripping
// runs until the edges are neither whitespace nor punctuation, so a second
// pass finds nothing to do. An empty result means the cell holds no form.
inline std::u32string normalize_scalars(std::u32string_view raw, const NormalizationOptions& options) {
    std::u32string s = uni::nfc(raw);
    if (options.case_fold) {
        // folding can denormalize (expansions), so compose again
        s = uni::nfc(uni::case_fold(s));
    }

    bool changed = true;
    while (changed && !s.empty()) {
        changed = false;
        std::size_t begin = 0, end = s.size();
        while (begin < end && uni::is_whitespace(s[begin])) ++begin;
        while (end > begin && uni::is_whitespace(s[end - 1])) --end;
        if (options.strip_punctuation) {
            while (begin < end && uni::is_punctuation(s[begin])) ++begin;
            while (end > begin && uni::is_punctuation(s[end - 1])) --end;
        }
        if (begin != 0 || end != s.size()) {
            s = std::u32string(s.begin() + static_cast<std::ptrdiff_t>(begin),
                               s.begin() + static_cast<std::ptrdiff_t>(end));
            changed = true;
        }
    }

    if (options.collapse_internal_whitespace) {
        std::u32string collapsed;
        collapsed.reserve(s.size());
        bool in_run = false;
        for (char32_t cp : s) {
            if (uni::is_whitespace(cp)) {
                if (!in_run) collapsed.push_back(U' ');
                in_run = true;
            } else {
                collapsed.push_back(cp);
                in_run = false;
            }
        }
        s = std::move(collapsed);
    }
    return s;
}

// UTF-8 front end; throws encoding_error on invalid bytes. Empty result
// signals an absent form, never a valid one.
inline std::string normalize_form(std::string_view raw, const NormalizationOptions& options) {
    return utf8::encode(normalize_scalars(utf8::decode(raw), options));
}

}  // namespace lexidist
