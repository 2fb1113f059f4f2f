#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lexidist {

// String similarity kernels over Unicode scalar values. All metrics are
// total, symmetric, and return scores in [0,1] with 1 exactly on equal
// inputs. The comparison unit is the scalar, never the byte: callers are
// expected to hand in NFC-normalized sequences (see normalize.hpp).

namespace detail {

// Jaro matching window: floor(max(|a|,|b|)/2) - 1, never negative.
inline std::size_t jaro_window(std::size_t la, std::size_t lb) {
    const std::size_t lmax = std::max(la, lb);
    return lmax / 2 >= 1 ? lmax / 2 - 1 : 0;
}

// The final formula is spelled identically here and in the naive kernel so
// both produce bit-equal doubles for equal (m, t, la, lb).
inline double jaro_formula(std::size_t m, std::size_t half_transpositions,
                           std::size_t la, std::size_t lb) {
    const double md = static_cast<double>(m);
    const double t = static_cast<double>(half_transpositions) / 2.0;
    return (md / static_cast<double>(la) + md / static_cast<double>(lb) + (md - t) / md) / 3.0;
}

}  // namespace detail

// Standard Jaro similarity. Both empty -> 1; one empty or no matches -> 0.
inline double jaro_similarity(std::u32string_view a, std::u32string_view b) {
    const std::size_t la = a.size(), lb = b.size();
    if (la == 0 && lb == 0) return 1.0;
    if (la == 0 || lb == 0) return 0.0;

    const std::size_t window = detail::jaro_window(la, lb);
    std::vector<char> a_matched(la, 0), b_matched(lb, 0);
    std::size_t m = 0;
    for (std::size_t i = 0; i < la; ++i) {
        const std::size_t lo = i > window ? i - window : 0;
        const std::size_t hi = std::min(lb, i + window + 1);
        for (std::size_t j = lo; j < hi; ++j) {
            if (!b_matched[j] && a[i] == b[j]) {
                a_matched[i] = 1;
                b_matched[j] = 1;
                ++m;
                break;
            }
        }
    }
    if (m == 0) return 0.0;

    // half-transpositions: matched characters out of order
    std::size_t misordered = 0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < la; ++i) {
        if (!a_matched[i]) continue;
        while (!b_matched[k]) ++k;
        if (a[i] != b[k]) ++misordered;
        ++k;
    }
    return detail::jaro_formula(m, misordered, la, lb);
}

inline double jaro_distance(std::u32string_view a, std::u32string_view b) {
    return 1.0 - jaro_similarity(a, b);
}

// Literal transcription of the textbook definition, kept as an independent
// oracle: every candidate position is tested against the |i-j| <= window
// condition directly and the matched subsequences are materialized before
// counting transpositions. Must agree with jaro_similarity exactly.
inline double jaro_similarity_naive(std::u32string_view a, std::u32string_view b) {
    const std::size_t la = a.size(), lb = b.size();
    if (la == 0 && lb == 0) return 1.0;
    if (la == 0 || lb == 0) return 0.0;

    const std::size_t window = detail::jaro_window(la, lb);
    std::vector<char> used(lb, 0);
    std::vector<char32_t> matched_in_a;
    for (std::size_t i = 0; i < la; ++i) {
        for (std::size_t j = 0; j < lb; ++j) {
            const std::size_t dist = i > j ? i - j : j - i;
            if (dist <= window && !used[j] && a[i] == b[j]) {
                used[j] = 1;
                matched_in_a.push_back(a[i]);
                break;
            }
        }
    }
    const std::size_t m = matched_in_a.size();
    if (m == 0) return 0.0;

    std::vector<char32_t> matched_in_b;
    for (std::size_t j = 0; j < lb; ++j) {
        if (used[j]) matched_in_b.push_back(b[j]);
    }
    std::size_t misordered = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (matched_in_a[i] != matched_in_b[i]) ++misordered;
    }
    return detail::jaro_formula(m, misordered, la, lb);
}

// Winkler prefix boost: scaling 0.1, common prefix capped at 4 scalars.
inline double jaro_winkler_similarity(std::u32string_view a, std::u32string_view b) {
    const double j = jaro_similarity(a, b);
    const std::size_t limit = std::min({a.size(), b.size(), std::size_t{4}});
    std::size_t prefix = 0;
    while (prefix < limit && a[prefix] == b[prefix]) ++prefix;
    return j + static_cast<double>(prefix) * 0.1 * (1.0 - j);
}

// 1 - edit_distance / max(|a|,|b|); both empty -> 1.
inline double normalized_levenshtein(std::u32string_view a, std::u32string_view b) {
    const std::size_t la = a.size(), lb = b.size();
    if (la == 0 && lb == 0) return 1.0;
    std::vector<std::size_t> prev(lb + 1), cur(lb + 1);
    for (std::size_t j = 0; j <= lb; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= la; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= lb; ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    const double dist = static_cast<double>(prev[lb]);
    return 1.0 - dist / static_cast<double>(std::max(la, lb));
}

// ---- registry ----

enum class MetricId { jaro, jaro_winkler, levenshtein_norm };

using MetricFn = double (*)(std::u32string_view, std::u32string_view);

inline constexpr std::array<std::string_view, 3> metric_names() {
    return {"jaro", "jaro_winkler", "levenshtein_norm"};
}

inline std::string_view to_string(MetricId id) {
    switch (id) {
        case MetricId::jaro: return "jaro";
        case MetricId::jaro_winkler: return "jaro_winkler";
        case MetricId::levenshtein_norm: return "levenshtein_norm";
    }
    return "jaro";
}

inline MetricId parse_metric_id(std::string_view name) {
    if (name == "jaro") return MetricId::jaro;
    if (name == "jaro_winkler") return MetricId::jaro_winkler;
    if (name == "levenshtein_norm") return MetricId::levenshtein_norm;
    std::string valid;
    for (auto n : metric_names()) {
        if (!valid.empty()) valid += ", ";
        valid += n;
    }
    throw std::invalid_argument("unknown metric '" + std::string(name) + "' (valid: " + valid + ")");
}

inline MetricFn metric_lookup(MetricId id) {
    switch (id) {
        case MetricId::jaro: return &jaro_similarity;
        case MetricId::jaro_winkler: return &jaro_winkler_similarity;
        case MetricId::levenshtein_norm: return &normalized_levenshtein;
    }
    return &jaro_similarity;
}

inline MetricFn metric_lookup(std::string_view name) { return metric_lookup(parse_metric_id(name)); }

}  // namespace lexidist
