#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lexidist/concept_list.hpp"
#include "lexidist/errors.hpp"
#include "lexidist/metrics.hpp"
#include "lexidist/utf8.hpp"
#include "lexidist/wordlist.hpp"

namespace lexidist {

// How multiple variants per concept combine into one score.
enum class VariantPolicy { max, mean, first };

// Percentage denominators: the whole concept list or only mutually attested
// concepts.
enum class DenominatorMode { full, aligned };

inline std::string_view to_string(VariantPolicy p) {
    switch (p) {
        case VariantPolicy::max: return "max";
        case VariantPolicy::mean: return "mean";
        case VariantPolicy::first: return "first";
    }
    return "max";
}

inline VariantPolicy parse_variant_policy(std::string_view name) {
    if (name == "max") return VariantPolicy::max;
    if (name == "mean") return VariantPolicy::mean;
    if (name == "first") return VariantPolicy::first;
    throw std::invalid_argument("unknown variant policy '" + std::string(name) +
                                "' (valid: max, mean, first)");
}

inline std::string_view to_string(DenominatorMode m) {
    return m == DenominatorMode::full ? "full" : "aligned";
}

inline DenominatorMode parse_denominator_mode(std::string_view name) {
    if (name == "full") return DenominatorMode::full;
    if (name == "aligned") return DenominatorMode::aligned;
    throw std::invalid_argument("unknown denominator mode '" + std::string(name) +
                                "' (valid: full, aligned)");
}

enum class ConceptStatus { scored, missing_a, missing_b, missing_both };

// Per-concept outcome. score is present exactly when status == scored;
// missing concepts are never zero-filled.
struct ConceptScore {
    int concept_id = 0;
    ConceptStatus status = ConceptStatus::missing_both;
    std::optional<double> score;
    std::string best_form_a;  // normalized pair realizing the score
    std::string best_form_b;
};

// Everything behind one column of the three report tables.
struct PairwiseComparison {
    std::string variety_a;
    std::string variety_b;
    MetricId metric = MetricId::jaro;
    VariantPolicy policy = VariantPolicy::max;
    DenominatorMode denominator_mode = DenominatorMode::full;
    std::vector<ConceptScore> concept_scores;  // concept-list order, all ids
    double avg_similarity = 0.0;
    double avg_distance = 0.0;
    int n_completely_similar = 0;
    int n_completely_different = 0;
    double pct_completely_similar = 0.0;
    double pct_completely_different = 0.0;
    int denominator = 0;
    int aligned_count = 0;

    std::string pair_label() const { return variety_a + "-" + variety_b; }
};

// 100 * count / denominator, unrounded; rounding is display-side.
inline double percentage(long long count, long long denominator) {
    if (denominator <= 0) {
        throw analysis_error("percentage denominator must be positive, got " +
                             std::to_string(denominator));
    }
    if (count < 0 || count > denominator) {
        throw analysis_error("percentage count " + std::to_string(count) + " outside [0, " +
                             std::to_string(denominator) + "]");
    }
    return 100.0 * static_cast<double>(count) / static_cast<double>(denominator);
}

struct VariantScore {
    double score = 0.0;
    std::size_t best_a = 0;  // indices into the variant sequences
    std::size_t best_b = 0;
};

// Combines the variant cross-product into one score per the policy.
//   max:   highest-scoring pair, ties to the first-listed pair
//   mean:  arithmetic mean over the cross-product; best pair is the one
//          closest to the mean, earliest on ties
//   first: first variant against first variant
inline VariantScore score_concept(const std::vector<LexicalForm>& forms_a,
                                  const std::vector<LexicalForm>& forms_b, MetricFn metric,
                                  VariantPolicy policy) {
    if (forms_a.empty() || forms_b.empty()) {
        throw analysis_error("score_concept requires non-empty variant sequences");
    }
    if (policy == VariantPolicy::first) {
        const double s =
            metric(utf8::decode(forms_a.front().normalized), utf8::decode(forms_b.front().normalized));
        return {s, 0, 0};
    }

    std::vector<double> cross;
    cross.reserve(forms_a.size() * forms_b.size());
    std::vector<std::u32string> decoded_b;
    decoded_b.reserve(forms_b.size());
    for (const auto& fb : forms_b) decoded_b.push_back(utf8::decode(fb.normalized));
    for (const auto& fa : forms_a) {
        const std::u32string da = utf8::decode(fa.normalized);
        for (const auto& db : decoded_b) cross.push_back(metric(da, db));
    }

    const auto pair_of = [&](std::size_t flat) {
        return std::pair<std::size_t, std::size_t>{flat / forms_b.size(), flat % forms_b.size()};
    };
    if (policy == VariantPolicy::max) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < cross.size(); ++k) {
            if (cross[k] > cross[best]) best = k;
        }
        const auto [ia, ib] = pair_of(best);
        return {cross[best], ia, ib};
    }
    double sum = 0.0;
    for (double s : cross) sum += s;
    const double mean = sum / static_cast<double>(cross.size());
    std::size_t best = 0;
    double best_delta = std::abs(cross[0] - mean);
    for (std::size_t k = 1; k < cross.size(); ++k) {
        const double delta = std::abs(cross[k] - mean);
        if (delta < best_delta) {
            best = k;
            best_delta = delta;
        }
    }
    const auto [ia, ib] = pair_of(best);
    return {mean, ia, ib};
}

// Scores every concept attested in both lists and aggregates the averages,
// exact-match counts, and percentages. "Completely similar" is score == 1.0
// exactly (identical normalized forms under Jaro); "completely different"
// is score == 0.0 exactly (no matching characters inside the window).
inline PairwiseComparison compare_pair(const Wordlist& list_a, const Wordlist& list_b,
                                       const ConceptList& concepts, MetricId metric_id,
                                       VariantPolicy policy, DenominatorMode denominator_mode) {
    for (const Wordlist* wl : {&list_a, &list_b}) {
        for (const auto& [id, _] : wl->entries) {
            if (!concepts.contains(id)) {
                throw analysis_error("wordlist '" + wl->variety + "' has concept id " +
                                     std::to_string(id) + " outside list '" + concepts.name() + "'");
            }
        }
    }

    PairwiseComparison cmp;
    cmp.variety_a = list_a.variety;
    cmp.variety_b = list_b.variety;
    cmp.metric = metric_id;
    cmp.policy = policy;
    cmp.denominator_mode = denominator_mode;

    const MetricFn metric = metric_lookup(metric_id);
    double sum = 0.0;
    for (const auto& concept_entry : concepts) {
        ConceptScore cs;
        cs.concept_id = concept_entry.id;
        const auto it_a = list_a.entries.find(concept_entry.id);
        const auto it_b = list_b.entries.find(concept_entry.id);
        const bool has_a = it_a != list_a.entries.end();
        const bool has_b = it_b != list_b.entries.end();
        if (has_a && has_b) {
            const VariantScore vs = score_concept(it_a->second, it_b->second, metric, policy);
            cs.status = ConceptStatus::scored;
            cs.score = vs.score;
            cs.best_form_a = it_a->second[vs.best_a].normalized;
            cs.best_form_b = it_b->second[vs.best_b].normalized;
            sum += vs.score;
            ++cmp.aligned_count;
            if (vs.score == 1.0) ++cmp.n_completely_similar;
            if (vs.score == 0.0) ++cmp.n_completely_different;
        } else if (!has_a && !has_b) {
            cs.status = ConceptStatus::missing_both;
        } else {
            cs.status = has_a ? ConceptStatus::missing_b : ConceptStatus::missing_a;
        }
        cmp.concept_scores.push_back(std::move(cs));
    }

    if (cmp.aligned_count == 0) {
        throw analysis_error("no overlap: varieties '" + list_a.variety + "' and '" + list_b.variety +
                             "' share no attested concepts");
    }
    cmp.avg_similarity = sum / static_cast<double>(cmp.aligned_count);
    cmp.avg_distance = 1.0 - cmp.avg_similarity;
    cmp.denominator = denominator_mode == DenominatorMode::full ? static_cast<int>(concepts.size())
                                                                : cmp.aligned_count;
    cmp.pct_completely_similar = percentage(cmp.n_completely_similar, cmp.denominator);
    cmp.pct_completely_different = percentage(cmp.n_completely_different, cmp.denominator);
    return cmp;
}

// One comparison per unordered pair, in input order.
inline std::vector<PairwiseComparison> all_pairs(const std::vector<Wordlist>& wordlists,
                                                 const ConceptList& concepts, MetricId metric_id,
                                                 VariantPolicy policy,
                                                 DenominatorMode denominator_mode) {
    if (wordlists.size() < 2) {
        throw analysis_error("need at least 2 varieties, got " + std::to_string(wordlists.size()));
    }
    for (std::size_t i = 0; i < wordlists.size(); ++i) {
        for (std::size_t j = i + 1; j < wordlists.size(); ++j) {
            if (wordlists[i].variety == wordlists[j].variety) {
                throw analysis_error("duplicate variety '" + wordlists[i].variety + "'");
            }
        }
    }
    std::vector<PairwiseComparison> out;
    out.reserve(wordlists.size() * (wordlists.size() - 1) / 2);
    for (std::size_t i = 0; i < wordlists.size(); ++i) {
        for (std::size_t j = i + 1; j < wordlists.size(); ++j) {
            out.push_back(
                compare_pair(wordlists[i], wordlists[j], concepts, metric_id, policy, denominator_mode));
        }
    }
    return out;
}

}  // namespace lexidist
