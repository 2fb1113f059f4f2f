#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "lexidist/classify.hpp"
#include "lexidist/comparison.hpp"
#include "lexidist/normalize.hpp"
#include "lexidist/version.hpp"
#include "lexidist/wordlist.hpp"

namespace lexidist {

enum class OutputFormat { markdown, csv, json };

inline std::string_view to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::markdown: return "markdown";
        case OutputFormat::csv: return "csv";
        case OutputFormat::json: return "json";
    }
    return "markdown";
}

inline OutputFormat parse_output_format(std::string_view name) {
    if (name == "markdown") return OutputFormat::markdown;
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw std::invalid_argument("unknown format '" + std::string(name) +
                                "' (valid: csv, json, markdown)");
}

// Everything needed to reproduce a run, echoed into every report.
struct RunConfig {
    std::vector<std::string> inputs;
    std::string concepts_path;
    MetricId metric = MetricId::jaro;
    VariantPolicy policy = VariantPolicy::max;
    DenominatorMode denominator_mode = DenominatorMode::full;
    NormalizationOptions normalization;
    OutputFormat format = OutputFormat::markdown;
    int round_digits = 2;
    std::string out_path;      // empty = stdout
    std::string matrix_file;   // classify only
    std::string columns;       // raw --columns text, empty = long format
};

struct ReportBundle {
    RunConfig config;
    std::string concept_list_name;
    std::size_t concept_count = 0;
    std::vector<PairwiseComparison> comparisons;  // shared column order for all tables
    std::optional<std::string> newick;
    ValidationReport validation;
};

namespace detail {

inline std::string metric_display(MetricId id) {
    switch (id) {
        case MetricId::jaro: return "Jaro";
        case MetricId::jaro_winkler: return "Jaro-Winkler";
        case MetricId::levenshtein_norm: return "Normalized Levenshtein";
    }
    return "Jaro";
}

inline std::string onoff(bool b) { return b ? "on" : "off"; }

inline void render_config_lines(const ReportBundle& bundle, std::vector<std::string>& lines) {
    const RunConfig& c = bundle.config;
    lines.push_back("toolkit: lexidist " + std::string(kVersion));
    if (!c.inputs.empty()) {
        std::string joined;
        for (const auto& p : c.inputs) {
            if (!joined.empty()) joined += ", ";
            joined += p;
        }
        lines.push_back("inputs: " + joined);
    }
    if (!c.matrix_file.empty()) lines.push_back("matrix file: " + c.matrix_file);
    lines.push_back("concept list: " + bundle.concept_list_name + " (" +
                    std::to_string(bundle.concept_count) + " concepts)");
    lines.push_back("metric: " + std::string(to_string(c.metric)));
    lines.push_back("variant policy: " + std::string(to_string(c.policy)));
    lines.push_back("denominator: " + std::string(to_string(c.denominator_mode)));
    lines.push_back("normalization: case_fold=" + onoff(c.normalization.case_fold) +
                    " strip_punctuation=" + onoff(c.normalization.strip_punctuation) +
                    " collapse_internal_whitespace=" + onoff(c.normalization.collapse_internal_whitespace));
    if (!c.columns.empty()) lines.push_back("columns: " + c.columns);
    lines.push_back("rounding: " + std::to_string(c.round_digits) + " digits");
}

inline std::string markdown_row(const std::string& head, const std::vector<std::string>& cells) {
    std::string row = "| " + head + " |";
    for (const auto& cell : cells) row += " " + cell + " |";
    return row;
}

}  // namespace detail

inline std::string render_markdown(const ReportBundle& bundle) {
    const int digits = bundle.config.round_digits;
    std::ostringstream out;
    out << "# Wordlist comparison report\n\n";

    out << "## Configuration\n\n";
    std::vector<std::string> config_lines;
    detail::render_config_lines(bundle, config_lines);
    for (const auto& l : config_lines) out << "- " << l << "\n";
    out << "\n";

    std::vector<std::string> pair_labels;
    for (const auto& cmp : bundle.comparisons) pair_labels.push_back(cmp.pair_label());
    const std::string divider = [&] {
        std::string d = "| --- |";
        for (std::size_t i = 0; i < pair_labels.size(); ++i) d += " --- |";
        return d;
    }();

    if (!bundle.comparisons.empty()) {
        out << "## Similarity / Distance\n\n";
        out << detail::markdown_row(detail::metric_display(bundle.config.metric) + " (Avg)", pair_labels)
            << "\n"
            << divider << "\n";
        std::vector<std::string> sim, dist;
        for (const auto& cmp : bundle.comparisons) {
            sim.push_back(detail::format_double(cmp.avg_similarity, digits));
            dist.push_back(detail::format_double(cmp.avg_distance, digits));
        }
        out << detail::markdown_row("Similarity", sim) << "\n";
        out << detail::markdown_row("Distance", dist) << "\n\n";

        out << "## Completely similar / different words\n\n";
        out << detail::markdown_row("Words", pair_labels) << "\n" << divider << "\n";
        std::vector<std::string> nsim, ndif;
        for (const auto& cmp : bundle.comparisons) {
            nsim.push_back(std::to_string(cmp.n_completely_similar));
            ndif.push_back(std::to_string(cmp.n_completely_different));
        }
        out << detail::markdown_row("Completely Similar", nsim) << "\n";
        out << detail::markdown_row("Completely Different", ndif) << "\n\n";

        out << "## Percentages of completely similar / different words\n\n";
        out << detail::markdown_row("Percent", pair_labels) << "\n" << divider << "\n";
        std::vector<std::string> psim, pdif;
        for (const auto& cmp : bundle.comparisons) {
            psim.push_back(detail::format_double(cmp.pct_completely_similar, digits) + "%");
            pdif.push_back(detail::format_double(cmp.pct_completely_different, digits) + "%");
        }
        out << detail::markdown_row("Completely Similar", psim) << "\n";
        out << detail::markdown_row("Completely Different", pdif) << "\n\n";
    }

    if (bundle.newick) {
        out << "## Classification tree\n\n";
        out << "```\n" << *bundle.newick << "\n```\n\n";
    }

    out << "## Validation\n\n";
    out << "```\n" << bundle.validation.to_text() << "```\n";
    return out.str();
}

inline std::string render_csv(const ReportBundle& bundle) {
    const int digits = bundle.config.round_digits;
    std::ostringstream out;
    std::vector<std::string> config_lines;
    detail::render_config_lines(bundle, config_lines);
    for (const auto& l : config_lines) out << "# " << l << "\n";
    out << "table,row,pair,value\n";
    for (const auto& cmp : bundle.comparisons) {
        out << "similarity_distance,similarity," << cmp.pair_label() << ','
            << detail::format_double(cmp.avg_similarity, digits) << "\n";
    }
    for (const auto& cmp : bundle.comparisons) {
        out << "similarity_distance,distance," << cmp.pair_label() << ','
            << detail::format_double(cmp.avg_distance, digits) << "\n";
    }
    for (const auto& cmp : bundle.comparisons) {
        out << "counts,completely_similar," << cmp.pair_label() << ',' << cmp.n_completely_similar
            << "\n";
    }
    for (const auto& cmp : bundle.comparisons) {
        out << "counts,completely_different," << cmp.pair_label() << ',' << cmp.n_completely_different
            << "\n";
    }
    for (const auto& cmp : bundle.comparisons) {
        out << "percentages,completely_similar," << cmp.pair_label() << ','
            << detail::format_double(cmp.pct_completely_similar, digits) << "\n";
    }
    for (const auto& cmp : bundle.comparisons) {
        out << "percentages,completely_different," << cmp.pair_label() << ','
            << detail::format_double(cmp.pct_completely_different, digits) << "\n";
    }
    if (bundle.newick) out << "tree,newick,," << *bundle.newick << "\n";
    return out.str();
}

// JSON carries unrounded doubles plus the rounded display strings; the
// optional tree is simply absent when not computed.
inline std::string render_json(const ReportBundle& bundle) {
    using json = nlohmann::ordered_json;
    const int digits = bundle.config.round_digits;
    json root;
    json meta;
    meta["toolkit"] = "lexidist";
    meta["version"] = kVersion;
    meta["inputs"] = bundle.config.inputs;
    if (!bundle.config.matrix_file.empty()) meta["matrix_file"] = bundle.config.matrix_file;
    meta["concept_list"] = {{"name", bundle.concept_list_name},
                            {"path", bundle.config.concepts_path},
                            {"concepts", bundle.concept_count}};
    meta["metric"] = std::string(to_string(bundle.config.metric));
    meta["variant_policy"] = std::string(to_string(bundle.config.policy));
    meta["denominator_mode"] = std::string(to_string(bundle.config.denominator_mode));
    meta["normalization"] = {
        {"case_fold", bundle.config.normalization.case_fold},
        {"strip_punctuation", bundle.config.normalization.strip_punctuation},
        {"collapse_internal_whitespace", bundle.config.normalization.collapse_internal_whitespace}};
    if (!bundle.config.columns.empty()) meta["columns"] = bundle.config.columns;
    meta["round_digits"] = digits;
    root["metadata"] = meta;

    json pairs = json::array();
    for (const auto& cmp : bundle.comparisons) {
        json p;
        p["variety_a"] = cmp.variety_a;
        p["variety_b"] = cmp.variety_b;
        p["avg_similarity"] = cmp.avg_similarity;
        p["avg_distance"] = cmp.avg_distance;
        p["n_completely_similar"] = cmp.n_completely_similar;
        p["n_completely_different"] = cmp.n_completely_different;
        p["pct_completely_similar"] = cmp.pct_completely_similar;
        p["pct_completely_different"] = cmp.pct_completely_different;
        p["denominator"] = cmp.denominator;
        p["aligned_count"] = cmp.aligned_count;
        p["display"] = {
            {"avg_similarity", detail::format_double(cmp.avg_similarity, digits)},
            {"avg_distance", detail::format_double(cmp.avg_distance, digits)},
            {"pct_completely_similar", detail::format_double(cmp.pct_completely_similar, digits)},
            {"pct_completely_different", detail::format_double(cmp.pct_completely_different, digits)}};
        pairs.push_back(std::move(p));
    }
    root["pairs"] = std::move(pairs);

    if (bundle.newick) root["newick"] = *bundle.newick;

    json validation;
    json varieties = json::array();
    for (const auto& v : bundle.validation.varieties) {
        json vj;
        vj["variety"] = v.variety;
        vj["covered"] = v.covered;
        vj["missing_ids"] = v.missing_ids;
        json hist = json::object();
        for (const auto& [variants, count] : v.variant_histogram) {
            hist[std::to_string(variants)] = count;
        }
        vj["variant_histogram"] = std::move(hist);
        vj["dominant_script"] = v.dominant_script;
        varieties.push_back(std::move(vj));
    }
    validation["varieties"] = std::move(varieties);
    json issues = json::array();
    for (const auto& issue : bundle.validation.issues) {
        const char* sev = issue.severity == Severity::error     ? "error"
                          : issue.severity == Severity::warning ? "warning"
                                                                : "info";
        issues.push_back({{"severity", sev}, {"message", issue.message}});
    }
    validation["issues"] = std::move(issues);
    root["validation"] = std::move(validation);

    return root.dump(2) + "\n";
}

// Deterministic: identical bundle -> byte-identical text.
inline std::string render_tables(const ReportBundle& bundle, OutputFormat format) {
    switch (format) {
        case OutputFormat::markdown: return render_markdown(bundle);
        case OutputFormat::csv: return render_csv(bundle);
        case OutputFormat::json: return render_json(bundle);
    }
    return render_markdown(bundle);
}

}  // namespace lexidist
