// lexidist: wordlist-based variety comparison and classification.
//
// Subcommands: validate, compare, classify. Exit codes: 0 success,
// 1 analysis/validation error, 2 input/parse/usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lexidist/lexidist.hpp"

#ifndef LEXIDIST_DEFAULT_CONCEPTS
#define LEXIDIST_DEFAULT_CONCEPTS ""
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAnalysis = 1;
constexpr int kExitInput = 2;

struct CommonArgs {
    std::vector<std::string> inputs;
    std::string concepts = LEXIDIST_DEFAULT_CONCEPTS;
    std::string columns;
    bool no_case_fold = false;
    bool keep_punctuation = false;
};

void add_common(CLI::App& cmd, CommonArgs& args, bool inputs_required) {
    auto* inputs = cmd.add_option("inputs", args.inputs, "Wordlist files (TSV)");
    if (inputs_required) inputs->required();
    cmd.add_option("--concepts", args.concepts, "Concept list file (TSV: concept_id<TAB>gloss)")
        ->capture_default_str();
    cmd.add_option("--columns", args.columns,
                   "Wide-format column mapping, e.g. id=1,gloss=2,Zaza=3,Hawrami=4");
    cmd.add_flag("--no-case-fold", args.no_case_fold, "Keep letter case as written");
    cmd.add_flag("--keep-punctuation", args.keep_punctuation, "Keep edge punctuation on forms");
}

lexidist::NormalizationOptions normalization_from(const CommonArgs& args) {
    lexidist::NormalizationOptions opts;
    opts.case_fold = !args.no_case_fold;
    opts.strip_punctuation = !args.keep_punctuation;
    return opts;
}

// Parses every input file and concatenates the varieties in file order.
lexidist::ParseResult load_inputs(const CommonArgs& args,
                                  const lexidist::ConceptList& concepts,
                                  const lexidist::NormalizationOptions& norm) {
    lexidist::ParseResult all;
    for (const auto& path : args.inputs) {
        lexidist::ParseResult one =
            args.columns.empty()
                ? lexidist::parse_wordlists_file(path, concepts, norm)
                : lexidist::parse_wordlists_wide_file(
                      path, concepts, norm, lexidist::ColumnMapping::parse(args.columns));
        for (auto& wl : one.wordlists) {
            for (const auto& existing : all.wordlists) {
                if (existing.variety == wl.variety) {
                    throw lexidist::validation_error("variety '" + wl.variety +
                                                     "' appears in more than one input file");
                }
            }
            all.wordlists.push_back(std::move(wl));
        }
        for (auto& w : one.warnings) all.warnings.push_back(std::move(w));
    }
    return all;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw lexidist::parse_error("cannot open output file '" + out_path + "'");
    out << text;
    if (!out) throw lexidist::parse_error("cannot write output file '" + out_path + "'");
}

lexidist::ConceptList load_concepts_checked(const std::string& path) {
    if (path.empty()) {
        throw lexidist::parse_error(
            "no concept list: pass --concepts <path> (no bundled default found)");
    }
    return lexidist::load_concept_list(std::filesystem::path(path));
}

int cmd_validate(const CommonArgs& args) {
    const auto concepts = load_concepts_checked(args.concepts);
    const auto norm = normalization_from(args);
    const auto parsed = load_inputs(args, concepts, norm);
    auto report = lexidist::validate_wordlists(parsed.wordlists, concepts);
    for (const auto& warning : parsed.warnings) {
        report.issues.push_back({lexidist::Severity::warning,
                                 "line " + std::to_string(warning.line) + ": " + warning.message});
    }
    std::cout << report.to_text();
    return report.has_errors() ? kExitAnalysis : kExitOk;
}

struct CompareArgs : CommonArgs {
    std::string metric = "jaro";
    std::string policy = "max";
    std::string denominator = "full";
    std::string format = "markdown";
    int round_digits = 2;
    std::string out;
};

void add_compare_opts(CLI::App& cmd, CompareArgs& args) {
    cmd.add_option("--metric", args.metric, "Similarity metric")
        ->check(CLI::IsMember({"jaro", "jaro_winkler", "levenshtein_norm"}))
        ->capture_default_str();
    cmd.add_option("--policy", args.policy, "Variant combination policy")
        ->check(CLI::IsMember({"max", "mean", "first"}))
        ->capture_default_str();
    cmd.add_option("--denominator", args.denominator, "Percentage denominator")
        ->check(CLI::IsMember({"full", "aligned"}))
        ->capture_default_str();
    cmd.add_option("--round", args.round_digits, "Display rounding digits")
        ->check(CLI::Range(0, 12))
        ->capture_default_str();
    cmd.add_option("--out", args.out, "Write output here instead of stdout");
}

lexidist::RunConfig config_from(const CompareArgs& args, lexidist::OutputFormat format) {
    lexidist::RunConfig config;
    config.inputs = args.inputs;
    config.concepts_path = args.concepts;
    config.metric = lexidist::parse_metric_id(args.metric);
    config.policy = lexidist::parse_variant_policy(args.policy);
    config.denominator_mode = lexidist::parse_denominator_mode(args.denominator);
    config.normalization = normalization_from(args);
    config.format = format;
    config.round_digits = args.round_digits;
    config.out_path = args.out;
    config.columns = args.columns;
    return config;
}

int cmd_compare(const CompareArgs& args) {
    const auto concepts = load_concepts_checked(args.concepts);
    const auto config = config_from(args, lexidist::parse_output_format(args.format));
    const auto parsed = load_inputs(args, concepts, config.normalization);
    const auto validation = lexidist::validate_wordlists(parsed.wordlists, concepts);
    if (validation.has_errors()) {
        std::cerr << validation.to_text();
        return kExitAnalysis;
    }
    lexidist::ReportBundle bundle;
    bundle.config = config;
    bundle.concept_list_name = concepts.name();
    bundle.concept_count = concepts.size();
    bundle.comparisons =
        lexidist::all_pairs(parsed.wordlists, concepts, config.metric, config.policy,
                            config.denominator_mode);
    bundle.validation = validation;
    write_output(lexidist::render_tables(bundle, config.format), args.out);
    return kExitOk;
}

struct ClassifyArgs : CompareArgs {
    std::string matrix_file;
};

int cmd_classify(const ClassifyArgs& args) {
    lexidist::DistanceMatrix matrix = [&] {
        if (!args.matrix_file.empty()) {
            if (!args.inputs.empty()) {
                throw lexidist::parse_error("--matrix-file and wordlist inputs are exclusive");
            }
            return lexidist::load_matrix_csv(std::filesystem::path(args.matrix_file));
        }
        if (args.inputs.empty()) {
            throw lexidist::parse_error("classify needs wordlist inputs or --matrix-file");
        }
        const auto concepts = load_concepts_checked(args.concepts);
        const auto norm = normalization_from(args);
        const auto parsed = load_inputs(args, concepts, norm);
        const auto validation = lexidist::validate_wordlists(parsed.wordlists, concepts);
        if (validation.has_errors()) {
            std::cerr << validation.to_text();
            throw lexidist::analysis_error("validation failed; not classifying");
        }
        return lexidist::build_matrix(lexidist::all_pairs(
            parsed.wordlists, concepts, lexidist::parse_metric_id(args.metric),
            lexidist::parse_variant_policy(args.policy),
            lexidist::parse_denominator_mode(args.denominator)));
    }();

    const auto tree = lexidist::upgma(matrix);
    const std::string newick = lexidist::to_newick(tree);

    // The matrix always lands on stdout; --out redirects only the tree.
    std::cout << lexidist::matrix_to_csv(matrix, args.round_digits);
    if (args.out.empty()) {
        std::cout << newick << "\n";
    } else {
        write_output(newick + "\n", args.out);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wordlist-based variety comparison and classification"};
    app.set_version_flag("--version", std::string("lexidist ") + lexidist::kVersion);
    app.require_subcommand(1);

    CommonArgs validate_args;
    auto* validate = app.add_subcommand("validate", "Check wordlists against a concept list");
    add_common(*validate, validate_args, true);

    CompareArgs compare_args;
    auto* compare = app.add_subcommand("compare", "Score all variety pairs and report tables");
    add_common(*compare, compare_args, true);
    add_compare_opts(*compare, compare_args);
    compare->add_option("--format", compare_args.format, "Report format")
        ->check(CLI::IsMember({"csv", "json", "markdown"}))
        ->capture_default_str();

    ClassifyArgs classify_args;
    auto* classify = app.add_subcommand("classify", "Build a UPGMA tree from pairwise distances");
    add_common(*classify, classify_args, false);
    add_compare_opts(*classify, classify_args);
    classify->add_option("--matrix-file", classify_args.matrix_file,
                         "Pre-computed distance matrix (CSV); excludes wordlist inputs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (validate->parsed()) return cmd_validate(validate_args);
        if (compare->parsed()) return cmd_compare(compare_args);
        if (classify->parsed()) return cmd_classify(classify_args);
    } catch (const lexidist::encoding_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const lexidist::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const lexidist::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const lexidist::analysis_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
