#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexidist/concept_list.hpp"
#include "lexidist/errors.hpp"
#include "lexidist/normalize.hpp"
#include "lexidist/unicode.hpp"
#include "lexidist/utf8.hpp"

namespace lexidist {

inline constexpr std::string_view kWordlistHeader = "concept_id\tgloss\tvariety\tform";

// One attested form: the cell text as read, its normalized shape, and the
// dominant script of the normalized shape.
struct LexicalForm {
    std::string raw;
    std::string normalized;
    std::string script;

    bool operator==(const LexicalForm&) const = default;
};

// One variety's concept_id -> variants mapping. Entries never hold an empty
// variant sequence and never duplicate a normalized form under one id.
struct Wordlist {
    std::string variety;
    std::map<int, std::vector<LexicalForm>> entries;
    std::string source;

    // source is provenance only, not identity
    friend bool operator==(const Wordlist& a, const Wordlist& b) {
        return a.variety == b.variety && a.entries == b.entries;
    }
};

struct ParseWarning {
    std::size_t line = 0;
    std::string message;
};

struct ParseResult {
    std::vector<Wordlist> wordlists;  // first-appearance order
    std::vector<ParseWarning> warnings;
};

namespace detail {

// Characters that would break downstream Newick/report output.
inline constexpr std::string_view kForbiddenVarietyChars = "(),:;'\"[]";

inline void check_variety_token(const std::string& v, std::size_t line_no) {
    if (v.empty()) {
        throw validation_error("line " + std::to_string(line_no) + ": empty variety name", line_no);
    }
    for (char32_t cp : utf8::decode(v)) {
        if (uni::is_whitespace(cp)) {
            throw validation_error("line " + std::to_string(line_no) + ": variety '" + v +
                                       "' must not contain whitespace",
                                   line_no);
        }
    }
    for (char c : v) {
        if (kForbiddenVarietyChars.find(c) != std::string_view::npos) {
            throw validation_error("line " + std::to_string(line_no) + ": variety '" + v +
                                       "' contains reserved character '" + std::string(1, c) + "'",
                                   line_no);
        }
    }
}

inline int parse_concept_id(const std::string& text, const ConceptList& concepts, std::size_t line_no) {
    int id = 0;
    try {
        std::size_t pos = 0;
        id = std::stoi(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw parse_error("line " + std::to_string(line_no) + ": concept_id '" + text +
                              "' is not an integer",
                          line_no);
    }
    if (!concepts.contains(id)) {
        throw validation_error("line " + std::to_string(line_no) + ": unknown concept id " +
                                   std::to_string(id) + " (list '" + concepts.name() + "' has 1.." +
                                   std::to_string(concepts.size()) + ")",
                               line_no);
    }
    return id;
}

inline Wordlist& wordlist_for(std::vector<Wordlist>& lists, const std::string& variety,
                              const std::string& source) {
    for (auto& wl : lists) {
        if (wl.variety == variety) return wl;
    }
    lists.push_back(Wordlist{variety, {}, source});
    return lists.back();
}

// Appends a form unless its normalized shape is already present under the
// concept. Empty raw / empty-after-normalization cells count as absent.
inline void add_form(Wordlist& wl, int concept_id, const std::string& raw,
                     const NormalizationOptions& options, std::size_t line_no,
                     std::vector<ParseWarning>& warnings, bool warn_on_empty) {
    if (raw.empty()) {
        if (warn_on_empty) {
            warnings.push_back({line_no, "line " + std::to_string(line_no) + ": empty form cell for concept " +
                                             std::to_string(concept_id) + ", variety '" + wl.variety +
                                             "'; treated as absent"});
        }
        return;
    }
    std::u32string scalars;
    std::size_t bad = 0;
    if (!utf8::try_decode(raw, scalars, bad)) {
        throw encoding_error("line " + std::to_string(line_no) + ": invalid UTF-8 in form at byte " +
                                 std::to_string(bad),
                             line_no);
    }
    const std::u32string norm_scalars = normalize_scalars(scalars, options);
    if (norm_scalars.empty()) {
        warnings.push_back({line_no, "line " + std::to_string(line_no) + ": form '" + raw +
                                         "' is empty after normalization; treated as absent"});
        return;
    }
    const std::string normalized = utf8::encode(norm_scalars);
    auto& variants = wl.entries[concept_id];
    for (const auto& existing : variants) {
        if (existing.normalized == normalized) {
            warnings.push_back({line_no, "line " + std::to_string(line_no) + ": duplicate form '" + raw +
                                             "' (normalized '" + normalized + "') for concept " +
                                             std::to_string(concept_id) + ", variety '" + wl.variety +
                                             "'; deduplicated"});
            return;
        }
    }
    variants.push_back(LexicalForm{raw, normalized, uni::dominant_script(norm_scalars)});
}

inline void check_line_utf8(const std::string& line, std::size_t line_no) {
    std::u32string decoded;
    std::size_t bad = 0;
    if (!utf8::try_decode(line, decoded, bad)) {
        throw encoding_error("line " + std::to_string(line_no) + ": invalid UTF-8 at byte " +
                                 std::to_string(bad),
                             line_no);
    }
}

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

// Minimal RFC 4180 splitter for comma-delimited files; tab-delimited lines
// are split verbatim (TSV cells cannot contain tabs).
inline std::vector<std::string> split_delimited(const std::string& line, char delimiter) {
    if (delimiter == '\t') return split_tabs(line);
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == delimiter) {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace detail

// ---- long format ----

// `concept_id<TAB>gloss<TAB>variety<TAB>form`, header row required, `#`
// comments, one file may carry several varieties. Rows with one concept id
// accumulate as variants.
inline ParseResult parse_wordlists(std::istream& in, const ConceptList& concepts,
                                   const NormalizationOptions& options,
                                   const std::string& source_label) {
    ParseResult result;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
            line.erase(0, 3);
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        detail::check_line_utf8(line, line_no);

        if (!header_seen) {
            if (line != kWordlistHeader) {
                throw parse_error("line " + std::to_string(line_no) +
                                      ": missing wordlist header (expected 'concept_id\tgloss\tvariety\tform')",
                                  line_no);
            }
            header_seen = true;
            continue;
        }

        const auto fields = detail::split_tabs(line);
        if (fields.size() != 4) {
            throw parse_error("line " + std::to_string(line_no) + ": expected 4 tab-separated columns, got " +
                                  std::to_string(fields.size()),
                              line_no);
        }
        const int concept_id = detail::parse_concept_id(fields[0], concepts, line_no);
        // fields[1] (gloss) is informational; the concept list is authoritative
        detail::check_variety_token(fields[2], line_no);
        Wordlist& wl = detail::wordlist_for(result.wordlists, fields[2], source_label);
        detail::add_form(wl, concept_id, fields[3], options, line_no, result.warnings,
                         /*warn_on_empty=*/true);
    }
    if (!header_seen) {
        throw parse_error("'" + source_label + "': missing wordlist header", 0);
    }
    return result;
}

inline ParseResult parse_wordlists_file(const std::filesystem::path& path, const ConceptList& concepts,
                                        const NormalizationOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw parse_error("cannot open wordlist file '" + path.string() + "'");
    }
    return parse_wordlists(in, concepts, options, path.string());
}

// Single-variety convenience; errors when the file holds zero or several
// varieties.
inline Wordlist parse_wordlist(const std::filesystem::path& path, const ConceptList& concepts,
                               const NormalizationOptions& options) {
    ParseResult result = parse_wordlists_file(path, concepts, options);
    if (result.wordlists.size() != 1) {
        throw validation_error("'" + path.string() + "': expected exactly one variety, found " +
                               std::to_string(result.wordlists.size()));
    }
    return std::move(result.wordlists.front());
}

// ---- wide format ----

// Column mapping for one-column-per-variety files, 1-based as given on the
// command line: "id=1,gloss=2,Zaza=3,Hawrami=4". `id` is required, `gloss`
// optional, every other key names a variety.
struct ColumnMapping {
    std::size_t id_column = 0;     // 1-based; 0 = unset
    std::size_t gloss_column = 0;  // optional
    std::vector<std::pair<std::string, std::size_t>> variety_columns;

    std::size_t max_column() const {
        std::size_t m = std::max(id_column, gloss_column);
        for (const auto& [_, col] : variety_columns) m = std::max(m, col);
        return m;
    }

    static ColumnMapping parse(std::string_view text) {
        ColumnMapping mapping;
        std::vector<std::size_t> seen_columns;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t comma = text.find(',', start);
            if (comma == std::string_view::npos) comma = text.size();
            const std::string_view item = text.substr(start, comma - start);
            start = comma + 1;
            if (item.empty()) continue;
            const std::size_t eq = item.find('=');
            if (eq == std::string_view::npos || eq == 0) {
                throw parse_error("--columns entry '" + std::string(item) + "' is not name=column");
            }
            const std::string key(item.substr(0, eq));
            const std::string value(item.substr(eq + 1));
            std::size_t col = 0;
            try {
                std::size_t pos = 0;
                const long parsed = std::stol(value, &pos);
                if (pos != value.size() || parsed < 1) throw std::invalid_argument(value);
                col = static_cast<std::size_t>(parsed);
            } catch (const std::exception&) {
                throw parse_error("--columns entry '" + std::string(item) +
                                  "': column must be a positive 1-based index");
            }
            if (std::find(seen_columns.begin(), seen_columns.end(), col) != seen_columns.end()) {
                throw parse_error("--columns: column " + std::to_string(col) + " mapped twice");
            }
            seen_columns.push_back(col);
            if (key == "id") {
                if (mapping.id_column != 0) throw parse_error("--columns: 'id' mapped twice");
                mapping.id_column = col;
            } else if (key == "gloss") {
                if (mapping.gloss_column != 0) throw parse_error("--columns: 'gloss' mapped twice");
                mapping.gloss_column = col;
            } else {
                detail::check_variety_token(key, 0);
                for (const auto& [name, _] : mapping.variety_columns) {
                    if (name == key) throw parse_error("--columns: variety '" + key + "' mapped twice");
                }
                mapping.variety_columns.emplace_back(key, col);
            }
        }
        if (mapping.id_column == 0) {
            throw parse_error("--columns mapping needs an 'id' column");
        }
        if (mapping.variety_columns.empty()) {
            throw parse_error("--columns mapping needs at least one variety column");
        }
        return mapping;
    }
};

// Wide files must carry a header row (skipped). Cells may hold several
// variants separated by '/' or ';'. Empty cells are absences.
inline ParseResult parse_wordlists_wide(std::istream& in, const ConceptList& concepts,
                                        const NormalizationOptions& options,
                                        const ColumnMapping& mapping, char delimiter,
                                        const std::string& source_label) {
    ParseResult result;
    // fix variety order up front, independent of row contents
    for (const auto& [name, _] : mapping.variety_columns) {
        detail::wordlist_for(result.wordlists, name, source_label);
    }
    std::string line;
    std::size_t line_no = 0;
    bool header_skipped = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
            line.erase(0, 3);
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        detail::check_line_utf8(line, line_no);
        if (!header_skipped) {
            header_skipped = true;
            continue;
        }
        const auto fields = detail::split_delimited(line, delimiter);
        if (fields.size() < mapping.max_column()) {
            throw parse_error("line " + std::to_string(line_no) + ": expected at least " +
                                  std::to_string(mapping.max_column()) + " columns, got " +
                                  std::to_string(fields.size()),
                              line_no);
        }
        const int concept_id =
            detail::parse_concept_id(detail::trim_ascii_ws(fields[mapping.id_column - 1]), concepts, line_no);
        for (const auto& [variety, col] : mapping.variety_columns) {
            Wordlist& wl = detail::wordlist_for(result.wordlists, variety, source_label);
            const std::string& cell = fields[col - 1];
            // split cell into variants on '/' and ';'
            std::size_t begin = 0;
            for (std::size_t i = 0; i <= cell.size(); ++i) {
                if (i == cell.size() || cell[i] == '/' || cell[i] == ';') {
                    const std::string piece = detail::trim_ascii_ws(cell.substr(begin, i - begin));
                    if (!piece.empty()) {
                        detail::add_form(wl, concept_id, piece, options, line_no, result.warnings,
                                         /*warn_on_empty=*/false);
                    }
                    begin = i + 1;
                }
            }
        }
    }
    if (!header_skipped) {
        throw parse_error("'" + source_label + "': wide-format file has no header row", 0);
    }
    return result;
}

inline ParseResult parse_wordlists_wide_file(const std::filesystem::path& path, const ConceptList& concepts,
                                             const NormalizationOptions& options,
                                             const ColumnMapping& mapping) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw parse_error("cannot open wordlist file '" + path.string() + "'");
    }
    const char delimiter = path.extension() == ".csv" ? ',' : '\t';
    return parse_wordlists_wide(in, concepts, options, mapping, delimiter, path.string());
}

// ---- serialization ----

// Long-format writer. Raw forms are emitted, so parse -> serialize -> parse
// is the identity on the wordlist values.
inline void serialize_wordlists(std::ostream& out, const std::vector<Wordlist>& lists,
                                const ConceptList& concepts) {
    out << kWordlistHeader << '\n';
    for (const auto& wl : lists) {
        for (const auto& [concept_id, variants] : wl.entries) {
            for (const auto& form : variants) {
                std::string raw = form.raw;
                for (char& c : raw) {
                    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
                }
                out << concept_id << '\t' << concepts.gloss(concept_id) << '\t' << wl.variety << '\t'
                    << raw << '\n';
            }
        }
    }
}

inline std::string serialize_wordlists_to_string(const std::vector<Wordlist>& lists,
                                                 const ConceptList& concepts) {
    std::ostringstream out;
    serialize_wordlists(out, lists, concepts);
    return out.str();
}

// ---- validation ----

enum class Severity { info, warning, error };

struct ValidationIssue {
    Severity severity = Severity::info;
    std::string message;
};

struct VarietyCoverage {
    std::string variety;
    std::size_t covered = 0;
    std::vector<int> missing_ids;
    std::map<std::size_t, std::size_t> variant_histogram;  // variants-per-concept -> concepts
    std::string dominant_script;
};

struct ValidationReport {
    std::string concept_list_name;
    std::size_t concept_count = 0;
    std::vector<VarietyCoverage> varieties;
    std::vector<ValidationIssue> issues;

    bool has_errors() const {
        return std::any_of(issues.begin(), issues.end(),
                           [](const ValidationIssue& i) { return i.severity == Severity::error; });
    }

    std::string to_text() const {
        std::ostringstream out;
        out << "concept list: " << concept_list_name << " (" << concept_count << " concepts)\n";
        for (const auto& v : varieties) {
            out << "variety " << v.variety << ": coverage " << v.covered << "/" << concept_count;
            if (!v.missing_ids.empty()) {
                out << ", missing ids";
                for (int id : v.missing_ids) out << ' ' << id;
            }
            out << ", script " << v.dominant_script << ", variants";
            for (const auto& [variants, concepts] : v.variant_histogram) {
                out << ' ' << variants << "x" << concepts;
            }
            out << '\n';
        }
        for (const auto& issue : issues) {
            switch (issue.severity) {
                case Severity::info: out << "info: "; break;
                case Severity::warning: out << "warning: "; break;
                case Severity::error: out << "error: "; break;
            }
            out << issue.message << '\n';
        }
        return out.str();
    }
};

// Always returns a report; problems are carried as issues with severities.
inline ValidationReport validate_wordlists(const std::vector<Wordlist>& lists,
                                           const ConceptList& concepts) {
    ValidationReport report;
    report.concept_list_name = concepts.name();
    report.concept_count = concepts.size();

    if (lists.empty()) {
        report.issues.push_back({Severity::error, "no wordlists given"});
        return report;
    }
    for (std::size_t i = 0; i < lists.size(); ++i) {
        for (std::size_t j = i + 1; j < lists.size(); ++j) {
            if (lists[i].variety == lists[j].variety) {
                report.issues.push_back(
                    {Severity::error, "duplicate variety '" + lists[i].variety + "'"});
            }
        }
    }

    for (const auto& wl : lists) {
        VarietyCoverage cov;
        cov.variety = wl.variety;
        cov.covered = wl.entries.size();
        for (const auto& concept_entry : concepts) {
            if (!wl.entries.contains(concept_entry.id)) cov.missing_ids.push_back(concept_entry.id);
        }
        std::map<std::string, std::size_t> script_counts;
        for (const auto& [_, variants] : wl.entries) {
            ++cov.variant_histogram[variants.size()];
            for (const auto& form : variants) {
                uni::accumulate_scripts(utf8::decode(form.normalized), script_counts);
            }
        }
        cov.dominant_script = uni::dominant_script(script_counts);
        if (wl.entries.empty()) {
            report.issues.push_back({Severity::warning, "variety '" + wl.variety + "' has no entries"});
        }
        report.varieties.push_back(std::move(cov));
    }

    // cross-script check: Jaro across scripts is near zero and meaningless
    for (std::size_t i = 0; i < report.varieties.size(); ++i) {
        for (std::size_t j = i + 1; j < report.varieties.size(); ++j) {
            const auto& a = report.varieties[i];
            const auto& b = report.varieties[j];
            if (a.dominant_script != "Common" && b.dominant_script != "Common" &&
                a.dominant_script != b.dominant_script) {
                report.issues.push_back(
                    {Severity::warning, "varieties '" + a.variety + "' (" + a.dominant_script + ") and '" +
                                            b.variety + "' (" + b.dominant_script +
                                            ") use different dominant scripts; cross-script similarity "
                                            "scores are near zero and not meaningful"});
            }
        }
    }
    return report;
}

}  // namespace lexidist
