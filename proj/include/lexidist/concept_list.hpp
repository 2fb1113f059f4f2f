#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexidist/errors.hpp"
#include "lexidist/utf8.hpp"

namespace lexidist {

// One entry of a concept inventory: 1-based id plus a reference-language
// gloss ("water", "dog", ...).
struct Concept {
    int id = 0;
    std::string gloss;

    bool operator==(const Concept&) const = default;
};

namespace detail {

inline std::string trim_ascii_ws(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace detail

// Ordered inventory of concepts. Ids are unique and contiguous from 1, so
// index i always holds id i+1.
class ConceptList {
public:
    ConceptList(std::string name, std::vector<Concept> concepts)
        : name_(std::move(name)), concepts_(std::move(concepts)) {
        if (concepts_.empty()) {
            throw validation_error("concept list '" + name_ + "' is empty");
        }
        for (std::size_t i = 0; i < concepts_.size(); ++i) {
            const int expected = static_cast<int>(i) + 1;
            if (concepts_[i].id != expected) {
                throw validation_error("concept list '" + name_ + "': ids must be contiguous from 1, got " +
                                       std::to_string(concepts_[i].id) + " at position " +
                                       std::to_string(i + 1));
            }
            if (detail::trim_ascii_ws(concepts_[i].gloss).empty()) {
                throw validation_error("concept list '" + name_ + "': empty gloss for id " +
                                       std::to_string(concepts_[i].id));
            }
        }
    }

    const std::string& name() const { return name_; }
    std::size_t size() const { return concepts_.size(); }
    bool contains(int id) const { return id >= 1 && id <= static_cast<int>(concepts_.size()); }

    const Concept& by_id(int id) const {
        if (!contains(id)) {
            throw validation_error("concept id " + std::to_string(id) + " not in list '" + name_ + "'");
        }
        return concepts_[static_cast<std::size_t>(id - 1)];
    }

    const std::string& gloss(int id) const { return by_id(id).gloss; }

    auto begin() const { return concepts_.begin(); }
    auto end() const { return concepts_.end(); }

private:
    std::string name_;
    std::vector<Concept> concepts_;
};

// Reads a `concept_id<TAB>gloss` TSV. `#` lines are comments; a header row
// is recognized and skipped; a UTF-8 BOM is tolerated.
inline ConceptList load_concept_list(std::istream& in, std::string name) {
    std::vector<Concept> concepts;
    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
            line.erase(0, 3);
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;

        std::u32string decoded;
        std::size_t bad = 0;
        if (!utf8::try_decode(line, decoded, bad)) {
            throw encoding_error("concept list '" + name + "' line " + std::to_string(line_no) +
                                     ": invalid UTF-8 at byte " + std::to_string(bad),
                                 line_no);
        }

        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
            throw parse_error("concept list '" + name + "' line " + std::to_string(line_no) +
                                  ": expected 2 tab-separated columns",
                              line_no);
        }
        const std::string id_text = detail::trim_ascii_ws(line.substr(0, tab));
        const std::string gloss = detail::trim_ascii_ws(line.substr(tab + 1));
        if (first_content && id_text == "concept_id") {
            first_content = false;
            continue;  // header row
        }
        first_content = false;

        int id = 0;
        try {
            std::size_t pos = 0;
            id = std::stoi(id_text, &pos);
            if (pos != id_text.size()) throw std::invalid_argument(id_text);
        } catch (const std::exception&) {
            throw parse_error("concept list '" + name + "' line " + std::to_string(line_no) +
                                  ": concept_id '" + id_text + "' is not a positive integer",
                              line_no);
        }
        if (id < 1) {
            throw validation_error("concept list '" + name + "' line " + std::to_string(line_no) +
                                       ": concept_id must be >= 1",
                                   line_no);
        }
        concepts.push_back(Concept{id, gloss});
    }
    return ConceptList(std::move(name), std::move(concepts));
}

inline ConceptList load_concept_list(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw parse_error("cannot open concept list file '" + path.string() + "'");
    }
    return load_concept_list(in, path.stem().string());
}

}  // namespace lexidist
