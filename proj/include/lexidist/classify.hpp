#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lexidist/comparison.hpp"
#include "lexidist/errors.hpp"

namespace lexidist {

// Symmetric pairwise distances, zero diagonal, all cells in [0,1].
class DistanceMatrix {
public:
    DistanceMatrix(std::vector<std::string> labels, std::vector<double> cells)
        : labels_(std::move(labels)), cells_(std::move(cells)) {
        const std::size_t n = labels_.size();
        if (n == 0) throw analysis_error("distance matrix needs at least one label");
        if (cells_.size() != n * n) {
            throw analysis_error("distance matrix cells must be " + std::to_string(n) + "x" +
                                 std::to_string(n));
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (labels_[i] == labels_[j]) {
                    throw analysis_error("duplicate matrix label '" + labels_[i] + "'");
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(cells_[i * n + i]) > 1e-12) {
                throw analysis_error("distance matrix diagonal must be zero at '" + labels_[i] + "'");
            }
            cells_[i * n + i] = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double d = cells_[i * n + j];
                if (d < 0.0 || d > 1.0) {
                    throw analysis_error("distance " + std::to_string(d) + " between '" + labels_[i] +
                                         "' and '" + labels_[j] + "' outside [0,1]");
                }
                if (std::abs(d - cells_[j * n + i]) > 1e-12) {
                    throw analysis_error("distance matrix not symmetric between '" + labels_[i] +
                                         "' and '" + labels_[j] + "'");
                }
            }
        }
    }

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    double at(std::size_t i, std::size_t j) const { return cells_[i * labels_.size() + j]; }

private:
    std::vector<std::string> labels_;
    std::vector<double> cells_;
};

// Assembles the matrix from one comparison per unordered pair; labels appear
// in comparison order. Missing or repeated pairs are named in the error.
inline DistanceMatrix build_matrix(const std::vector<PairwiseComparison>& comparisons) {
    std::vector<std::string> labels;
    const auto index_of = [&](const std::string& v) -> std::size_t {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == v) return i;
        }
        labels.push_back(v);
        return labels.size() - 1;
    };
    for (const auto& cmp : comparisons) {
        index_of(cmp.variety_a);
        index_of(cmp.variety_b);
    }
    const std::size_t n = labels.size();
    std::vector<double> cells(n * n, 0.0);
    std::vector<char> seen(n * n, 0);
    for (const auto& cmp : comparisons) {
        const std::size_t i = index_of(cmp.variety_a);
        const std::size_t j = index_of(cmp.variety_b);
        if (i == j) throw analysis_error("self-pair '" + cmp.variety_a + "' in comparisons");
        if (seen[i * n + j]) {
            throw analysis_error("duplicate pair " + cmp.variety_a + "-" + cmp.variety_b);
        }
        seen[i * n + j] = seen[j * n + i] = 1;
        cells[i * n + j] = cells[j * n + i] = cmp.avg_distance;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!seen[i * n + j]) {
                throw analysis_error("missing pair " + labels[i] + "-" + labels[j]);
            }
        }
    }
    return DistanceMatrix(std::move(labels), std::move(cells));
}

// CSV with a header row and labeled rows, row order matching the header:
//   variety,Zaza,Hawrami,...
//   Zaza,0,0.43,...
inline DistanceMatrix load_matrix_csv(std::istream& in, const std::string& source_label) {
    std::vector<std::string> labels;
    std::vector<double> cells;
    std::string line;
    std::size_t line_no = 0;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
            line.erase(0, 3);
        }
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(detail::trim_ascii_ws(field));
        if (line.back() == ',') fields.push_back("");

        if (labels.empty()) {
            if (fields.size() < 3) {
                throw parse_error("'" + source_label + "' line " + std::to_string(line_no) +
                                      ": matrix header needs at least two labels",
                                  line_no);
            }
            labels.assign(fields.begin() + 1, fields.end());
            cells.assign(labels.size() * labels.size(), 0.0);
            continue;
        }
        if (row >= labels.size()) {
            throw parse_error("'" + source_label + "' line " + std::to_string(line_no) +
                                  ": more rows than header labels",
                              line_no);
        }
        if (fields.size() != labels.size() + 1) {
            throw parse_error("'" + source_label + "' line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(labels.size() + 1) + " columns, got " +
                                  std::to_string(fields.size()),
                              line_no);
        }
        if (fields[0] != labels[row]) {
            throw parse_error("'" + source_label + "' line " + std::to_string(line_no) + ": row label '" +
                                  fields[0] + "' does not match header order (expected '" + labels[row] +
                                  "')",
                              line_no);
        }
        for (std::size_t j = 0; j < labels.size(); ++j) {
            try {
                std::size_t pos = 0;
                cells[row * labels.size() + j] = std::stod(fields[j + 1], &pos);
                if (pos != fields[j + 1].size()) throw std::invalid_argument(fields[j + 1]);
            } catch (const std::exception&) {
                throw parse_error("'" + source_label + "' line " + std::to_string(line_no) +
                                      ": bad distance value '" + fields[j + 1] + "'",
                                  line_no);
            }
        }
        ++row;
    }
    if (labels.empty()) throw parse_error("'" + source_label + "': empty matrix file");
    if (row != labels.size()) {
        throw parse_error("'" + source_label + "': expected " + std::to_string(labels.size()) +
                          " data rows, got " + std::to_string(row));
    }
    return DistanceMatrix(std::move(labels), std::move(cells));
}

inline DistanceMatrix load_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open matrix file '" + path.string() + "'");
    return load_matrix_csv(in, path.string());
}

namespace detail {

inline std::string format_double(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// shortest-ish branch length rendering, stable across runs
inline std::string format_length(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace detail

inline std::string matrix_to_csv(const DistanceMatrix& m, int digits) {
    std::ostringstream out;
    out << "variety";
    for (const auto& l : m.labels()) out << ',' << l;
    out << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << m.labels()[i];
        for (std::size_t j = 0; j < m.size(); ++j) {
            out << ',' << detail::format_double(m.at(i, j), digits);
        }
        out << '\n';
    }
    return out.str();
}

// Binary merge tree with ultrametric heights. Leaves sit at height 0;
// every internal node records the height of its merge (distance / 2).
struct ClusterNode {
    int left = -1;   // -1 on leaves
    int right = -1;
    double height = 0.0;
    std::string label;  // leaves only
    int size = 1;       // leaves under this node
};

struct ClusterTree {
    std::vector<ClusterNode> nodes;  // leaves first, internals in merge order
    int root = -1;

    int leaf_count() const {
        int n = 0;
        for (const auto& node : nodes) {
            if (node.left < 0) ++n;
        }
        return n;
    }
};

// Unweighted pair-group method with arithmetic mean. Merge heights are half
// the minimum average inter-cluster distance; cluster distances update as
// size-weighted means. Equal-distance ties go to the lexicographically
// smallest (min leaf label) pair; the older cluster becomes the left child,
// which keeps output deterministic for a fixed input order.
inline ClusterTree upgma(const DistanceMatrix& matrix) {
    const std::size_t n = matrix.size();
    if (n < 2) throw analysis_error("UPGMA needs at least 2 labels");

    ClusterTree tree;
    struct Active {
        int node = 0;          // index into tree.nodes
        std::string key;       // smallest leaf label in the cluster
    };
    std::vector<Active> active;
    for (std::size_t i = 0; i < n; ++i) {
        tree.nodes.push_back(ClusterNode{-1, -1, 0.0, matrix.labels()[i], 1});
        active.push_back(Active{static_cast<int>(i), matrix.labels()[i]});
    }
    // dist[i][j] between active clusters, indexed by position in `active`
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) dist[i][j] = matrix.at(i, j);
    }

    while (active.size() > 1) {
        std::size_t bi = 0, bj = 1;
        for (std::size_t i = 0; i < active.size(); ++i) {
            for (std::size_t j = i + 1; j < active.size(); ++j) {
                const double d = dist[i][j];
                const double best = dist[bi][bj];
                if (d < best) {
                    bi = i;
                    bj = j;
                } else if (d == best && !(i == bi && j == bj)) {
                    auto keys = std::minmax(active[i].key, active[j].key);
                    auto best_keys = std::minmax(active[bi].key, active[bj].key);
                    if (keys < best_keys) {
                        bi = i;
                        bj = j;
                    }
                }
            }
        }

        const double merge_distance = dist[bi][bj];
        const Active a = active[bi];
        const Active b = active[bj];
        ClusterNode merged;
        merged.left = std::min(a.node, b.node);  // older cluster first
        merged.right = std::max(a.node, b.node);
        merged.height = merge_distance / 2.0;
        merged.size = tree.nodes[static_cast<std::size_t>(a.node)].size +
                      tree.nodes[static_cast<std::size_t>(b.node)].size;
        tree.nodes.push_back(merged);
        const int merged_index = static_cast<int>(tree.nodes.size()) - 1;

        const double size_a = tree.nodes[static_cast<std::size_t>(a.node)].size;
        const double size_b = tree.nodes[static_cast<std::size_t>(b.node)].size;
        std::vector<double> new_row;
        for (std::size_t k = 0; k < active.size(); ++k) {
            if (k == bi || k == bj) continue;
            new_row.push_back((dist[k][bi] * size_a + dist[k][bj] * size_b) / (size_a + size_b));
        }

        // drop bj first so bi's position stays valid
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(bi));
        active.push_back(Active{merged_index, std::min(a.key, b.key)});

        for (std::size_t k = 0; k < dist.size(); ++k) {
            dist[k].erase(dist[k].begin() + static_cast<std::ptrdiff_t>(bj));
            dist[k].erase(dist[k].begin() + static_cast<std::ptrdiff_t>(bi));
        }
        dist.erase(dist.begin() + static_cast<std::ptrdiff_t>(bj));
        dist.erase(dist.begin() + static_cast<std::ptrdiff_t>(bi));
        for (std::size_t k = 0; k < new_row.size(); ++k) dist[k].push_back(new_row[k]);
        new_row.push_back(0.0);
        dist.push_back(std::move(new_row));
    }

    tree.root = active.front().node;
    return tree;
}

namespace detail {

inline void write_newick(const ClusterTree& tree, int node_index, double parent_height,
                         std::string& out) {
    const ClusterNode& node = tree.nodes[static_cast<std::size_t>(node_index)];
    if (node.left < 0) {
        out += node.label;
    } else {
        out += '(';
        write_newick(tree, node.left, node.height, out);
        out += ',';
        write_newick(tree, node.right, node.height, out);
        out += ')';
    }
    if (parent_height >= 0.0) {
        out += ':';
        out += format_length(parent_height - node.height);
    }
}

}  // namespace detail

// Newick with branch lengths (parent height minus child height), ';'
// terminated. Leaf labels are emitted verbatim; parsing forbids the
// characters that would need quoting.
inline std::string to_newick(const ClusterTree& tree) {
    if (tree.root < 0) throw analysis_error("empty cluster tree");
    std::string out;
    detail::write_newick(tree, tree.root, -1.0, out);
    out += ';';
    return out;
}

}  // namespace lexidist
