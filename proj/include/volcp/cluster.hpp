#pragma once

#include "volcp/metric.hpp"

#include <json.hpp>

#include <cstddef>
#include <vector>

namespace volcp {

// Leaves are 0..m-1; merge i creates cluster id m + i. `left` is the child
// holding the smaller leaf index.
struct Merge {
    std::size_t left;
    std::size_t right;
    double height;
    std::size_t size;
};

struct Dendrogram {
    std::size_t m = 0;
    std::vector<Merge> merges;
};

// UPGMA. Each step merges the pair with the smallest mean cross-cluster
// dissimilarity; ties go to the lexicographically smallest (min id, max id).
// Cross-cluster sums are updated Lance-Williams style, so heights are the
// exact sum divided by the pair count.
Dendrogram average_linkage(const DissimilarityMatrix& d);

// Flat clustering into k groups by undoing the last k - 1 merges. Entry i is
// the group of leaf i; groups are numbered by first appearance in leaf_order.
std::vector<std::size_t> cut(const Dendrogram& dgm, std::size_t k);

// Left-to-right leaf traversal of the merge tree.
std::vector<std::size_t> leaf_order(const Dendrogram& dgm);

// {"m": int, "merges": [[left, right, height, size], ...]}
nlohmann::json to_json(const Dendrogram& dgm);
Dendrogram dendrogram_from_json(const nlohmann::json& j);

}  // namespace volcp
