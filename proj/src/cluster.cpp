#include "volcp/cluster.hpp"

#include "volcp/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace volcp {

namespace {

void check_input(const DissimilarityMatrix& d) {
    const std::size_t m = d.size();
    if (m < 2) throw InputError("average linkage needs at least two items");
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double v = d(i, j);
            if (!std::isfinite(v)) throw InputError("dissimilarity matrix has a non-finite entry");
            if (v < 0.0) throw InputError("dissimilarity matrix has a negative entry");
            if (std::abs(v - d(j, i)) > 1e-12 * std::max(1.0, std::abs(v))) {
                throw InputError("dissimilarity matrix is not symmetric");
            }
        }
    }
}

void check_dendrogram(const Dendrogram& dgm) {
    if (dgm.m < 1 || dgm.merges.size() + 1 != dgm.m) throw InputError("dendrogram must hold m - 1 merges");
    std::vector<std::size_t> size(2 * dgm.m - 1, 0);
    std::vector<bool> used(2 * dgm.m - 1, false);
    std::fill(size.begin(), size.begin() + static_cast<std::ptrdiff_t>(dgm.m), 1);
    for (std::size_t i = 0; i < dgm.merges.size(); ++i) {
        const auto& mg = dgm.merges[i];
        const std::size_t id = dgm.m + i;
        if (mg.left >= id || mg.right >= id || mg.left == mg.right) throw InputError("dendrogram merge refers to an unknown cluster");
        if (used[mg.left] || used[mg.right]) throw InputError("dendrogram merges a cluster twice");
        if (mg.size != size[mg.left] + size[mg.right]) throw InputError("dendrogram merge size mismatch");
        used[mg.left] = used[mg.right] = true;
        size[id] = mg.size;
    }
}

}  // namespace

Dendrogram average_linkage(const DissimilarityMatrix& d) {
    check_input(d);
    const std::size_t m = d.size();
    // Slot k holds one active cluster; sums[k][l] is the total dissimilarity
    // over all cross pairs between the clusters in slots k and l.
    std::vector<double> sums(d.values());
    std::vector<std::size_t> id(m);
    std::vector<std::size_t> count(m, 1);
    std::vector<std::size_t> min_leaf(m);
    std::vector<bool> active(m, true);
    std::iota(id.begin(), id.end(), 0);
    std::iota(min_leaf.begin(), min_leaf.end(), 0);

    Dendrogram dgm{m, {}};
    dgm.merges.reserve(m - 1);
    double prev_height = 0.0;
    for (std::size_t step = 0; step + 1 < m; ++step) {
        std::size_t best_a = m;
        std::size_t best_b = m;
        double best = 0.0;
        auto best_key = std::pair<std::size_t, std::size_t>{};
        for (std::size_t a = 0; a < m; ++a) {
            if (!active[a]) continue;
            for (std::size_t b = a + 1; b < m; ++b) {
                if (!active[b]) continue;
                const double avg = sums[a * m + b] / static_cast<double>(count[a] * count[b]);
                const std::pair<std::size_t, std::size_t> key{std::min(id[a], id[b]), std::max(id[a], id[b])};
                if (best_a == m || avg < best || (avg == best && key < best_key)) {
                    best_a = a;
                    best_b = b;
                    best = avg;
                    best_key = key;
                }
            }
        }
        if (step > 0 && best < prev_height - 1e-12 * std::max(1.0, prev_height)) {
            throw NumericError("average linkage heights decreased; input is not a valid dissimilarity");
        }
        prev_height = std::max(prev_height, best);

        const bool a_left = min_leaf[best_a] < min_leaf[best_b];
        const std::size_t left = a_left ? best_a : best_b;
        const std::size_t right = a_left ? best_b : best_a;
        dgm.merges.push_back({id[left], id[right], best, count[best_a] + count[best_b]});

        // Merged cluster lives in slot best_a.
        for (std::size_t w = 0; w < m; ++w) {
            if (!active[w] || w == best_a || w == best_b) continue;
            const double s = sums[best_a * m + w] + sums[best_b * m + w];
            sums[best_a * m + w] = s;
            sums[w * m + best_a] = s;
        }
        count[best_a] += count[best_b];
        min_leaf[best_a] = std::min(min_leaf[best_a], min_leaf[best_b]);
        id[best_a] = m + step;
        active[best_b] = false;
    }
    return dgm;
}

std::vector<std::size_t> leaf_order(const Dendrogram& dgm) {
    check_dendrogram(dgm);
    std::vector<std::size_t> order;
    order.reserve(dgm.m);
    std::vector<std::size_t> stack{2 * dgm.m - 2};
    while (!stack.empty()) {
        const std::size_t node = stack.back();
        stack.pop_back();
        if (node < dgm.m) {
            order.push_back(node);
            continue;
        }
        const auto& mg = dgm.merges[node - dgm.m];
        stack.push_back(mg.right);
        stack.push_back(mg.left);
    }
    return order;
}

std::vector<std::size_t> cut(const Dendrogram& dgm, std::size_t k) {
    check_dendrogram(dgm);
    if (k < 1 || k > dgm.m) {
        throw InputError("cut size k = " + std::to_string(k) + " outside [1, " + std::to_string(dgm.m) + "]");
    }
    // Union the first m - k merges; every leaf maps to its surviving root.
    std::vector<std::size_t> parent(2 * dgm.m - 1);
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i + k < dgm.m; ++i) {
        const auto& mg = dgm.merges[i];
        parent[find(mg.left)] = dgm.m + i;
        parent[find(mg.right)] = dgm.m + i;
    }
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> group_of_root(2 * dgm.m - 1, kUnset);
    std::vector<std::size_t> labels(dgm.m);
    std::size_t next = 0;
    for (std::size_t leaf : leaf_order(dgm)) {
        auto& g = group_of_root[find(leaf)];
        if (g == kUnset) g = next++;
        labels[leaf] = g;
    }
    return labels;
}

nlohmann::json to_json(const Dendrogram& dgm) {
    nlohmann::json merges = nlohmann::json::array();
    for (const auto& mg : dgm.merges) merges.push_back({mg.left, mg.right, mg.height, mg.size});
    return {{"m", dgm.m}, {"merges", merges}};
}

Dendrogram dendrogram_from_json(const nlohmann::json& j) {
    try {
        Dendrogram dgm;
        dgm.m = j.at("m").get<std::size_t>();
        for (const auto& row : j.at("merges")) {
            if (!row.is_array() || row.size() != 4) throw InputError("dendrogram merge must have four entries");
            dgm.merges.push_back({row[0].get<std::size_t>(), row[1].get<std::size_t>(), row[2].get<double>(),
                                  row[3].get<std::size_t>()});
        }
        check_dendrogram(dgm);
        return dgm;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed dendrogram JSON: ") + e.what());
    }
}

}  // namespace volcp
