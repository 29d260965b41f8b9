#pragma once

#include "volcp/pmf.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace volcp {

// Wasserstein-1 distance under d(s, t) = |s - t|: sum over s of
// |F_p(s) - F_q(s)|, evaluated by one merged sweep over both supports.
double w1(const SparsePmf& p, const SparsePmf& q);

/// Symmetric matrix of pairwise dissimilarities with a zero diagonal.
class DissimilarityMatrix {
public:
    DissimilarityMatrix() = default;
    DissimilarityMatrix(std::vector<std::string> labels, std::vector<double> values);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<double>& values() const { return values_; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }

    // Rows and columns permuted so that new index k holds old index order[k].
    DissimilarityMatrix reordered(const std::vector<std::size_t>& order) const;

private:
    std::vector<std::string> labels_;
    std::vector<double> values_;  // row-major, size() x size()
};

using LabeledPmf = std::pair<std::string, SparsePmf>;

// All pairwise w1 values. Rows are filled by up to `threads` workers
// (0 = hardware concurrency); the result does not depend on the count.
DissimilarityMatrix pairwise(const std::vector<LabeledPmf>& pmfs, unsigned threads = 1);

// Human-readable descriptions of every violated metric axiom (asymmetry,
// nonzero diagonal, negative entry, triangle inequality beyond `tol`).
std::vector<std::string> metric_violations(const DissimilarityMatrix& d, double tol = 1e-9);

// CSV: header "label,<l1>,...,<lm>", then one row "<li>,<m values>".
void write_csv(std::ostream& os, const DissimilarityMatrix& d);
DissimilarityMatrix read_dissimilarity_csv(std::istream& is);

}  // namespace volcp
