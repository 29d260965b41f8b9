#include "volcp/metric.hpp"

#include "volcp/csv.hpp"
#include "volcp/error.hpp"
#include "volcp/parallel.hpp"

#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

namespace volcp {

SparsePmf::SparsePmf(std::vector<std::int64_t> support, std::vector<double> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
    if (support_.size() != probs_.size()) throw InputError("pmf support and probabilities differ in length");
    if (support_.empty()) throw InputError("pmf has empty support");
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (support_[i] < 0) throw InputError("pmf support must be nonnegative");
        if (i > 0 && support_[i] <= support_[i - 1]) throw InputError("pmf support must be strictly increasing");
        if (!(probs_[i] > 0.0) || !std::isfinite(probs_[i])) {
            throw InputError("pmf probabilities must be positive and finite");
        }
    }
    const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) {
        throw InputError("pmf mass " + csv::format_double(total) + " deviates from 1 by more than 1e-9");
    }
    if (total != 1.0) {
        for (double& p : probs_) p /= total;
    }
}

SparsePmf SparsePmf::dirac(std::int64_t at) { return SparsePmf({at}, {1.0}); }

double SparsePmf::cdf(std::int64_t s) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < support_.size() && support_[i] <= s; ++i) acc += probs_[i];
    return acc;
}

double w1(const SparsePmf& p, const SparsePmf& q) {
    if (p.empty() || q.empty()) throw InputError("w1 of an empty pmf");
    const auto sp = p.support();
    const auto sq = q.support();
    const auto pp = p.probs();
    const auto pq = q.probs();
    std::size_t i = 0;
    std::size_t j = 0;
    double fp = 0.0;
    double fq = 0.0;
    double total = 0.0;
    // Both CDFs are constant between consecutive points of the union of the
    // supports; past the last point both equal one and contribute nothing.
    while (i < sp.size() || j < sq.size()) {
        const std::int64_t at = j >= sq.size() || (i < sp.size() && sp[i] <= sq[j]) ? sp[i] : sq[j];
        if (i < sp.size() && sp[i] == at) fp += pp[i++];
        if (j < sq.size() && sq[j] == at) fq += pq[j++];
        if (i == sp.size() && j == sq.size()) break;
        const std::int64_t next = j >= sq.size() || (i < sp.size() && sp[i] <= sq[j]) ? sp[i] : sq[j];
        total += std::abs(fp - fq) * static_cast<double>(next - at);
    }
    return total;
}

DissimilarityMatrix::DissimilarityMatrix(std::vector<std::string> labels, std::vector<double> values)
    : labels_(std::move(labels)), values_(std::move(values)) {
    if (values_.size() != labels_.size() * labels_.size()) {
        throw InputError("dissimilarity matrix is not square in its labels");
    }
    std::set<std::string> seen;
    for (const auto& l : labels_) {
        if (!seen.insert(l).second) throw InputError("duplicate label '" + l + "'");
    }
}

DissimilarityMatrix DissimilarityMatrix::reordered(const std::vector<std::size_t>& order) const {
    const std::size_t m = size();
    if (order.size() != m) throw InputError("reordering has the wrong length");
    std::vector<bool> hit(m, false);
    for (auto k : order) {
        if (k >= m || hit[k]) throw InputError("reordering is not a permutation");
        hit[k] = true;
    }
    std::vector<std::string> labels(m);
    std::vector<double> values(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        labels[a] = labels_[order[a]];
        for (std::size_t b = 0; b < m; ++b) values[a * m + b] = (*this)(order[a], order[b]);
    }
    return DissimilarityMatrix(std::move(labels), std::move(values));
}

DissimilarityMatrix pairwise(const std::vector<LabeledPmf>& pmfs, unsigned threads) {
    const std::size_t m = pmfs.size();
    if (m < 2) throw InputError("pairwise distances need at least two pmfs");
    std::vector<std::string> labels;
    labels.reserve(m);
    for (const auto& [label, pmf] : pmfs) labels.push_back(label);
    std::vector<double> values(m * m, 0.0);
    parallel_for(m, threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < m; ++j) values[i * m + j] = w1(pmfs[i].second, pmfs[j].second);
    });
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) values[j * m + i] = values[i * m + j];
    }
    return DissimilarityMatrix(std::move(labels), std::move(values));
}

std::vector<std::string> metric_violations(const DissimilarityMatrix& d, double tol) {
    std::vector<std::string> out;
    const std::size_t m = d.size();
    const auto& l = d.labels();
    for (std::size_t i = 0; i < m; ++i) {
        if (d(i, i) != 0.0) out.push_back("nonzero diagonal at " + l[i]);
        for (std::size_t j = 0; j < m; ++j) {
            if (!(d(i, j) >= 0.0)) out.push_back("negative or NaN entry at (" + l[i] + ", " + l[j] + ")");
            if (std::abs(d(i, j) - d(j, i)) > 1e-12) out.push_back("asymmetry at (" + l[i] + ", " + l[j] + ")");
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < m; ++k) {
                if (d(i, k) > d(i, j) + d(j, k) + tol) {
                    out.push_back("triangle inequality fails for (" + l[i] + ", " + l[j] + ", " + l[k] + ")");
                }
            }
        }
    }
    return out;
}

void write_csv(std::ostream& os, const DissimilarityMatrix& d) {
    const std::size_t m = d.size();
    os << "label";
    for (const auto& l : d.labels()) os << ',' << l;
    os << '\n';
    for (std::size_t i = 0; i < m; ++i) {
        os << d.labels()[i];
        for (std::size_t j = 0; j < m; ++j) os << ',' << csv::format_double(d(i, j));
        os << '\n';
    }
}

DissimilarityMatrix read_dissimilarity_csv(std::istream& is) {
    std::string line;
    if (!csv::next_line(is, line)) throw InputError("dissimilarity CSV is empty");
    auto header = csv::split_line(line);
    if (header.size() < 2) throw InputError("dissimilarity CSV header has no labels");
    std::vector<std::string> labels(header.begin() + 1, header.end());
    const std::size_t m = labels.size();
    std::vector<double> values(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!csv::next_line(is, line)) throw InputError("dissimilarity CSV has fewer rows than labels");
        const auto cells = csv::split_line(line);
        if (cells.size() != m + 1) throw InputError("dissimilarity CSV row " + std::to_string(i + 1) + " has wrong width");
        if (cells[0] != labels[i]) throw InputError("dissimilarity CSV row label '" + cells[0] + "' does not match header");
        for (std::size_t j = 0; j < m; ++j) {
            const auto v = csv::parse_cell(cells[j + 1], "row " + labels[i]);
            if (!v) throw InputError("empty cell in dissimilarity CSV row " + labels[i]);
            values[i * m + j] = *v;
        }
    }
    if (csv::next_line(is, line)) throw InputError("dissimilarity CSV has more rows than labels");
    return DissimilarityMatrix(std::move(labels), std::move(values));
}

}  // namespace volcp
