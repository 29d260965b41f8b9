#include "volcp/hazard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace volcp {

HazardModel HazardModel::geometric(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InputError("geometric hazard parameter must lie in (0, 1), got " + std::to_string(p));
    }
    HazardModel hm;
    hm.geometric_ = true;
    hm.p_ = p;
    return hm;
}

HazardModel HazardModel::tabulated(std::vector<double> cdf) {
    if (cdf.empty() || cdf.front() != 0.0) throw InputError("tabulated gap CDF must start with G(0) = 0");
    for (std::size_t k = 0; k < cdf.size(); ++k) {
        if (!(cdf[k] >= 0.0 && cdf[k] <= 1.0)) throw InputError("tabulated gap CDF values must lie in [0, 1]");
        if (k > 0 && cdf[k] < cdf[k - 1]) throw InputError("tabulated gap CDF must be nondecreasing");
    }
    HazardModel hm;
    hm.geometric_ = false;
    hm.p_ = std::numeric_limits<double>::quiet_NaN();
    hm.cdf_ = std::move(cdf);
    // One entry past the table covers every gap beyond it (constant G there).
    hm.hazard_.assign(hm.cdf_.size() + 1, 0.0);
    for (std::size_t gap = 1; gap < hm.hazard_.size(); ++gap) {
        const double prev = hm.cdf_[gap - 1];
        const double cur = gap < hm.cdf_.size() ? hm.cdf_[gap] : hm.cdf_.back();
        hm.hazard_[gap] = prev >= 1.0 ? std::numeric_limits<double>::quiet_NaN() : (cur - prev) / (1.0 - prev);
    }
    return hm;
}

double HazardModel::cdf(std::int64_t k) const {
    if (k <= 0) return 0.0;
    if (geometric_) return -std::expm1(static_cast<double>(k) * std::log1p(-p_));
    const auto idx = static_cast<std::size_t>(k);
    return idx < cdf_.size() ? cdf_[idx] : cdf_.back();
}

double HazardModel::hazard(std::int64_t gap) const {
    if (gap < 1) throw InputError("hazard gap must be at least 1");
    if (geometric_) return p_;
    const auto idx = std::min(static_cast<std::size_t>(gap), hazard_.size() - 1);
    const double h = hazard_[idx];
    if (std::isnan(h)) {
        throw ExhaustedHazardError("gap distribution exhausted: G(" + std::to_string(gap - 1) + ") = 1");
    }
    return h;
}

}  // namespace volcp
