#include "volcp/filter.hpp"

#include "volcp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace volcp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& xs) {
    double top = kNegInf;
    for (double x : xs) top = std::max(top, x);
    if (top == kNegInf) return kNegInf;
    double acc = 0.0;
    for (double x : xs) acc += std::exp(x - top);
    return top + std::log(acc);
}

// Higher probability first; on equal probability the more recent s wins.
bool ranks_before(const SupportAtom& lhs, const SupportAtom& rhs) {
    if (lhs.log_weight != rhs.log_weight) return lhs.log_weight > rhs.log_weight;
    return lhs.s > rhs.s;
}

}  // namespace

ChangepointFilter::ChangepointFilter(FilterConfig config, double y0) : config_(std::move(config)), last_y_(y0) {
    config_.validate();
    if (!std::isfinite(y0)) throw InputError("initial observation is not finite");
}

ChangepointFilter ChangepointFilter::restore(FilterConfig config, std::int64_t t, double last_y,
                                             std::vector<SupportAtom> atoms) {
    config.validate();
    if (t < 0) throw InputError("filter state has negative time");
    if (!std::isfinite(last_y)) throw InputError("filter state has non-finite last observation");
    if ((t == 0) != atoms.empty()) throw InputError("filter state atoms inconsistent with time");
    const int dim = config.hyper.dim();
    std::vector<double> lw;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const auto& a = atoms[i];
        if (a.s < 0 || a.s >= t) throw InputError("atom change-point outside [0, t)");
        if (i > 0 && a.s <= atoms[i - 1].s) throw InputError("atoms not strictly increasing in s");
        if (a.stats.dim() != dim || a.stats.cov_factor.rows() != dim || a.stats.cov_factor.cols() != dim) {
            throw InputError("atom statistics have the wrong dimension");
        }
        if (a.stats.count != t - a.s) throw InputError("atom statistics count differs from t - s");
        if (!std::isfinite(a.log_weight)) throw InputError("atom log-weight is not finite");
        lw.push_back(a.log_weight);
    }
    if (config.max_support != 0 && atoms.size() > config.max_support) {
        throw InputError("filter state holds more atoms than max_support");
    }
    if (!atoms.empty() && std::abs(log_sum_exp(lw)) > 1e-9) throw InputError("atom weights are not normalized");
    ChangepointFilter f;
    f.config_ = std::move(config);
    f.t_ = t;
    f.last_y_ = last_y;
    f.atoms_ = std::move(atoms);
    return f;
}

void ChangepointFilter::step(double y) {
    if (!std::isfinite(y)) throw InputError("observation at t = " + std::to_string(t_ + 1) + " is not finite");
    const auto& h = config_.hyper;

    SupportAtom fresh{t_, 0.0, SegmentStats::empty(h)};
    if (!atoms_.empty()) {
        std::vector<double> into_new;
        into_new.reserve(atoms_.size());
        for (auto& a : atoms_) {
            const double hz = config_.hazard.hazard(t_ - a.s);
            into_new.push_back(a.log_weight + std::log(hz));
            a.log_weight += std::log1p(-hz);
        }
        fresh.log_weight = log_sum_exp(into_new);
    }
    atoms_.push_back(std::move(fresh));

    for (auto& a : atoms_) {
        if (a.log_weight == kNegInf) continue;
        a.log_weight += predictive(a.stats, h, last_y_).logpdf(y);
        a.stats.absorb(y, last_y_);
    }
    std::erase_if(atoms_, [](const SupportAtom& a) { return a.log_weight == kNegInf; });
    normalize();
    prune();

    ++t_;
    last_y_ = y;
}

void ChangepointFilter::normalize() {
    std::vector<double> lw;
    lw.reserve(atoms_.size());
    for (const auto& a : atoms_) lw.push_back(a.log_weight);
    const double total = log_sum_exp(lw);
    if (!std::isfinite(total)) {
        throw NumericError("change-point posterior degenerate at t = " + std::to_string(t_ + 1));
    }
    for (auto& a : atoms_) a.log_weight -= total;
}

void ChangepointFilter::prune() {
    const std::size_t n = config_.max_support;
    if (n == 0 || atoms_.size() <= n) return;
    std::nth_element(atoms_.begin(), atoms_.begin() + static_cast<std::ptrdiff_t>(n - 1), atoms_.end(), ranks_before);
    atoms_.resize(n);
    std::sort(atoms_.begin(), atoms_.end(), [](const SupportAtom& l, const SupportAtom& r) { return l.s < r.s; });
    normalize();
}

void ChangepointFilter::require_started() const {
    if (t_ < 1) throw InputError("filter has not observed any return after y0");
}

SparsePmf ChangepointFilter::posterior() const {
    require_started();
    std::vector<std::int64_t> support;
    std::vector<double> probs;
    support.reserve(atoms_.size());
    probs.reserve(atoms_.size());
    for (const auto& a : atoms_) {
        const double p = std::exp(a.log_weight);
        if (p <= 0.0) continue;  // underflowed mass cannot be represented
        support.push_back(a.s);
        probs.push_back(p);
    }
    return SparsePmf(std::move(support), std::move(probs));
}

const SupportAtom& ChangepointFilter::map_atom() const {
    require_started();
    const auto it = std::min_element(atoms_.begin(), atoms_.end(), ranks_before);
    return *it;
}

std::int64_t ChangepointFilter::map_changepoint() const { return map_atom().s; }

ParamSummary ChangepointFilter::param_summary(ParamTarget target, double level) const {
    if (!(level > 0.0 && level < 1.0)) throw InputError("credible level must lie in (0, 1)");
    const auto& h = config_.hyper;
    const auto& stats = map_atom().stats;
    const double lo_q = 0.5 * (1.0 - level);
    const double hi_q = 1.0 - lo_q;
    if (target == ParamTarget::log_sigma) {
        const auto ig = sigma2_posterior(stats, h);
        return {0.5 * std::log(ig.mode()), 0.5 * std::log(ig.quantile(lo_q)), 0.5 * std::log(ig.quantile(hi_q))};
    }
    if (target == ParamTarget::mu && !h.include_mu) throw InputError("mu is not part of the model");
    const auto [shape, scale] = shape_scale(stats, h);
    const int idx = target == ParamTarget::mu ? 0 : h.dim() - 1;
    const StudentT marginal{2.0 * shape, stats.mean()(idx), (scale / shape) * stats.cov_factor(idx, idx)};
    return {marginal.loc, marginal.quantile(lo_q), marginal.quantile(hi_q)};
}

StudentT ChangepointFilter::map_predictive() const {
    return predictive(map_atom().stats, config_.hyper, last_y_);
}

StudentTMixture ChangepointFilter::predictive_mixture() const {
    require_started();
    const auto& h = config_.hyper;
    StudentTMixture mix;
    mix.weights.reserve(atoms_.size() + 1);
    mix.components.reserve(atoms_.size() + 1);
    double fresh = 0.0;
    for (const auto& a : atoms_) {
        const double p = std::exp(a.log_weight);
        const double hz = config_.hazard.hazard(t_ - a.s);
        fresh += hz * p;
        mix.weights.push_back((1.0 - hz) * p);
        mix.components.push_back(predictive(a.stats, h, last_y_));
    }
    mix.weights.push_back(fresh);
    mix.components.push_back(predictive(SegmentStats::empty(h), h, last_y_));
    return mix;
}

}  // namespace volcp
