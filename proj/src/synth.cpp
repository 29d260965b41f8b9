#include "volcp/synth.hpp"

#include "volcp/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace volcp {

namespace {

// Gap by inversion of G; nullopt when the draw lands in the defect of a
// tabulated G that never reaches one.
std::optional<std::int64_t> draw_gap(const HazardModel& hm, Rng& rng) {
    const double u = rng.uniform();
    if (hm.is_geometric()) {
        const double g = std::ceil(std::log1p(-u) / std::log1p(-hm.p()));
        return std::max<std::int64_t>(1, static_cast<std::int64_t>(g));
    }
    const auto& cdf = hm.table();
    for (std::size_t k = 1; k < cdf.size(); ++k) {
        if (cdf[k] >= u) return static_cast<std::int64_t>(k);
    }
    return std::nullopt;
}

SegmentParams draw_from_prior(const Hyperparams& h, Rng& rng) {
    const double log_sigma2 = std::log(h.b) - rng.log_gamma_variate(h.a);
    const double sigma = std::exp(0.5 * log_sigma2);
    if (!std::isfinite(sigma) || sigma <= 0.0) {
        throw NumericError("prior draw of sigma^2 is not representable (log sigma^2 = " +
                           std::to_string(log_sigma2) + ")");
    }
    SegmentParams p;
    const double z_mu = rng.normal();
    const double z_alpha = rng.normal();
    p.mu = h.include_mu ? sigma * h.delta0 * z_mu : 0.0;
    p.alpha = sigma * h.delta1 * z_alpha;
    p.sigma = sigma;
    return p;
}

}  // namespace

std::vector<std::int64_t> sample_changepoints(const HazardModel& hm, std::int64_t length, Rng& rng) {
    std::vector<std::int64_t> cps{0};
    std::int64_t at = 0;
    while (true) {
        const auto gap = draw_gap(hm, rng);
        if (!gap) break;
        at += *gap;
        if (at >= length) break;
        cps.push_back(at);
    }
    return cps;
}

SynthPath generate(const SynthSpec& spec) {
    if (spec.length < 2) throw InputError("synthetic series length must be at least 2");
    if (!std::isfinite(spec.y0)) throw InputError("synthetic y0 must be finite");
    SynthPath out;
    Rng cp_rng(spec.seed, 0);
    out.changepoints = sample_changepoints(spec.hazard, spec.length, cp_rng);
    const std::size_t n_seg = out.changepoints.size();

    if (const auto* explicit_params = std::get_if<std::vector<SegmentParams>>(&spec.params)) {
        if (explicit_params->size() < n_seg) {
            throw InputError("explicit parameters cover " + std::to_string(explicit_params->size()) +
                             " segments but " + std::to_string(n_seg) + " were sampled");
        }
        for (std::size_t k = 0; k < n_seg; ++k) {
            const auto& p = (*explicit_params)[k];
            if (!(p.sigma > 0.0) || !std::isfinite(p.sigma) || !std::isfinite(p.mu) || !std::isfinite(p.alpha)) {
                throw InputError("segment " + std::to_string(k) + " has invalid parameters");
            }
        }
    } else {
        std::get<Hyperparams>(spec.params).validate();
    }

    out.y.assign(static_cast<std::size_t>(spec.length) + 1, 0.0);
    out.y[0] = spec.y0;
    for (std::size_t k = 0; k < n_seg; ++k) {
        Rng rng(spec.seed, k + 1);
        const SegmentParams p = std::holds_alternative<Hyperparams>(spec.params)
                                    ? draw_from_prior(std::get<Hyperparams>(spec.params), rng)
                                    : std::get<std::vector<SegmentParams>>(spec.params)[k];
        out.segments.push_back(p);
        // Segment k covers y_t for T_k < t <= T_{k+1}.
        const std::int64_t first = out.changepoints[k] + 1;
        const std::int64_t last = k + 1 < n_seg ? out.changepoints[k + 1] : spec.length;
        for (std::int64_t t = first; t <= last; ++t) {
            const auto i = static_cast<std::size_t>(t);
            out.y[i] = p.mu + p.alpha * out.y[i - 1] + p.sigma * rng.normal();
        }
    }
    for (double v : out.y) {
        if (!std::isfinite(v)) throw NumericError("synthetic path diverged to a non-finite value");
    }
    return out;
}

}  // namespace volcp
