#include "tstyle/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tstyle::optimizer {

namespace {

void validate_config(const OptimizerConfig& c) {
    if (c.iterations < 1) {
        throw ConfigError("iterations must be at least 1");
    }
    if (c.base_lr <= 0.0) {
        throw ConfigError("base learning rate must be positive");
    }
    if (c.rms_decay <= 0.0 || c.rms_decay >= 1.0) {
        throw ConfigError("rms decay must lie strictly between 0 and 1");
    }
    if (c.rms_epsilon <= 0.0) {
        throw ConfigError("rms epsilon must be positive");
    }
    if (c.lr_anneal <= 0.0 || c.lr_anneal > 1.0) {
        throw ConfigError("lr anneal ratio must lie in (0, 1]");
    }
}

}  // namespace

std::pair<std::vector<double>, RmsState> rmsprop_step(const std::vector<double>& y,
                                                      const Gradient& grad,
                                                      const RmsState& state,
                                                      const OptimizerConfig& config) {
    validate_config(config);
    const std::size_t n = y.size();
    if (grad.size() != n || state.accumulator.size() != n) {
        throw LengthMismatch("point, gradient and state must have equal length");
    }

    std::pair<std::vector<double>, RmsState> out;
    out.first.resize(n);
    out.second.accumulator.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double g = grad.values[t];
        const double acc = config.rms_decay * state.accumulator[t] +
                           (1.0 - config.rms_decay) * g * g;
        out.second.accumulator[t] = acc;
        out.first[t] = y[t] - config.base_lr * g / (std::sqrt(acc) + config.rms_epsilon);
    }
    return out;
}

StylizationResult style_time(const Series& content, const Series& style,
                             const LossWeights& weights, const OptimizerConfig& opt,
                             const FeatureConfig& fc, const TrendConfig& tc) {
    validate_config(opt);
    validate_series(content);
    validate_series(style);
    if (content.size() != style.size()) {
        throw LengthMismatch("content length " + std::to_string(content.size()) +
                             " does not match style length " +
                             std::to_string(style.size()));
    }

    // optimization coordinates: affine map anchored at the content window
    const bool banded = opt.band_width > 0.0;
    double offset = 0.0;
    double scale = 1.0;
    if (banded) {
        double lo = content.values[0];
        double hi = content.values[0];
        for (double v : content.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi <= lo) {
            throw DegenerateSeries("constant content window cannot be normalized");
        }
        offset = lo;
        scale = (hi - lo) / opt.band_width;
    }
    const auto to_band = [&](double v) { return banded ? 1.0 + (v - offset) / scale : v; };
    const auto from_band = [&](double v) { return banded ? offset + (v - 1.0) * scale : v; };

    Series y = content;
    for (double& v : y.values) v = to_band(v);
    Series anchor = y;  // normalized content, the context anchor

    const LossContext ctx = losses::make_context(anchor, style, weights, fc, tc);

    StylizationResult result;
    result.trace.reserve(static_cast<std::size_t>(opt.iterations));

    RmsState state;
    state.accumulator.assign(content.size(), 0.0);

    Series best = y;
    double best_total = std::numeric_limits<double>::infinity();

    const double lr_decay =
        opt.iterations > 1
            ? std::exp(std::log(opt.lr_anneal) / static_cast<double>(opt.iterations - 1))
            : 1.0;
    OptimizerConfig step_cfg = opt;

    for (int i = 0; i < opt.iterations; ++i) {
        try {
            const LossBreakdown bd = losses::total_loss(y, ctx);
            result.trace.push_back(bd);
            if (bd.total < best_total) {
                best_total = bd.total;
                best = y;
                result.best_iteration = i;
            }
            const Gradient g = losses::loss_gradient(y, ctx);
            auto stepped = rmsprop_step(y.values, g, state, step_cfg);
            y.values = std::move(stepped.first);
            state = std::move(stepped.second);
            step_cfg.base_lr *= lr_decay;
        } catch (const DegenerateSeries& e) {
            throw DegenerateSeries(std::string(e.what()) + " (at iteration " +
                                   std::to_string(i) + ")");
        }
    }

    result.stylized = opt.return_best ? std::move(best) : std::move(y);
    for (double& v : result.stylized.values) v = from_band(v);
    result.stylized.label = content.label;
    return result;
}

}  // namespace tstyle::optimizer
