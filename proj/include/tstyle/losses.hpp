#pragma once

#include <vector>

#include "tstyle/features.hpp"
#include "tstyle/series.hpp"

namespace tstyle {

/// Relative weights of the three objective terms.
struct LossWeights {
    double alpha = 1.0;     // content
    double beta = 10.0;     // style
    double gamma = 0.0001;  // total variation
};

/**
 * Everything about a stylization problem that does not change while the
 * series is being optimized: the content trend target, the style feature
 * target, and the configuration both were computed with. Immutable and
 * safe to share across threads.
 */
struct LossContext {
    Series content_trend;         // h(y_c)
    StyleFeatures style_features; // S(y_s)
    LossWeights weights;
    FeatureConfig feature_config;
};

struct LossBreakdown {
    double content = 0.0;
    double style = 0.0;
    double tv = 0.0;
    double total = 0.0;
};

struct Gradient {
    std::vector<double> values;  // d total / d y_t

    std::size_t size() const { return values.size(); }
};

namespace losses {

/// Precomputes the fixed targets of the objective for a content/style pair.
LossContext make_context(const Series& content, const Series& style,
                         const LossWeights& weights, const FeatureConfig& fc,
                         const TrendConfig& tc);

/// Squared L2 distance between the series and the content trend target.
double content_loss(const Series& y, const LossContext& ctx);

/// Feature-space squared distance, each feature block weighted by 1/dim.
double style_distance(const StyleFeatures& a, const StyleFeatures& b);

/// style_distance between the features of y and the context's style target.
double style_loss(const Series& y, const LossContext& ctx);

/// Sum of squared consecutive differences.
double tv_loss(const Series& y);

/**
 * All three terms plus their weighted sum. The style term is extracted only
 * when its weight is nonzero, so configurations with beta = 0 work on
 * series (for example constant ones) whose style features are undefined.
 */
LossBreakdown total_loss(const Series& y, const LossContext& ctx);

/**
 * Exact gradient of total_loss with respect to every sample of y, computed
 * with a reverse-mode tape over the full feature pipeline (rescale, log
 * returns, autocorrelation, volatility, spectral mean, trend residual,
 * total variation). Min/max positions of the rescale are treated as fixed
 * at the evaluation point and |z| uses d|z|/dz = sign(z).
 */
Gradient loss_gradient(const Series& y, const LossContext& ctx);

/// Central finite differences of total_loss; the verification oracle for
/// loss_gradient.
Gradient finite_difference_gradient(const LossContext& ctx, const Series& y, double h);

}  // namespace losses

}  // namespace tstyle
