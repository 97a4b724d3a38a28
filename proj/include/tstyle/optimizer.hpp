#pragma once

#include <utility>
#include <vector>

#include "tstyle/losses.hpp"
#include "tstyle/series.hpp"

namespace tstyle {

struct OptimizerConfig {
    int iterations = 250;       // fixed number of gradient steps
    double base_lr = 0.01;      // initial learning rate
    double rms_decay = 0.9;     // running average decay of squared gradients
    double rms_epsilon = 1e-8;  // denominator floor
    bool return_best = true;    // return the lowest-loss iterate instead of the last

    // Ratio of the final to the initial learning rate; the rate decays
    // exponentially across the run so the iterate settles instead of
    // oscillating at the base step size. 1 keeps the rate constant.
    double lr_anneal = 0.01;

    // Width of the normalized optimization band. The content window is
    // mapped affinely onto [1, 1 + band_width] before optimizing and the
    // result is mapped back, which makes step sizes and the content/style
    // balance independent of the input's units. Non-positive values
    // optimize in raw units.
    double band_width = 0.15;
};

/// Per-coordinate running mean of squared gradients.
struct RmsState {
    std::vector<double> accumulator;
};

struct StylizationResult {
    Series stylized;                   // in the units of the input series
    std::vector<LossBreakdown> trace;  // loss at iterate i, before step i;
                                       // measured in optimization coordinates
    int best_iteration = 0;            // argmin of trace[i].total
};

namespace optimizer {

/**
 * One RMSprop update at the configured base rate:
 *   state' = decay * state + (1 - decay) * g^2
 *   y'     = y - lr * g / (sqrt(state') + eps)
 * both entrywise. Returns the new point and the new state. The schedule
 * lives in style_time; this step always applies config.base_lr.
 */
std::pair<std::vector<double>, RmsState> rmsprop_step(const std::vector<double>& y,
                                                      const Gradient& grad,
                                                      const RmsState& state,
                                                      const OptimizerConfig& config);

/**
 * The stylization block: start at the content series and run
 * config.iterations RMSprop steps on the total loss against the fixed
 * targets (content trend, style features). With band_width > 0 the loop
 * runs in normalized coordinates,
 *   z = 1 + (y - min(content)) * band_width / (max(content) - min(content)),
 * and the result is mapped back; the trace is recorded in those
 * coordinates. The learning rate decays from base_lr to
 * lr_anneal * base_lr across the run. The trace covers every pre-step
 * iterate; with return_best the returned series is the iterate whose
 * total loss is smallest, otherwise the final post-step point. Fully
 * deterministic.
 */
StylizationResult style_time(const Series& content, const Series& style,
                             const LossWeights& weights, const OptimizerConfig& opt,
                             const FeatureConfig& fc, const TrendConfig& tc);

}  // namespace optimizer

}  // namespace tstyle
