#pragma once

#include <utility>
#include <vector>

#include "tstyle/dataset.hpp"

namespace tstyle {

struct PrMetricConfig {
    int k = 5;  // nearest-neighbor rank defining the manifold radius
};

/**
 * Ridge-regularized linear autoregressor: predicts the last value of a
 * window from its first W values plus an unpenalized intercept, fitted in
 * closed form via the normal equations. coefficients holds the W lag
 * weights followed by the intercept.
 */
struct ForecasterModel {
    std::vector<double> coefficients;
    double ridge = 1e-6;

    double predict(const Series& window) const;
};

struct EvalReport {
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
    double authenticity = 0.0;
    double tstr_mae = 0.0;  // forecaster trained on synthetic windows
    double trtr_mae = 0.0;  // forecaster trained on real windows
};

namespace metrics {

/**
 * Coverage-based precision and recall between two window datasets under
 * Euclidean distance on flattened windows. A reference point's manifold
 * radius is the distance to its k-th nearest neighbor within its own set
 * (self excluded); precision is the fraction of synthetic points inside
 * at least one real point's ball, recall the mirror image.
 */
std::pair<double, double> precision_recall(const WindowDataset& real_ds,
                                           const WindowDataset& synth_ds,
                                           const PrMetricConfig& cfg);

/// Harmonic mean of precision and recall; 0 when both are 0.
double f_score(double precision, double recall);

/**
 * Fraction of synthetic windows that are not noisy copies of real ones.
 * A synthetic window s is flagged a copy when it sits strictly closer to
 * its nearest real window r than r's nearest other real window does.
 * Nearest-neighbor ties resolve to the lowest index.
 */
double authenticity(const WindowDataset& real_ds, const WindowDataset& synth_ds);

/// Closed-form ridge fit of the last window value on the first W values.
ForecasterModel fit_forecaster(const WindowDataset& train, double ridge);

/// Mean absolute error of the model's one-step predictions over a dataset.
double forecast_mae(const ForecasterModel& model, const WindowDataset& eval_ds);

/**
 * Full report for a (real, synthetic) dataset pair: precision/recall/F and
 * authenticity of synth against real_train, plus train-on-synthetic and
 * train-on-real MAE on real_eval with the identical forecaster family.
 */
EvalReport evaluate(const WindowDataset& real_train, const WindowDataset& real_eval,
                    const WindowDataset& synth, const PrMetricConfig& cfg,
                    double ridge = 1e-6);

}  // namespace metrics

}  // namespace tstyle
