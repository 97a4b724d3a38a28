#include "tstyle/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tstyle {

double ForecasterModel::predict(const Series& window) const {
    const std::size_t w = coefficients.size() - 1;
    double p = coefficients[w];  // intercept
    for (std::size_t j = 0; j < w; ++j) {
        p += coefficients[j] * window.values[j];
    }
    return p;
}

}  // namespace tstyle

namespace tstyle::metrics {

namespace {

double squared_distance(const Series& a, const Series& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        s += d * d;
    }
    return s;
}

void check_pair(const WindowDataset& a, const WindowDataset& b) {
    validate_dataset(a);
    validate_dataset(b);
    if (a.empty() || b.empty()) {
        throw EmptyDataset("both datasets must be non-empty");
    }
    if (a.window_length() != b.window_length()) {
        throw LengthMismatch("datasets disagree on window length: " +
                             std::to_string(a.window_length()) + " vs " +
                             std::to_string(b.window_length()));
    }
}

// Squared distance to the k-th nearest neighbor within the same set, self
// excluded, for every point.
std::vector<double> knn_radii_sq(const WindowDataset& ds, int k) {
    const std::size_t n = ds.size();
    std::vector<double> radii(n);
    std::vector<double> dist;
    dist.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        dist.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            dist.push_back(squared_distance(ds.windows[i], ds.windows[j]));
        }
        std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());
        radii[i] = dist[static_cast<std::size_t>(k - 1)];
    }
    return radii;
}

// Fraction of query points lying inside at least one reference ball.
double coverage(const WindowDataset& queries, const WindowDataset& refs,
                const std::vector<double>& radii_sq) {
    std::size_t covered = 0;
    for (const Series& q : queries.windows) {
        for (std::size_t j = 0; j < refs.size(); ++j) {
            if (squared_distance(q, refs.windows[j]) <= radii_sq[j]) {
                ++covered;
                break;
            }
        }
    }
    return static_cast<double>(covered) / static_cast<double>(queries.size());
}

// Cholesky solve of a symmetric positive definite system; dim is small
// (the window length), so a dense in-place factorization is plenty.
std::vector<double> solve_spd(std::vector<std::vector<double>> a,
                              std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j][j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j][k] * a[j][k];
        if (d <= 0.0) {
            throw SingularSystem("normal equations are not positive definite");
        }
        a[j][j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i][k] * a[j][k];
            a[i][j] = s / a[j][j];
        }
    }
    // forward then backward substitution
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= a[i][k] * b[k];
        b[i] = s / a[i][i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= a[k][ii] * b[k];
        b[ii] = s / a[ii][ii];
    }
    return b;
}

}  // namespace

std::pair<double, double> precision_recall(const WindowDataset& real_ds,
                                           const WindowDataset& synth_ds,
                                           const PrMetricConfig& cfg) {
    check_pair(real_ds, synth_ds);
    if (cfg.k < 1) {
        throw ConfigError("k must be at least 1");
    }
    if (static_cast<std::size_t>(cfg.k) >= real_ds.size() ||
        static_cast<std::size_t>(cfg.k) >= synth_ds.size()) {
        throw KTooLarge("k = " + std::to_string(cfg.k) +
                        " needs strictly more points in each dataset");
    }

    const std::vector<double> real_radii = knn_radii_sq(real_ds, cfg.k);
    const std::vector<double> synth_radii = knn_radii_sq(synth_ds, cfg.k);
    const double precision = coverage(synth_ds, real_ds, real_radii);
    const double recall = coverage(real_ds, synth_ds, synth_radii);
    return {precision, recall};
}

double f_score(double precision, double recall) {
    if (precision < 0.0 || precision > 1.0 || recall < 0.0 || recall > 1.0) {
        throw ConfigError("precision and recall must lie in [0, 1]");
    }
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

double authenticity(const WindowDataset& real_ds, const WindowDataset& synth_ds) {
    check_pair(real_ds, synth_ds);
    if (real_ds.size() < 2) {
        throw EmptyDataset("authenticity needs at least 2 real windows");
    }

    // distance from each real window to its nearest other real window
    const std::size_t nr = real_ds.size();
    std::vector<double> real_nn_sq(nr, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nr; ++j) {
            if (j == i) continue;
            real_nn_sq[i] = std::min(
                real_nn_sq[i], squared_distance(real_ds.windows[i], real_ds.windows[j]));
        }
    }

    std::size_t copies = 0;
    for (const Series& s : synth_ds.windows) {
        std::size_t nearest = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < nr; ++j) {
            const double d = squared_distance(s, real_ds.windows[j]);
            if (d < best) {
                best = d;
                nearest = j;
            }
        }
        if (best < real_nn_sq[nearest]) ++copies;
    }
    return 1.0 - static_cast<double>(copies) / static_cast<double>(synth_ds.size());
}

ForecasterModel fit_forecaster(const WindowDataset& train, double ridge) {
    validate_dataset(train);
    if (train.empty()) {
        throw EmptyDataset("cannot fit a forecaster on an empty dataset");
    }
    if (ridge < 0.0) {
        throw ConfigError("ridge penalty must be nonnegative");
    }

    const std::size_t w = train.window_length() - 1;  // lag count
    const std::size_t n = train.size();

    // center lags and target so the intercept stays unpenalized
    std::vector<double> x_mean(w, 0.0);
    double y_mean = 0.0;
    for (const Series& win : train.windows) {
        for (std::size_t j = 0; j < w; ++j) x_mean[j] += win.values[j];
        y_mean += win.values[w];
    }
    for (double& m : x_mean) m /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);

    std::vector<std::vector<double>> gram(w, std::vector<double>(w, 0.0));
    std::vector<double> rhs(w, 0.0);
    for (const Series& win : train.windows) {
        const double yc = win.values[w] - y_mean;
        for (std::size_t j = 0; j < w; ++j) {
            const double xj = win.values[j] - x_mean[j];
            rhs[j] += xj * yc;
            for (std::size_t l = j; l < w; ++l) {
                gram[j][l] += xj * (win.values[l] - x_mean[l]);
            }
        }
    }
    for (std::size_t j = 0; j < w; ++j) {
        for (std::size_t l = 0; l < j; ++l) gram[j][l] = gram[l][j];
        gram[j][j] += ridge;
    }

    ForecasterModel model;
    model.ridge = ridge;
    model.coefficients = solve_spd(std::move(gram), std::move(rhs));

    double intercept = y_mean;
    for (std::size_t j = 0; j < w; ++j) intercept -= model.coefficients[j] * x_mean[j];
    model.coefficients.push_back(intercept);
    return model;
}

double forecast_mae(const ForecasterModel& model, const WindowDataset& eval_ds) {
    validate_dataset(eval_ds);
    if (eval_ds.empty()) {
        throw EmptyDataset("cannot evaluate a forecaster on an empty dataset");
    }
    if (model.coefficients.size() != eval_ds.window_length()) {
        throw LengthMismatch("model was fit for windows of length " +
                             std::to_string(model.coefficients.size()) +
                             ", dataset has length " +
                             std::to_string(eval_ds.window_length()));
    }

    const std::size_t w = eval_ds.window_length() - 1;
    double sum = 0.0;
    for (const Series& win : eval_ds.windows) {
        sum += std::fabs(model.predict(win) - win.values[w]);
    }
    return sum / static_cast<double>(eval_ds.size());
}

EvalReport evaluate(const WindowDataset& real_train, const WindowDataset& real_eval,
                    const WindowDataset& synth, const PrMetricConfig& cfg,
                    double ridge) {
    check_pair(real_train, synth);
    check_pair(real_train, real_eval);

    EvalReport report;
    const auto pr = precision_recall(real_train, synth, cfg);
    report.precision = pr.first;
    report.recall = pr.second;
    report.f_score = f_score(pr.first, pr.second);
    report.authenticity = authenticity(real_train, synth);
    report.tstr_mae = forecast_mae(fit_forecaster(synth, ridge), real_eval);
    report.trtr_mae = forecast_mae(fit_forecaster(real_train, ridge), real_eval);
    return report;
}

}  // namespace tstyle::metrics
