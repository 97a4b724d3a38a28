#pragma once

#include <array>
#include <span>
#include <vector>

#include "tstyle/series.hpp"

namespace tstyle {

enum class ReturnKind { Log, Simple };

/// What to do when Log returns meet a non-positive value.
enum class PositivityPolicy {
    Error,          // refuse: throw NonPositiveValue
    AffineRescale,  // map the series affinely onto [1, 2] first
};

struct FeatureConfig {
    int tau_max = 10;  // number of autocorrelation lags (1..tau_max)
    ReturnKind return_kind = ReturnKind::Log;
    PositivityPolicy positivity_policy = PositivityPolicy::AffineRescale;
};

enum class EdgePolicy {
    Shrink,   // window shrinks symmetrically near the boundaries
    Reflect,  // indices mirror about the boundary sample
};

struct TrendConfig {
    int window = 5;  // moving-average width, must be odd
    EdgePolicy edge_policy = EdgePolicy::Shrink;
};

struct ReturnSeries {
    std::vector<double> values;  // length T-1
    ReturnKind kind = ReturnKind::Log;

    std::size_t size() const { return values.size(); }
};

/**
 * The style representation of a series: one vector-valued feature and two
 * scalars, each a distributional property tied to how "realistic" a series
 * looks. dims records the length of each feature; the style loss weights
 * each block by 1/dims[i].
 */
struct StyleFeatures {
    std::vector<double> acf;  // returns autocorrelation at lags 1..tau_max
    double volatility = 0.0;  // sample std of the returns
    double mean_psd = 0.0;    // mean power spectral density of the series
    std::array<int, 3> dims{};
};

namespace features {

/**
 * Affine map of a sequence onto [1, 2]: min -> 1, max -> 2. Guarantees a
 * valid log domain while preserving shape. Throws DegenerateSeries when
 * the sequence is constant.
 */
std::vector<double> affine_rescale(std::span<const double> values);

/// Log or simple first differences of a series. Log returns are taken
/// after the positivity policy has been applied.
ReturnSeries compute_returns(const Series& series, const FeatureConfig& config);

/**
 * Sample autocorrelation of a return series at lags 1..tau_max:
 *   rho(tau) = sum_{t>tau} (r_t - rbar)(r_{t-tau} - rbar) / sum_t (r_t - rbar)^2.
 * Throws DegenerateSeries when all returns are equal and LagTooLarge when
 * tau_max leaves no full product term.
 */
std::vector<double> sample_acf(const ReturnSeries& returns, int tau_max);

/// Sample std of the returns with the 1/(count-1) divisor; 0 for a flat
/// return sequence.
double volatility(const ReturnSeries& returns);

/// Sample autocorrelation of the series itself at lags 0..T-2 (entry 0 is
/// exactly 1). This is the sequence whose DFT defines the PSD.
std::vector<double> series_acf(const Series& series);

/**
 * Magnitudes of the DFT of the two-sided extension of a one-sided ACF
 * sequence (lags 0..m mirrored to -m..m, so the transform length is 2m+1).
 * The symmetric input makes the transform real up to rounding; taking
 * magnitudes removes the residual imaginary part.
 */
std::vector<double> psd_from_acf(std::span<const double> acf_one_sided);

/// Power spectral density estimate of a series: psd_from_acf(series_acf(y)).
std::vector<double> psd(const Series& series);

/// Arithmetic mean of psd(series) across frequencies.
double mean_psd(const Series& series);

/// Centered moving-average trend of width config.window (odd), same length
/// as the input.
Series extract_trend(const Series& series, const TrendConfig& config);

/// All three stylized features of a series in one call.
StyleFeatures style_features(const Series& series, const FeatureConfig& config);

}  // namespace features

}  // namespace tstyle
