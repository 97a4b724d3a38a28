#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tstyle/dataset.hpp"
#include "tstyle/optimizer.hpp"
#include "tstyle/rng.hpp"
#include "tstyle/series.hpp"

namespace tstyle {

/**
 * First-order autoregression whose coefficients switch regime at
 * T_s = floor(switch_fraction * horizon):
 *   y_t = a11 * y_{t-1} + a10 + e_t   for t <  T_s
 *   y_t = a21 * y_{t-1} + a20 + e_t   for t >= T_s
 * with y_0 ~ N(0, 1) and e_t iid N(0, noise_std^2). The emitted series is
 * [y_1, ..., y_horizon]; y_0 only seeds the recursion.
 */
struct SwitchingArConfig {
    double a10 = 0.01;
    double a11 = 1.001;
    double a20 = -0.01;
    double a21 = 0.999;
    int horizon = 3030;
    double switch_fraction = 0.8;
    double noise_std = 1.0;
    std::uint64_t seed = 0;
    std::optional<double> y0;  // test hook: fixes y_0 instead of drawing it
};

/// Randomly shifted and scaled unit-step shock added to a window.
struct ShockConfig {
    double amp_lo = 0.0;  // amplitude drawn uniformly from [amp_lo, amp_hi]
    double amp_hi = 0.0;
    int shift_lo = 0;     // step position drawn uniformly from [shift_lo, shift_hi]
    int shift_hi = 0;
    std::uint64_t seed = 0;
};

/// How the content dataset of a stylization run is obtained.
struct ContentStrategy {
    enum class Kind { InSample, Perturbed, External };
    Kind kind = Kind::InSample;
    ShockConfig shock;          // used when kind == Perturbed
    std::string external_path;  // used when kind == External
};

namespace datagen {

Series gen_switching_ar1(const SwitchingArConfig& config);

/// Every length-(w+1) contiguous window of the series, in order; a series
/// of length T yields exactly T - w windows.
WindowDataset sliding_windows(const Series& series, int w);

/// Chronological split into the first n_train windows and the rest.
std::pair<WindowDataset, WindowDataset> train_test_split(const WindowDataset& ds,
                                                         std::size_t n_train);

/// Shock amplitudes of +-2 pooled standard deviations and shifts over the
/// middle half of the window, measured on the given dataset.
ShockConfig default_shock_config(const WindowDataset& reference, std::uint64_t seed);

/// window_t + a * 1[t >= k] with a and k drawn from the shock ranges.
Series perturb_with_step(const Series& window, const ShockConfig& shock, rng::Rng& rng);

/// perturb_with_step applied to every window, each on its own sub-stream
/// of shock.seed.
WindowDataset perturb_dataset(const WindowDataset& ds, const ShockConfig& shock);

/**
 * Materializes the content dataset of a stylization run: the style
 * dataset itself (InSample), a step-shocked copy of it (Perturbed), or a
 * window CSV from disk (External, which must match the style window
 * length).
 */
WindowDataset resolve_content(const ContentStrategy& strategy,
                              const WindowDataset& style_ds);

/**
 * Stylized dataset generation: n times, draw a content window and a style
 * window uniformly (with replacement, from sub-stream i of the master
 * seed), run the stylization block, and record the output with full
 * lineage. Samples are independent, so they may run on several threads;
 * the result is identical for any jobs value. When failures is non-null,
 * per-sample errors are collected there instead of aborting the run.
 */
WindowDataset generate_stylized_dataset(
    const WindowDataset& content, const WindowDataset& style, std::size_t n,
    const LossWeights& weights, const OptimizerConfig& opt, const FeatureConfig& fc,
    const TrendConfig& tc, std::uint64_t seed, int jobs = 1,
    std::vector<std::pair<std::size_t, std::string>>* failures = nullptr);

/// Adds iid N(0, sigma^2) noise to every sample.
Series augment_jitter(const Series& window, double sigma, rng::Rng& rng);

/// Reflects values about the window mean; an involution that preserves the mean.
Series augment_flip(const Series& window);

/**
 * Monotone time warp: segment speeds between evenly spaced knots are
 * perturbed by log-normal factors exp(warp_std * xi), the warp is
 * renormalized to pin both endpoints, and the window is resampled at the
 * warped time points by linear interpolation.
 */
Series augment_time_warp(const Series& window, int knots, double warp_std,
                         rng::Rng& rng);

}  // namespace datagen

}  // namespace tstyle
