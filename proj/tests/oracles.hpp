#pragma once

// Test-only oracles: independent straight-line implementations of every
// quantity the library computes, written for clarity and kept deliberately
// free of library internals (no FFT, no tape, no shared helpers). Unit and
// acceptance suites compare the real code against these.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "tstyle/dataset.hpp"
#include "tstyle/series.hpp"

namespace oracle {

inline double mean(std::span<const double> x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// ---- spectra ---------------------------------------------------------------

inline std::vector<std::complex<double>> direct_dft(
    const std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            const double a = -2.0 * 3.14159265358979323846 *
                             static_cast<double>(k) * static_cast<double>(j) /
                             static_cast<double>(n);
            acc += x[j] * std::complex<double>(std::cos(a), std::sin(a));
        }
        out[k] = acc;
    }
    return out;
}

// ---- features --------------------------------------------------------------

inline double acf_at(std::span<const double> x, std::size_t tau) {
    const double m = mean(x);
    double num = 0.0;
    for (std::size_t t = tau; t < x.size(); ++t) {
        num += (x[t] - m) * (x[t - tau] - m);
    }
    double den = 0.0;
    for (double v : x) den += (v - m) * (v - m);
    return num / den;
}

inline double volatility(std::span<const double> returns) {
    const double m = mean(returns);
    double ss = 0.0;
    for (double r : returns) ss += (r - m) * (r - m);
    return std::sqrt(ss / static_cast<double>(returns.size() - 1));
}

inline std::vector<double> rescale12(std::span<const double> y) {
    const double lo = *std::min_element(y.begin(), y.end());
    const double hi = *std::max_element(y.begin(), y.end());
    std::vector<double> z(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        z[i] = 1.0 + (y[i] - lo) / (hi - lo);
    }
    return z;
}

inline std::vector<double> log_returns_rescaled(std::span<const double> y) {
    const std::vector<double> z = rescale12(y);
    std::vector<double> r(y.size() - 1);
    for (std::size_t t = 0; t + 1 < z.size(); ++t) {
        r[t] = std::log(z[t + 1] / z[t]);
    }
    return r;
}

// PSD by the book: sample ACF of the series at lags 0..T-2, mirrored to a
// two-sided sequence, pushed through the direct DFT, magnitudes taken.
inline std::vector<double> psd(std::span<const double> y) {
    const std::size_t m = y.size() - 2;
    std::vector<double> rho(m + 1);
    for (std::size_t tau = 0; tau <= m; ++tau) rho[tau] = acf_at(y, tau);

    const std::size_t len = 2 * m + 1;
    std::vector<std::complex<double>> two_sided(len, {0.0, 0.0});
    two_sided[0] = rho[0];
    for (std::size_t tau = 1; tau <= m; ++tau) {
        two_sided[tau] = rho[tau];
        two_sided[len - tau] = rho[tau];
    }
    const auto spectrum = direct_dft(two_sided);
    std::vector<double> out(len);
    for (std::size_t f = 0; f < len; ++f) out[f] = std::abs(spectrum[f]);
    return out;
}

inline double mean_psd(std::span<const double> y) {
    const std::vector<double> s = psd(y);
    return mean(s);
}

struct Features {
    std::vector<double> acf;
    double vol = 0.0;
    double mpsd = 0.0;
};

inline Features style_features(std::span<const double> y, int tau_max) {
    Features f;
    const std::vector<double> r = log_returns_rescaled(y);
    for (int tau = 1; tau <= tau_max; ++tau) {
        f.acf.push_back(acf_at(r, static_cast<std::size_t>(tau)));
    }
    f.vol = volatility(r);
    f.mpsd = mean_psd(y);
    return f;
}

// ---- losses ----------------------------------------------------------------

inline double content_loss(std::span<const double> y, std::span<const double> trend) {
    double s = 0.0;
    for (std::size_t t = 0; t < y.size(); ++t) {
        s += (y[t] - trend[t]) * (y[t] - trend[t]);
    }
    return s;
}

inline double tv_loss(std::span<const double> y) {
    double s = 0.0;
    for (std::size_t t = 0; t + 1 < y.size(); ++t) {
        s += (y[t + 1] - y[t]) * (y[t + 1] - y[t]);
    }
    return s;
}

inline double style_loss(std::span<const double> y, std::span<const double> ys,
                         int tau_max) {
    const Features a = style_features(y, tau_max);
    const Features b = style_features(ys, tau_max);
    double acf_term = 0.0;
    for (int tau = 0; tau < tau_max; ++tau) {
        const double d = a.acf[static_cast<std::size_t>(tau)] -
                         b.acf[static_cast<std::size_t>(tau)];
        acf_term += d * d;
    }
    return acf_term / tau_max + (a.vol - b.vol) * (a.vol - b.vol) +
           (a.mpsd - b.mpsd) * (a.mpsd - b.mpsd);
}

// Centered moving average with symmetric shrink at the edges.
inline std::vector<double> trend_shrink(std::span<const double> y, int window) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
    const std::ptrdiff_t half = window / 2;
    std::vector<double> out(y.size());
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        const std::ptrdiff_t k = std::min({half, t, n - 1 - t});
        double s = 0.0;
        for (std::ptrdiff_t i = t - k; i <= t + k; ++i) {
            s += y[static_cast<std::size_t>(i)];
        }
        out[static_cast<std::size_t>(t)] = s / static_cast<double>(2 * k + 1);
    }
    return out;
}

// ---- metrics ---------------------------------------------------------------

inline double euclid(const tstyle::Series& a, const tstyle::Series& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += (a.values[i] - b.values[i]) * (a.values[i] - b.values[i]);
    }
    return std::sqrt(s);
}

// kth nearest neighbor distance within the set, self excluded, via full sort
inline double knn_dist(const tstyle::WindowDataset& ds, std::size_t i, int k) {
    std::vector<double> d;
    for (std::size_t j = 0; j < ds.size(); ++j) {
        if (j != i) d.push_back(euclid(ds.windows[i], ds.windows[j]));
    }
    std::sort(d.begin(), d.end());
    return d[static_cast<std::size_t>(k) - 1];
}

inline std::pair<double, double> precision_recall(const tstyle::WindowDataset& real,
                                                  const tstyle::WindowDataset& synth,
                                                  int k) {
    std::size_t p_hits = 0;
    for (std::size_t s = 0; s < synth.size(); ++s) {
        bool inside = false;
        for (std::size_t r = 0; r < real.size() && !inside; ++r) {
            inside = euclid(synth.windows[s], real.windows[r]) <= knn_dist(real, r, k);
        }
        if (inside) ++p_hits;
    }
    std::size_t r_hits = 0;
    for (std::size_t r = 0; r < real.size(); ++r) {
        bool inside = false;
        for (std::size_t s = 0; s < synth.size() && !inside; ++s) {
            inside = euclid(real.windows[r], synth.windows[s]) <= knn_dist(synth, s, k);
        }
        if (inside) ++r_hits;
    }
    return {static_cast<double>(p_hits) / static_cast<double>(synth.size()),
            static_cast<double>(r_hits) / static_cast<double>(real.size())};
}

inline double authenticity(const tstyle::WindowDataset& real,
                           const tstyle::WindowDataset& synth) {
    std::size_t flagged = 0;
    for (std::size_t s = 0; s < synth.size(); ++s) {
        std::size_t nearest = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < real.size(); ++r) {
            const double d = euclid(synth.windows[s], real.windows[r]);
            if (d < best) {
                best = d;
                nearest = r;
            }
        }
        double real_gap = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < real.size(); ++r) {
            if (r != nearest) {
                real_gap = std::min(real_gap, euclid(real.windows[nearest], real.windows[r]));
            }
        }
        if (best < real_gap) ++flagged;
    }
    return 1.0 - static_cast<double>(flagged) / static_cast<double>(synth.size());
}

inline double forecast_mae(const std::vector<double>& coefficients,
                           const tstyle::WindowDataset& ds) {
    const std::size_t w = ds.window_length() - 1;
    double sum = 0.0;
    for (const tstyle::Series& win : ds.windows) {
        double p = coefficients[w];
        for (std::size_t j = 0; j < w; ++j) p += coefficients[j] * win.values[j];
        sum += std::fabs(p - win.values[w]);
    }
    return sum / static_cast<double>(ds.size());
}

}  // namespace oracle
