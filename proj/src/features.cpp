#include "tstyle/features.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "tstyle/fft.hpp"

namespace tstyle::features {

namespace {

double mean_of(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

// Autocorrelation at lags 0..tau_max of an arbitrary sequence. The caller
// guarantees tau_max <= n-2 and a non-degenerate denominator.
std::vector<double> acf_lags0(std::span<const double> x, int tau_max) {
    const std::size_t n = x.size();
    const double m = mean_of(x);

    double den = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double d = x[t] - m;
        den += d * d;
    }
    if (den <= 0.0) {
        throw DegenerateSeries("all values equal, autocorrelation undefined");
    }

    std::vector<double> rho(static_cast<std::size_t>(tau_max) + 1);
    for (int tau = 0; tau <= tau_max; ++tau) {
        double num = 0.0;
        for (std::size_t t = static_cast<std::size_t>(tau); t < n; ++t) {
            num += (x[t] - m) * (x[t - static_cast<std::size_t>(tau)] - m);
        }
        rho[static_cast<std::size_t>(tau)] = num / den;
    }
    return rho;
}

}  // namespace

std::vector<double> affine_rescale(std::span<const double> values) {
    // Ties on min/max resolve to the lowest index; the gradient path makes
    // the same choice so both sides agree at kinks.
    double lo = values[0];
    double hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi <= lo) {
        throw DegenerateSeries("constant series cannot be rescaled onto [1, 2]");
    }
    const double inv = 1.0 / (hi - lo);
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = 1.0 + (values[i] - lo) * inv;
    }
    return out;
}

ReturnSeries compute_returns(const Series& series, const FeatureConfig& config) {
    validate_series(series);
    const std::size_t n = series.size();

    ReturnSeries out;
    out.kind = config.return_kind;
    out.values.resize(n - 1);

    if (config.return_kind == ReturnKind::Simple) {
        for (std::size_t t = 0; t + 1 < n; ++t) {
            out.values[t] = series.values[t + 1] - series.values[t];
        }
        return out;
    }

    if (config.positivity_policy == PositivityPolicy::Error) {
        for (std::size_t t = 0; t < n; ++t) {
            if (series.values[t] <= 0.0) {
                throw NonPositiveValue("log returns need positive values; got " +
                                       std::to_string(series.values[t]) + " at index " +
                                       std::to_string(t));
            }
        }
        for (std::size_t t = 0; t + 1 < n; ++t) {
            out.values[t] = std::log(series.values[t + 1]) - std::log(series.values[t]);
        }
        return out;
    }

    const std::vector<double> z = affine_rescale(series.values);
    for (std::size_t t = 0; t + 1 < n; ++t) {
        out.values[t] = std::log(z[t + 1]) - std::log(z[t]);
    }
    return out;
}

std::vector<double> sample_acf(const ReturnSeries& returns, int tau_max) {
    const std::size_t n = returns.size();
    if (tau_max < 1) {
        throw ConfigError("tau_max must be at least 1");
    }
    if (static_cast<std::size_t>(tau_max) >= n - 1 || n < 2) {
        throw LagTooLarge("tau_max " + std::to_string(tau_max) + " too large for " +
                          std::to_string(n) + " returns");
    }
    std::vector<double> rho = acf_lags0(returns.values, tau_max);
    rho.erase(rho.begin());  // lag 0 is identically 1, only lags >= 1 are exported
    return rho;
}

double volatility(const ReturnSeries& returns) {
    const std::size_t n = returns.size();
    if (n < 2) {
        throw SeriesTooShort("volatility needs at least 2 returns");
    }
    const double m = mean_of(returns.values);
    double ss = 0.0;
    for (double r : returns.values) {
        ss += (r - m) * (r - m);
    }
    return std::sqrt(ss / static_cast<double>(n - 1));
}

std::vector<double> series_acf(const Series& series) {
    validate_series(series);
    return acf_lags0(series.values, static_cast<int>(series.size()) - 2);
}

std::vector<double> psd_from_acf(std::span<const double> acf_one_sided) {
    const std::size_t m = acf_one_sided.size() - 1;  // max lag
    const std::size_t len = 2 * m + 1;

    // Two-sided sequence in DFT order: lag 0 first, positive lags ascending,
    // then negative lags wrapped to the tail.
    std::vector<std::complex<double>> buf(len, {0.0, 0.0});
    buf[0] = acf_one_sided[0];
    for (std::size_t tau = 1; tau <= m; ++tau) {
        buf[tau] = acf_one_sided[tau];
        buf[len - tau] = acf_one_sided[tau];
    }
    fft::fft(buf);

    std::vector<double> out(len);
    for (std::size_t f = 0; f < len; ++f) {
        out[f] = std::abs(buf[f]);
    }
    return out;
}

std::vector<double> psd(const Series& series) {
    return psd_from_acf(series_acf(series));
}

double mean_psd(const Series& series) {
    const std::vector<double> s = psd(series);
    return mean_of(s);
}

Series extract_trend(const Series& series, const TrendConfig& config) {
    validate_series(series);
    const std::size_t n = series.size();
    if (config.window < 1 || config.window % 2 == 0) {
        throw ConfigError("trend window must be a positive odd integer, got " +
                          std::to_string(config.window));
    }
    if (static_cast<std::size_t>(config.window) > n) {
        throw WindowTooLarge("trend window " + std::to_string(config.window) +
                             " exceeds series length " + std::to_string(n));
    }

    const std::size_t half = static_cast<std::size_t>(config.window) / 2;
    Series out;
    out.label = series.label;
    out.values.resize(n);

    if (config.edge_policy == EdgePolicy::Shrink) {
        for (std::size_t t = 0; t < n; ++t) {
            const std::size_t k = std::min({half, t, n - 1 - t});
            double s = 0.0;
            for (std::size_t i = t - k; i <= t + k; ++i) s += series.values[i];
            out.values[t] = s / static_cast<double>(2 * k + 1);
        }
    } else {
        for (std::size_t t = 0; t < n; ++t) {
            double s = 0.0;
            for (std::size_t j = 0; j < static_cast<std::size_t>(config.window); ++j) {
                std::ptrdiff_t i = static_cast<std::ptrdiff_t>(t + j) -
                                   static_cast<std::ptrdiff_t>(half);
                if (i < 0) i = -i;
                const std::ptrdiff_t last = static_cast<std::ptrdiff_t>(n) - 1;
                if (i > last) i = 2 * last - i;
                s += series.values[static_cast<std::size_t>(i)];
            }
            out.values[t] = s / static_cast<double>(config.window);
        }
    }
    return out;
}

StyleFeatures style_features(const Series& series, const FeatureConfig& config) {
    validate_series(series);
    if (config.tau_max < 1 ||
        static_cast<std::size_t>(config.tau_max) + 3 > series.size()) {
        throw LagTooLarge("tau_max " + std::to_string(config.tau_max) +
                          " needs a series of at least " +
                          std::to_string(config.tau_max + 3) + " points");
    }

    const ReturnSeries r = compute_returns(series, config);
    StyleFeatures out;
    out.acf = sample_acf(r, config.tau_max);
    out.volatility = volatility(r);
    out.mean_psd = mean_psd(series);
    out.dims = {config.tau_max, 1, 1};
    return out;
}

}  // namespace tstyle::features
