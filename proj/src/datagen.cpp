#include "tstyle/datagen.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "tstyle/io.hpp"

namespace tstyle::datagen {

namespace {

void validate_ar_config(const SwitchingArConfig& c) {
    if (c.horizon < 2) {
        throw ConfigError("horizon must be at least 2");
    }
    if (c.switch_fraction <= 0.0 || c.switch_fraction >= 1.0) {
        throw ConfigError("switch fraction must lie strictly between 0 and 1");
    }
    if (c.noise_std < 0.0) {
        throw ConfigError("noise std must be nonnegative");
    }
}

int resolve_jobs(int jobs, std::size_t n) {
    if (jobs < 1) {
        jobs = static_cast<int>(std::thread::hardware_concurrency());
        if (jobs < 1) jobs = 1;
    }
    return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs), n));
}

}  // namespace

Series gen_switching_ar1(const SwitchingArConfig& config) {
    validate_ar_config(config);
    rng::Rng rng(config.seed);

    const int t_switch = static_cast<int>(
        std::floor(config.switch_fraction * static_cast<double>(config.horizon)));
    double y = config.y0 ? *config.y0 : rng.normal(0.0, 1.0);

    Series out;
    out.label = "switching-ar1";
    out.values.reserve(static_cast<std::size_t>(config.horizon));
    for (int t = 1; t <= config.horizon; ++t) {
        const double eps = config.noise_std > 0.0 ? rng.normal(0.0, config.noise_std) : 0.0;
        if (t < t_switch) {
            y = config.a11 * y + config.a10 + eps;
        } else {
            y = config.a21 * y + config.a20 + eps;
        }
        out.values.push_back(y);
    }
    return out;
}

WindowDataset sliding_windows(const Series& series, int w) {
    validate_series(series);
    if (w < 2) {
        throw ConfigError("window size must be at least 2");
    }
    const std::size_t len = static_cast<std::size_t>(w) + 1;
    if (series.size() < len) {
        throw SeriesTooShort("series of length " + std::to_string(series.size()) +
                             " is shorter than one window of " + std::to_string(len) +
                             " points");
    }

    WindowDataset ds;
    const std::size_t count = series.size() - static_cast<std::size_t>(w);
    ds.windows.reserve(count);
    ds.meta.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        Series window;
        window.values.assign(series.values.begin() + static_cast<std::ptrdiff_t>(n),
                             series.values.begin() + static_cast<std::ptrdiff_t>(n + len));
        window.label = series.label;
        WindowMeta meta;
        meta.source = series.label;
        meta.start = static_cast<std::int64_t>(n) + 1;
        ds.push(std::move(window), std::move(meta));
    }
    return ds;
}

std::pair<WindowDataset, WindowDataset> train_test_split(const WindowDataset& ds,
                                                         std::size_t n_train) {
    validate_dataset(ds);
    if (n_train == 0 || n_train >= ds.size()) {
        throw BadSplit("train size " + std::to_string(n_train) +
                       " must leave both splits non-empty out of " +
                       std::to_string(ds.size()) + " windows");
    }
    std::pair<WindowDataset, WindowDataset> out;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (i < n_train) {
            out.first.push(ds.windows[i], ds.meta[i]);
        } else {
            out.second.push(ds.windows[i], ds.meta[i]);
        }
    }
    return out;
}

ShockConfig default_shock_config(const WindowDataset& reference, std::uint64_t seed) {
    validate_dataset(reference);
    if (reference.empty()) {
        throw EmptyDataset("cannot derive shock defaults from an empty dataset");
    }

    // pooled standard deviation over every sample of every window
    double sum = 0.0;
    std::size_t count = 0;
    for (const Series& w : reference.windows) {
        for (double v : w.values) {
            sum += v;
            ++count;
        }
    }
    const double mean = sum / static_cast<double>(count);
    double ss = 0.0;
    for (const Series& w : reference.windows) {
        for (double v : w.values) ss += (v - mean) * (v - mean);
    }
    const double sd = std::sqrt(ss / static_cast<double>(count));

    const int len = static_cast<int>(reference.window_length());
    ShockConfig shock;
    shock.amp_lo = -2.0 * sd;
    shock.amp_hi = 2.0 * sd;
    shock.shift_lo = len / 4;
    shock.shift_hi = (3 * len) / 4;
    shock.seed = seed;
    return shock;
}

Series perturb_with_step(const Series& window, const ShockConfig& shock, rng::Rng& rng) {
    validate_series(window);
    if (shock.amp_hi < shock.amp_lo || shock.shift_hi < shock.shift_lo) {
        throw ConfigError("shock ranges must be non-empty intervals");
    }
    if (shock.shift_lo < 0 || static_cast<std::size_t>(shock.shift_hi) >= window.size()) {
        throw ConfigError("shock shift range must lie within the window");
    }

    const double a = rng.uniform(shock.amp_lo, shock.amp_hi);
    const std::size_t k =
        static_cast<std::size_t>(rng.uniform_int(shock.shift_lo, shock.shift_hi));

    Series out = window;
    for (std::size_t t = k; t < out.size(); ++t) out.values[t] += a;
    return out;
}

WindowDataset perturb_dataset(const WindowDataset& ds, const ShockConfig& shock) {
    validate_dataset(ds);
    WindowDataset out;
    out.windows.reserve(ds.size());
    out.meta.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        rng::Rng rng(rng::substream_seed(shock.seed, i + 1));
        out.push(perturb_with_step(ds.windows[i], shock, rng), ds.meta[i]);
    }
    return out;
}

WindowDataset resolve_content(const ContentStrategy& strategy,
                              const WindowDataset& style_ds) {
    validate_dataset(style_ds);
    switch (strategy.kind) {
        case ContentStrategy::Kind::InSample:
            return style_ds;
        case ContentStrategy::Kind::Perturbed:
            return perturb_dataset(style_ds, strategy.shock);
        case ContentStrategy::Kind::External: {
            WindowDataset external = io::read_window_csv(strategy.external_path);
            if (external.window_length() != style_ds.window_length()) {
                throw LengthMismatch(
                    strategy.external_path + " has windows of length " +
                    std::to_string(external.window_length()) +
                    ", style windows have length " +
                    std::to_string(style_ds.window_length()));
            }
            return external;
        }
    }
    throw ConfigError("unknown content strategy");
}

WindowDataset generate_stylized_dataset(
    const WindowDataset& content, const WindowDataset& style, std::size_t n,
    const LossWeights& weights, const OptimizerConfig& opt, const FeatureConfig& fc,
    const TrendConfig& tc, std::uint64_t seed, int jobs,
    std::vector<std::pair<std::size_t, std::string>>* failures) {
    validate_dataset(content);
    validate_dataset(style);
    if (content.empty() || style.empty()) {
        throw EmptyDataset("content and style datasets must be non-empty");
    }
    if (content.window_length() != style.window_length()) {
        throw LengthMismatch("content windows have length " +
                             std::to_string(content.window_length()) +
                             ", style windows " +
                             std::to_string(style.window_length()));
    }
    if (n == 0) {
        throw ConfigError("requested dataset size must be positive");
    }

    struct Slot {
        bool ok = false;
        Series window;
        WindowMeta meta;
        std::string error;
    };
    std::vector<Slot> slots(n);

    auto run_sample = [&](std::size_t i) {
        const std::uint64_t sub = rng::substream_seed(seed, i + 1);
        rng::Rng rng(sub);
        const auto ci = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(content.size()) - 1));
        const auto si = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(style.size()) - 1));
        Slot& slot = slots[i];
        try {
            StylizationResult res = optimizer::style_time(
                content.windows[ci], style.windows[si], weights, opt, fc, tc);
            slot.window = std::move(res.stylized);
            slot.window.label = "stylized";
            slot.meta.source = "stylized";
            slot.meta.start = static_cast<std::int64_t>(i) + 1;
            slot.meta.has_lineage = true;
            slot.meta.content_idx = static_cast<std::int64_t>(ci);
            slot.meta.style_idx = static_cast<std::int64_t>(si);
            slot.meta.seed = sub;
            slot.ok = true;
        } catch (const Error& e) {
            slot.error = "sample " + std::to_string(i + 1) + ": " + e.what();
        }
    };

    const int workers = resolve_jobs(jobs, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) run_sample(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                    run_sample(i);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    WindowDataset out;
    out.windows.reserve(n);
    out.meta.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Slot& slot = slots[i];
        if (slot.ok) {
            out.push(std::move(slot.window), std::move(slot.meta));
        } else if (failures != nullptr) {
            failures->emplace_back(i + 1, slot.error);
        } else {
            throw Error(slot.error);
        }
    }
    return out;
}

Series augment_jitter(const Series& window, double sigma, rng::Rng& rng) {
    validate_series(window);
    if (sigma < 0.0) {
        throw ConfigError("jitter sigma must be nonnegative");
    }
    Series out = window;
    if (sigma == 0.0) return out;
    for (double& v : out.values) v += rng.normal(0.0, sigma);
    return out;
}

Series augment_flip(const Series& window) {
    validate_series(window);
    double mean = 0.0;
    for (double v : window.values) mean += v;
    mean /= static_cast<double>(window.size());

    Series out = window;
    for (double& v : out.values) v = 2.0 * mean - v;
    return out;
}

Series augment_time_warp(const Series& window, int knots, double warp_std,
                         rng::Rng& rng) {
    validate_series(window);
    if (knots < 2) {
        throw ConfigError("time warp needs at least 2 knots");
    }
    if (warp_std < 0.0) {
        throw ConfigError("warp std must be nonnegative");
    }

    const std::size_t n = window.size();
    const double horizon = static_cast<double>(n - 1);
    const std::size_t segs = static_cast<std::size_t>(knots) - 1;

    // knot positions in input time and their warped images
    std::vector<double> u(static_cast<std::size_t>(knots));
    for (std::size_t j = 0; j < u.size(); ++j) {
        u[j] = horizon * static_cast<double>(j) / static_cast<double>(segs);
    }
    std::vector<double> speed(segs);
    for (std::size_t j = 0; j < segs; ++j) {
        speed[j] = std::exp(warp_std * rng.normal(0.0, 1.0));
    }
    std::vector<double> v(u.size(), 0.0);
    for (std::size_t j = 1; j < u.size(); ++j) {
        v[j] = v[j - 1] + speed[j - 1] * (u[j] - u[j - 1]);
    }
    const double scale = horizon / v.back();
    for (double& x : v) x *= scale;
    v.front() = 0.0;
    v.back() = horizon;

    Series out = window;
    out.values[0] = window.values[0];  // endpoints are pinned exactly
    out.values[n - 1] = window.values[n - 1];
    for (std::size_t t = 1; t + 1 < n; ++t) {
        const double x = static_cast<double>(t);
        // locate the segment containing x and map through the warp
        std::size_t j = 1;
        while (j + 1 < u.size() && u[j] < x) ++j;
        const double frac = (x - u[j - 1]) / (u[j] - u[j - 1]);
        double warped = v[j - 1] + frac * (v[j] - v[j - 1]);

        if (warped <= 0.0) {
            out.values[t] = window.values[0];
            continue;
        }
        if (warped >= horizon) {
            out.values[t] = window.values[n - 1];
            continue;
        }
        const std::size_t lo = static_cast<std::size_t>(warped);
        const double w = warped - static_cast<double>(lo);
        out.values[t] = (1.0 - w) * window.values[lo] + w * window.values[lo + 1];
    }
    return out;
}

}  // namespace tstyle::datagen
