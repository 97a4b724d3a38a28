#pragma once

#include <string>
#include <vector>

#include "tstyle/datagen.hpp"
#include "tstyle/rng.hpp"
#include "tstyle/series.hpp"

namespace testutil {

inline tstyle::Series random_series(std::uint64_t seed, std::size_t n,
                                    double mean = 0.0, double sd = 1.0) {
    tstyle::rng::Rng rng(seed);
    tstyle::Series s;
    s.label = "random-" + std::to_string(seed);
    s.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) s.values.push_back(rng.normal(mean, sd));
    return s;
}

/// A window pair from the default switching AR(1) setup; i selects the seed.
inline std::pair<tstyle::Series, tstyle::Series> ar_window_pair(std::uint64_t i) {
    tstyle::SwitchingArConfig cfg;
    cfg.horizon = 200;
    cfg.seed = 9000 + i;
    const tstyle::Series series = tstyle::datagen::gen_switching_ar1(cfg);
    const tstyle::WindowDataset ds = tstyle::datagen::sliding_windows(series, 30);
    tstyle::rng::Rng pick(77 + i);
    const auto a = static_cast<std::size_t>(
        pick.uniform_int(0, static_cast<std::int64_t>(ds.size()) - 1));
    const auto b = static_cast<std::size_t>(
        pick.uniform_int(0, static_cast<std::int64_t>(ds.size()) - 1));
    return {ds.windows[a], ds.windows[b]};
}

inline tstyle::WindowDataset toy_windows(const std::vector<std::vector<double>>& rows,
                                         const std::string& label = "toy") {
    tstyle::WindowDataset ds;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        tstyle::WindowMeta meta;
        meta.source = label;
        meta.start = static_cast<std::int64_t>(i) + 1;
        ds.push(tstyle::Series(rows[i], label), meta);
    }
    return ds;
}

}  // namespace testutil
