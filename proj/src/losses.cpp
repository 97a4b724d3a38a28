#include "tstyle/losses.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "tstyle/autodiff.hpp"

namespace tstyle::losses {

namespace {

using autodiff::Tape;
using autodiff::Var;

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

void validate_weights(const LossWeights& w) {
    if (w.alpha < 0.0 || w.beta < 0.0 || w.gamma < 0.0) {
        throw ConfigError("loss weights must be nonnegative");
    }
    if (w.alpha == 0.0 && w.beta == 0.0 && w.gamma == 0.0) {
        throw ConfigError("at least one loss weight must be nonzero");
    }
}

void check_lengths(const Series& y, const LossContext& ctx) {
    if (y.size() != ctx.content_trend.size()) {
        throw LengthMismatch("series length " + std::to_string(y.size()) +
                             " does not match content trend length " +
                             std::to_string(ctx.content_trend.size()));
    }
}

// ---- tape-side feature pipeline -------------------------------------------
//
// Mirrors features.cpp step for step. Values computed here match the plain
// path to rounding; the finite-difference oracle in the tests pins the two
// paths together.

std::vector<Var> tape_rescale(const std::vector<Var>& y) {
    std::size_t imin = 0;
    std::size_t imax = 0;
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (y[i].value() < y[imin].value()) imin = i;
        if (y[i].value() > y[imax].value()) imax = i;
    }
    if (y[imax].value() <= y[imin].value()) {
        throw DegenerateSeries("constant series cannot be rescaled onto [1, 2]");
    }
    Var inv = 1.0 / (y[imax] - y[imin]);
    std::vector<Var> z;
    z.reserve(y.size());
    for (const Var& v : y) {
        z.push_back((v - y[imin]) * inv + 1.0);
    }
    return z;
}

std::vector<Var> tape_returns(const std::vector<Var>& y, const FeatureConfig& fc) {
    std::vector<Var> r;
    r.reserve(y.size() - 1);
    if (fc.return_kind == ReturnKind::Simple) {
        for (std::size_t t = 0; t + 1 < y.size(); ++t) r.push_back(y[t + 1] - y[t]);
        return r;
    }
    if (fc.positivity_policy == PositivityPolicy::Error) {
        for (const Var& v : y) {
            if (v.value() <= 0.0) {
                throw NonPositiveValue("log returns need positive values");
            }
        }
        std::vector<Var> logs;
        logs.reserve(y.size());
        for (const Var& v : y) logs.push_back(log(v));
        for (std::size_t t = 0; t + 1 < y.size(); ++t) r.push_back(logs[t + 1] - logs[t]);
        return r;
    }
    const std::vector<Var> z = tape_rescale(y);
    std::vector<Var> logs;
    logs.reserve(z.size());
    for (const Var& v : z) logs.push_back(log(v));
    for (std::size_t t = 0; t + 1 < z.size(); ++t) r.push_back(logs[t + 1] - logs[t]);
    return r;
}

struct TapeAcf {
    std::vector<Var> rho;  // lags 0..tau_max
    Var den;               // sum of squared deviations, reused by volatility
};

TapeAcf tape_acf(const std::vector<Var>& x, int tau_max) {
    const std::size_t n = x.size();
    Var m = sum(x) * (1.0 / static_cast<double>(n));

    std::vector<Var> d;
    d.reserve(n);
    for (const Var& v : x) d.push_back(v - m);

    Var den = square(d[0]);
    for (std::size_t t = 1; t < n; ++t) den = den + square(d[t]);
    if (den.value() <= 0.0) {
        throw DegenerateSeries("all values equal, autocorrelation undefined");
    }

    TapeAcf out{{}, den};
    out.rho.reserve(static_cast<std::size_t>(tau_max) + 1);
    for (int tau = 0; tau <= tau_max; ++tau) {
        const std::size_t off = static_cast<std::size_t>(tau);
        Var num = d[off] * d[0];
        for (std::size_t t = off + 1; t < n; ++t) num = num + d[t] * d[t - off];
        out.rho.push_back(num / den);
    }
    return out;
}

// Mean spectral magnitude via the DFT of the two-sided ACF. For a real
// symmetric sequence the transform reduces to the cosine sum
//   S_f = rho_0 + 2 * sum_tau rho_tau * cos(2*pi*f*tau/L),
// a linear map of the ACF, so the partials are plain constants.
Var tape_mean_psd(const std::vector<Var>& rho) {
    const std::size_t m = rho.size() - 1;
    const std::size_t len = 2 * m + 1;

    std::vector<double> cos_table(len);
    for (std::size_t j = 0; j < len; ++j) {
        cos_table[j] = std::cos(kTwoPi * static_cast<double>(j) / static_cast<double>(len));
    }

    Var acc_mean = rho[0] * 0.0;  // zero tied to the tape
    for (std::size_t f = 0; f < len; ++f) {
        Var s = rho[0];
        for (std::size_t tau = 1; tau <= m; ++tau) {
            s = fma_const(rho[tau], 2.0 * cos_table[(f * tau) % len], s);
        }
        acc_mean = acc_mean + abs_sign(s);
    }
    return acc_mean * (1.0 / static_cast<double>(len));
}

Var tape_style_loss(const std::vector<Var>& y, const LossContext& ctx) {
    const FeatureConfig& fc = ctx.feature_config;
    const StyleFeatures& target = ctx.style_features;
    if (fc.tau_max < 1 || static_cast<std::size_t>(fc.tau_max) + 3 > y.size()) {
        throw LagTooLarge("tau_max " + std::to_string(fc.tau_max) +
                          " needs a series of at least " +
                          std::to_string(fc.tau_max + 3) + " points");
    }

    const std::vector<Var> r = tape_returns(y, fc);
    TapeAcf racf = tape_acf(r, fc.tau_max);

    Var acf_term = square(racf.rho[1] - target.acf[0]);
    for (int tau = 2; tau <= fc.tau_max; ++tau) {
        acf_term = acf_term +
                   square(racf.rho[static_cast<std::size_t>(tau)] -
                          target.acf[static_cast<std::size_t>(tau) - 1]);
    }

    Var vol = sqrt(racf.den * (1.0 / static_cast<double>(r.size() - 1)));
    TapeAcf yacf = tape_acf(y, static_cast<int>(y.size()) - 2);
    Var mpsd = tape_mean_psd(yacf.rho);

    return acf_term * (1.0 / static_cast<double>(fc.tau_max)) +
           square(vol - target.volatility) + square(mpsd - target.mean_psd);
}

}  // namespace

LossContext make_context(const Series& content, const Series& style,
                         const LossWeights& weights, const FeatureConfig& fc,
                         const TrendConfig& tc) {
    validate_weights(weights);
    LossContext ctx;
    ctx.content_trend = features::extract_trend(content, tc);
    if (weights.beta != 0.0) {
        ctx.style_features = features::style_features(style, fc);
    }
    ctx.weights = weights;
    ctx.feature_config = fc;
    return ctx;
}

double content_loss(const Series& y, const LossContext& ctx) {
    check_lengths(y, ctx);
    double s = 0.0;
    for (std::size_t t = 0; t < y.size(); ++t) {
        const double d = y.values[t] - ctx.content_trend.values[t];
        s += d * d;
    }
    return s;
}

double style_distance(const StyleFeatures& a, const StyleFeatures& b) {
    if (a.acf.size() != b.acf.size()) {
        throw LengthMismatch("style features disagree on the number of ACF lags");
    }
    double acf_term = 0.0;
    for (std::size_t i = 0; i < a.acf.size(); ++i) {
        const double d = a.acf[i] - b.acf[i];
        acf_term += d * d;
    }
    const double dv = a.volatility - b.volatility;
    const double dp = a.mean_psd - b.mean_psd;
    return acf_term / static_cast<double>(a.acf.size()) + dv * dv + dp * dp;
}

double style_loss(const Series& y, const LossContext& ctx) {
    return style_distance(features::style_features(y, ctx.feature_config),
                          ctx.style_features);
}

double tv_loss(const Series& y) {
    if (y.size() < 2) {
        throw SeriesTooShort("total variation needs at least 2 points");
    }
    double s = 0.0;
    for (std::size_t t = 0; t + 1 < y.size(); ++t) {
        const double d = y.values[t + 1] - y.values[t];
        s += d * d;
    }
    return s;
}

LossBreakdown total_loss(const Series& y, const LossContext& ctx) {
    validate_weights(ctx.weights);
    validate_series(y);
    check_lengths(y, ctx);
    LossBreakdown out;
    out.content = content_loss(y, ctx);
    if (ctx.weights.beta != 0.0) {
        out.style = style_loss(y, ctx);
    }
    out.tv = tv_loss(y);
    out.total = ctx.weights.alpha * out.content + ctx.weights.beta * out.style +
                ctx.weights.gamma * out.tv;
    return out;
}

Gradient loss_gradient(const Series& y, const LossContext& ctx) {
    validate_weights(ctx.weights);
    validate_series(y);
    check_lengths(y, ctx);
    const std::size_t n = y.size();

    Tape tape;
    std::vector<Var> yv;
    yv.reserve(n);
    for (double v : y.values) yv.push_back(Var::input(tape, v));

    // content term
    Var content = square(yv[0] - ctx.content_trend.values[0]);
    for (std::size_t t = 1; t < n; ++t) {
        content = content + square(yv[t] - ctx.content_trend.values[t]);
    }

    // total variation term
    Var tv = square(yv[1] - yv[0]);
    for (std::size_t t = 1; t + 1 < n; ++t) {
        tv = tv + square(yv[t + 1] - yv[t]);
    }

    Var total = content * ctx.weights.alpha;
    if (ctx.weights.beta != 0.0) {
        total = fma_const(tape_style_loss(yv, ctx), ctx.weights.beta, total);
    }
    total = fma_const(tv, ctx.weights.gamma, total);

    const std::vector<double> adj = tape.reverse(total.index());
    Gradient g;
    g.values.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        g.values[t] = adj[static_cast<std::size_t>(yv[t].index())];
    }
    return g;
}

Gradient finite_difference_gradient(const LossContext& ctx, const Series& y, double h) {
    if (h <= 0.0) {
        throw ConfigError("finite difference step must be positive");
    }
    Gradient g;
    g.values.resize(y.size());
    Series probe = y;
    for (std::size_t t = 0; t < y.size(); ++t) {
        const double saved = probe.values[t];
        probe.values[t] = saved + h;
        const double up = total_loss(probe, ctx).total;
        probe.values[t] = saved - h;
        const double down = total_loss(probe, ctx).total;
        probe.values[t] = saved;
        g.values[t] = (up - down) / (2.0 * h);
    }
    return g;
}

}  // namespace tstyle::losses
