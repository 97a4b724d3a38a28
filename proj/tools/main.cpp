// Command-line front end for the time series style transfer toolkit.
//
// Subcommands: gen, window, stylize, augment, eval, replay. Every run
// writes a manifest next to its outputs (flat key=value lines, sorted)
// holding the raw argument vector and the fully resolved configuration;
// `replay` re-executes a manifest and reproduces the outputs byte for
// byte. Exit codes: 0 success, 2 usage or configuration error, 1 runtime
// or data error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tstyle/datagen.hpp"
#include "tstyle/io.hpp"
#include "tstyle/metrics.hpp"
#include "tstyle/version.hpp"

using namespace tstyle;

namespace {

int run_args(const std::vector<std::string>& args);

io::Manifest base_manifest(const std::string& command,
                           const std::vector<std::string>& args) {
    io::Manifest m;
    m["command"] = command;
    m["version"] = kVersion;
    for (std::size_t i = 0; i < args.size(); ++i) {
        char key[16];
        std::snprintf(key, sizeof(key), "argv.%03zu", i);
        m[key] = args[i];
    }
    return m;
}

std::string bool_str(bool v) { return v ? "true" : "false"; }

void parse_range(const std::string& text, double& lo, double& hi) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw ConfigError("range '" + text + "' must look like lo:hi");
    }
    try {
        lo = std::stod(text.substr(0, colon));
        hi = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw ConfigError("cannot parse range '" + text + "'");
    }
    if (hi < lo) {
        throw ConfigError("range '" + text + "' is empty");
    }
}

void parse_range_int(const std::string& text, int& lo, int& hi) {
    double dlo, dhi;
    parse_range(text, dlo, dhi);
    lo = static_cast<int>(dlo);
    hi = static_cast<int>(dhi);
}

// ---- gen -------------------------------------------------------------------

struct GenCmd {
    std::string kind;
    SwitchingArConfig cfg;
    std::optional<double> y0;
    std::string out;
    bool quiet = false;
};

int run_gen(const GenCmd& cmd, const std::vector<std::string>& args) {
    SwitchingArConfig cfg = cmd.cfg;
    cfg.y0 = cmd.y0;
    const Series series = datagen::gen_switching_ar1(cfg);
    io::write_series_csv(series, cmd.out);

    io::Manifest m = base_manifest("gen", args);
    m["cfg.kind"] = cmd.kind;
    m["cfg.a10"] = io::format_double(cfg.a10);
    m["cfg.a11"] = io::format_double(cfg.a11);
    m["cfg.a20"] = io::format_double(cfg.a20);
    m["cfg.a21"] = io::format_double(cfg.a21);
    m["cfg.t"] = std::to_string(cfg.horizon);
    m["cfg.switch_frac"] = io::format_double(cfg.switch_fraction);
    m["cfg.noise_std"] = io::format_double(cfg.noise_std);
    m["cfg.seed"] = std::to_string(cfg.seed);
    if (cfg.y0) m["cfg.y0"] = io::format_double(*cfg.y0);
    m["cfg.out"] = cmd.out;
    io::write_manifest(m, cmd.out + ".manifest");

    if (!cmd.quiet) {
        std::cout << "wrote " << series.size() << " points to " << cmd.out << "\n";
    }
    return 0;
}

// ---- window ----------------------------------------------------------------

struct WindowCmd {
    std::string in;
    std::string column = "0";
    int w = 30;
    int train = 2400;
    std::string out_prefix;
    bool quiet = false;
};

int run_window(const WindowCmd& cmd, const std::vector<std::string>& args) {
    if (cmd.train < 1) {
        throw BadSplit("--train must be positive");
    }
    const Series series = io::ingest_csv(cmd.in, cmd.column);
    const WindowDataset all = datagen::sliding_windows(series, cmd.w);
    const auto [train, test] =
        datagen::train_test_split(all, static_cast<std::size_t>(cmd.train));

    const std::string train_path = cmd.out_prefix + ".train.csv";
    const std::string test_path = cmd.out_prefix + ".test.csv";
    io::write_window_csv(train, train_path);
    io::write_window_csv(test, test_path);

    io::Manifest m = base_manifest("window", args);
    m["cfg.in"] = cmd.in;
    m["cfg.column"] = cmd.column;
    m["cfg.w"] = std::to_string(cmd.w);
    m["cfg.train"] = std::to_string(cmd.train);
    m["cfg.out_prefix"] = cmd.out_prefix;
    io::write_manifest(m, cmd.out_prefix + ".manifest");

    if (!cmd.quiet) {
        std::cout << "wrote " << train.size() << " train + " << test.size()
                  << " test windows to " << train_path << " / " << test_path << "\n";
    }
    return 0;
}

// ---- stylize ---------------------------------------------------------------

struct StylizeCmd {
    std::string content;
    std::string style;
    int n = 0;
    LossWeights weights;
    OptimizerConfig opt;
    FeatureConfig fc;
    TrendConfig tc;
    std::string return_kind = "log";
    std::string positivity = "rescale";
    std::string edge_policy = "shrink";
    bool last_iterate = false;
    bool perturb = false;
    std::string shock_amp;    // "lo:hi", empty means +-2 sd default
    std::string shock_shift;  // "lo:hi", empty means middle half
    std::uint64_t seed = 0;
    int jobs = 0;
    bool skip_errors = false;
    std::string out;
    bool quiet = false;
};

int run_stylize(const StylizeCmd& cmd, const std::vector<std::string>& args) {
    if (cmd.n < 1) {
        throw ConfigError("--n must be positive");
    }

    StylizeCmd c = cmd;
    c.fc.return_kind = cmd.return_kind == "simple" ? ReturnKind::Simple : ReturnKind::Log;
    c.fc.positivity_policy = cmd.positivity == "error" ? PositivityPolicy::Error
                                                       : PositivityPolicy::AffineRescale;
    c.tc.edge_policy =
        cmd.edge_policy == "reflect" ? EdgePolicy::Reflect : EdgePolicy::Shrink;
    c.opt.return_best = !cmd.last_iterate;

    const WindowDataset style = io::read_window_csv(cmd.style);

    ContentStrategy strategy;
    strategy.kind = (cmd.content == cmd.style) ? ContentStrategy::Kind::InSample
                                               : ContentStrategy::Kind::External;
    strategy.external_path = cmd.content;
    WindowDataset content = datagen::resolve_content(strategy, style);

    ShockConfig shock;
    if (c.perturb) {
        shock = datagen::default_shock_config(content, rng::substream_seed(c.seed, 0));
        if (!cmd.shock_amp.empty()) {
            parse_range(cmd.shock_amp, shock.amp_lo, shock.amp_hi);
        }
        if (!cmd.shock_shift.empty()) {
            parse_range_int(cmd.shock_shift, shock.shift_lo, shock.shift_hi);
        }
        content = datagen::perturb_dataset(content, shock);
    }

    std::vector<std::pair<std::size_t, std::string>> failures;
    const WindowDataset out = datagen::generate_stylized_dataset(
        content, style, static_cast<std::size_t>(c.n), c.weights, c.opt, c.fc, c.tc,
        c.seed, c.jobs, c.skip_errors ? &failures : nullptr);
    for (const auto& [index, message] : failures) {
        std::cerr << "skipped " << message << "\n";
    }
    io::write_window_csv(out, cmd.out);

    io::Manifest m = base_manifest("stylize", args);
    m["cfg.content"] = cmd.content;
    m["cfg.style"] = cmd.style;
    m["cfg.n"] = std::to_string(cmd.n);
    m["cfg.alpha"] = io::format_double(c.weights.alpha);
    m["cfg.beta"] = io::format_double(c.weights.beta);
    m["cfg.gamma"] = io::format_double(c.weights.gamma);
    m["cfg.iters"] = std::to_string(c.opt.iterations);
    m["cfg.lr"] = io::format_double(c.opt.base_lr);
    m["cfg.rms_decay"] = io::format_double(c.opt.rms_decay);
    m["cfg.rms_eps"] = io::format_double(c.opt.rms_epsilon);
    m["cfg.lr_anneal"] = io::format_double(c.opt.lr_anneal);
    m["cfg.band"] = io::format_double(c.opt.band_width);
    m["cfg.return_best"] = bool_str(c.opt.return_best);
    m["cfg.tau_max"] = std::to_string(c.fc.tau_max);
    m["cfg.return_kind"] = cmd.return_kind;
    m["cfg.positivity"] = cmd.positivity;
    m["cfg.trend_window"] = std::to_string(c.tc.window);
    m["cfg.edge_policy"] = cmd.edge_policy;
    m["cfg.perturb"] = bool_str(c.perturb);
    if (c.perturb) {
        m["cfg.shock_amp"] =
            io::format_double(shock.amp_lo) + ":" + io::format_double(shock.amp_hi);
        m["cfg.shock_shift"] =
            std::to_string(shock.shift_lo) + ":" + std::to_string(shock.shift_hi);
    }
    m["cfg.seed"] = std::to_string(c.seed);
    m["cfg.jobs"] = std::to_string(c.jobs);
    m["cfg.skip_errors"] = bool_str(c.skip_errors);
    m["cfg.out"] = cmd.out;
    io::write_manifest(m, cmd.out + ".manifest");

    if (!cmd.quiet) {
        std::cout << "wrote " << out.size() << " stylized windows to " << cmd.out
                  << "\n";
    }
    return 0;
}

// ---- augment ---------------------------------------------------------------

struct AugmentCmd {
    std::string in;
    std::string method;
    double sigma = 0.03;
    int knots = 4;
    double warp_std = 0.2;
    std::uint64_t seed = 0;
    std::string out;
    bool quiet = false;
};

int run_augment(const AugmentCmd& cmd, const std::vector<std::string>& args) {
    const WindowDataset in = io::read_window_csv(cmd.in);

    WindowDataset out;
    for (std::size_t i = 0; i < in.size(); ++i) {
        rng::Rng rng(rng::substream_seed(cmd.seed, i + 1));
        Series w;
        if (cmd.method == "jitter") {
            w = datagen::augment_jitter(in.windows[i], cmd.sigma, rng);
        } else if (cmd.method == "flip") {
            w = datagen::augment_flip(in.windows[i]);
        } else {
            w = datagen::augment_time_warp(in.windows[i], cmd.knots, cmd.warp_std, rng);
        }
        out.push(std::move(w), in.meta[i]);
    }
    io::write_window_csv(out, cmd.out);

    io::Manifest m = base_manifest("augment", args);
    m["cfg.in"] = cmd.in;
    m["cfg.method"] = cmd.method;
    if (cmd.method == "jitter") {
        m["cfg.sigma"] = io::format_double(cmd.sigma);
    }
    if (cmd.method == "timewarp") {
        m["cfg.knots"] = std::to_string(cmd.knots);
        m["cfg.warp_std"] = io::format_double(cmd.warp_std);
    }
    m["cfg.seed"] = std::to_string(cmd.seed);
    m["cfg.out"] = cmd.out;
    io::write_manifest(m, cmd.out + ".manifest");

    if (!cmd.quiet) {
        std::cout << "wrote " << out.size() << " " << cmd.method << " windows to "
                  << cmd.out << "\n";
    }
    return 0;
}

// ---- eval ------------------------------------------------------------------

struct EvalCmd {
    std::string real_train;
    std::string real_test;
    std::string synth;
    int k = 5;
    double ridge = 1e-6;
    int augment_level = -1;  // <0 means plain TSTR
    std::string out;
    bool quiet = false;
};

int run_eval(const EvalCmd& cmd, const std::vector<std::string>& args) {
    const WindowDataset train = io::read_window_csv(cmd.real_train);
    const WindowDataset test = io::read_window_csv(cmd.real_test);
    const WindowDataset synth = io::read_window_csv(cmd.synth);

    PrMetricConfig pr_cfg;
    pr_cfg.k = cmd.k;
    const EvalReport report = metrics::evaluate(train, test, synth, pr_cfg, cmd.ridge);

    std::vector<std::pair<std::string, double>> fields{
        {"precision", report.precision},
        {"recall", report.recall},
        {"f_score", report.f_score},
        {"authenticity", report.authenticity},
    };
    if (cmd.augment_level >= 0) {
        // augmented TSTR: real training windows plus the first L synthetic ones
        if (static_cast<std::size_t>(cmd.augment_level) > synth.size()) {
            throw ConfigError("--augment-level exceeds the synthetic dataset size");
        }
        WindowDataset augmented = train;
        for (std::size_t i = 0; i < static_cast<std::size_t>(cmd.augment_level); ++i) {
            augmented.push(synth.windows[i], synth.meta[i]);
        }
        const double aug_mae =
            metrics::forecast_mae(metrics::fit_forecaster(augmented, cmd.ridge), test);
        fields.emplace_back("aug_mae", aug_mae);
    } else {
        fields.emplace_back("tstr_mae", report.tstr_mae);
    }
    fields.emplace_back("trtr_mae", report.trtr_mae);
    io::write_report(fields, cmd.out);

    io::Manifest m = base_manifest("eval", args);
    m["cfg.real_train"] = cmd.real_train;
    m["cfg.real_test"] = cmd.real_test;
    m["cfg.synth"] = cmd.synth;
    m["cfg.k"] = std::to_string(cmd.k);
    m["cfg.ridge"] = io::format_double(cmd.ridge);
    if (cmd.augment_level >= 0) {
        m["cfg.augment_level"] = std::to_string(cmd.augment_level);
    }
    m["cfg.out"] = cmd.out;
    io::write_manifest(m, cmd.out + ".manifest");

    if (!cmd.quiet) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            std::cout << (i ? " " : "") << fields[i].first << "="
                      << io::format_double(fields[i].second);
        }
        std::cout << " -> " << cmd.out << "\n";
    }
    return 0;
}

// ---- replay ----------------------------------------------------------------

int run_replay(const std::string& manifest_path) {
    const io::Manifest m = io::read_manifest(manifest_path);
    std::vector<std::string> args;
    for (const auto& [key, value] : m) {
        if (key.rfind("argv.", 0) == 0) args.push_back(value);  // keys sort numerically
    }
    if (args.empty()) {
        throw ConfigError("manifest " + manifest_path + " has no argv entries");
    }
    return run_args(args);
}

// ---- dispatch --------------------------------------------------------------

int run_args(const std::vector<std::string>& args) {
    CLI::App app{"time series style transfer toolkit"};
    app.require_subcommand(1);

    GenCmd gen;
    CLI::App* gen_app = app.add_subcommand("gen", "generate a synthetic series");
    gen_app->add_option("kind", gen.kind, "generator kind")
        ->required()
        ->check(CLI::IsMember({"switching-ar1"}));
    gen_app->add_option("--t", gen.cfg.horizon, "series length");
    gen_app->add_option("--a10", gen.cfg.a10, "regime 1 intercept");
    gen_app->add_option("--a11", gen.cfg.a11, "regime 1 slope");
    gen_app->add_option("--a20", gen.cfg.a20, "regime 2 intercept");
    gen_app->add_option("--a21", gen.cfg.a21, "regime 2 slope");
    gen_app->add_option("--switch-frac", gen.cfg.switch_fraction, "regime switch point");
    gen_app->add_option("--noise-std", gen.cfg.noise_std, "innovation std");
    gen_app->add_option("--y0", gen.y0, "fixed initial value (default: drawn)");
    gen_app->add_option("--seed", gen.cfg.seed, "master seed");
    gen_app->add_option("--out", gen.out, "output series CSV")->required();
    gen_app->add_flag("--quiet", gen.quiet, "suppress the summary line");

    WindowCmd window;
    CLI::App* window_app =
        app.add_subcommand("window", "slice a series into train/test windows");
    window_app->add_option("--in", window.in, "input series CSV")->required();
    window_app->add_option("--column", window.column, "column name or index");
    window_app->add_option("--w", window.w, "window size (windows have w+1 points)");
    window_app->add_option("--train", window.train, "number of training windows");
    window_app->add_option("--out-prefix", window.out_prefix, "output prefix")
        ->required();
    window_app->add_flag("--quiet", window.quiet, "suppress the summary line");

    StylizeCmd stylize;
    CLI::App* stylize_app =
        app.add_subcommand("stylize", "generate a stylized window dataset");
    stylize_app->add_option("--content", stylize.content, "content window CSV")
        ->required();
    stylize_app->add_option("--style", stylize.style, "style window CSV")->required();
    stylize_app->add_option("--n", stylize.n, "number of windows to generate")
        ->required();
    stylize_app->add_option("--alpha", stylize.weights.alpha, "content weight");
    stylize_app->add_option("--beta", stylize.weights.beta, "style weight");
    stylize_app->add_option("--gamma", stylize.weights.gamma, "total variation weight");
    stylize_app->add_option("--iters", stylize.opt.iterations, "gradient steps");
    stylize_app->add_option("--lr", stylize.opt.base_lr, "base learning rate");
    stylize_app->add_option("--rms-decay", stylize.opt.rms_decay, "rms decay");
    stylize_app->add_option("--rms-eps", stylize.opt.rms_epsilon, "rms epsilon");
    stylize_app->add_option("--lr-anneal", stylize.opt.lr_anneal,
                            "final/initial learning rate ratio (1 = constant)");
    stylize_app->add_option("--band", stylize.opt.band_width,
                            "normalized optimization band width (0 = raw units)");
    stylize_app->add_flag("--last-iterate", stylize.last_iterate,
                          "return the final iterate instead of the best");
    stylize_app->add_option("--tau-max", stylize.fc.tau_max, "autocorrelation lags");
    stylize_app->add_option("--return-kind", stylize.return_kind, "log|simple")
        ->check(CLI::IsMember({"log", "simple"}));
    stylize_app->add_option("--positivity", stylize.positivity, "rescale|error")
        ->check(CLI::IsMember({"rescale", "error"}));
    stylize_app->add_option("--trend-window", stylize.tc.window, "trend filter width");
    stylize_app->add_option("--edge-policy", stylize.edge_policy, "shrink|reflect")
        ->check(CLI::IsMember({"shrink", "reflect"}));
    stylize_app->add_flag("--perturb", stylize.perturb,
                          "shock the content windows with random steps");
    stylize_app->add_option("--shock-amp", stylize.shock_amp,
                            "shock amplitude range lo:hi");
    stylize_app->add_option("--shock-shift", stylize.shock_shift,
                            "shock position range lo:hi");
    stylize_app->add_option("--seed", stylize.seed, "master seed");
    stylize_app->add_option("--jobs", stylize.jobs, "worker threads (0 = all cores)");
    stylize_app->add_flag("--skip-errors", stylize.skip_errors,
                          "log per-sample failures instead of aborting");
    stylize_app->add_option("--out", stylize.out, "output window CSV")->required();
    stylize_app->add_flag("--quiet", stylize.quiet, "suppress the summary line");

    AugmentCmd augment;
    CLI::App* augment_app =
        app.add_subcommand("augment", "apply a baseline augmentation");
    augment_app->add_option("--in", augment.in, "input window CSV")->required();
    augment_app->add_option("--method", augment.method, "jitter|flip|timewarp")
        ->required()
        ->check(CLI::IsMember({"jitter", "flip", "timewarp"}));
    augment_app->add_option("--sigma", augment.sigma, "jitter noise std");
    augment_app->add_option("--knots", augment.knots, "time warp knots");
    augment_app->add_option("--warp-std", augment.warp_std, "time warp strength");
    augment_app->add_option("--seed", augment.seed, "master seed");
    augment_app->add_option("--out", augment.out, "output window CSV")->required();
    augment_app->add_flag("--quiet", augment.quiet, "suppress the summary line");

    EvalCmd eval;
    CLI::App* eval_app = app.add_subcommand("eval", "evaluate a synthetic dataset");
    eval_app->add_option("--real-train", eval.real_train, "real training windows")
        ->required();
    eval_app->add_option("--real-test", eval.real_test, "real held-out windows")
        ->required();
    eval_app->add_option("--synth", eval.synth, "synthetic windows")->required();
    eval_app->add_option("--k", eval.k, "nearest-neighbor rank");
    eval_app->add_option("--ridge", eval.ridge, "forecaster ridge penalty");
    eval_app->add_option("--augment-level", eval.augment_level,
                         "augmented TSTR with this many synthetic windows");
    eval_app->add_option("--out", eval.out, "output report (.csv or .json)")
        ->required();
    eval_app->add_flag("--quiet", eval.quiet, "suppress the summary line");

    std::string manifest_path;
    CLI::App* replay_app = app.add_subcommand("replay", "re-run a recorded manifest");
    replay_app->add_option("manifest", manifest_path, "manifest file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);  // CLI11 consumes the vector form back to front
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    }

    if (*gen_app) return run_gen(gen, args);
    if (*window_app) return run_window(window, args);
    if (*stylize_app) return run_stylize(stylize, args);
    if (*augment_app) return run_augment(augment, args);
    if (*eval_app) return run_eval(eval, args);
    return run_replay(manifest_path);
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return run_args(args);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const BadSplit& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
