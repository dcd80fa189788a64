#include "returnlab/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "returnlab/complexity.hpp"
#include "returnlab/distribution.hpp"
#include "returnlab/errors.hpp"
#include "returnlab/horizons.hpp"
#include "returnlab/infoflow.hpp"
#include "returnlab/market_data.hpp"
#include "returnlab/report.hpp"
#include "returnlab/svg.hpp"
#include "returnlab/version.hpp"

namespace fs = std::filesystem;

namespace returnlab {

namespace {

struct CommonOpts {
    std::string in;
    std::string out = "reports";
    std::string from;
    std::string to;
    std::string format = "json";
};

struct LoadedInput {
    DailySeries series;
    std::string digest;
};

Date parse_date_flag(const std::string& text, const char* flag) {
    const auto date = Date::parse(text);
    if (!date) throw Error(std::string(flag) + ": expected ISO-8601 date, got '" + text + "'");
    return *date;
}

LoadedInput load_input(const CommonOpts& opts) {
    std::ifstream in(opts.in, std::ios::binary);
    if (!in) throw MalformedRow("cannot open " + opts.in);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    IngestConfig config;
    if (!opts.from.empty()) config.from = parse_date_flag(opts.from, "--from");
    if (!opts.to.empty()) config.to = parse_date_flag(opts.to, "--to");
    LoadedInput loaded{ingest_csv_text(bytes, config), content_digest(bytes)};
    if (loaded.series.size() == 0) throw EmptyResult("no rows after --from/--to filtering");
    return loaded;
}

RunManifest make_manifest(const std::string& command, const CommonOpts& opts,
                          const std::string& digest, Json extra_params) {
    RunManifest m;
    m.command = command;
    m.parameters["in"] = opts.in;
    m.parameters["out"] = opts.out;
    if (!opts.from.empty()) m.parameters["from"] = opts.from;
    if (!opts.to.empty()) m.parameters["to"] = opts.to;
    m.parameters["format"] = opts.format;
    for (auto& [key, value] : extra_params.items()) m.parameters[key] = value;
    m.input_digest = digest;
    m.artifact_version = kArtifactVersion;
    return m;
}

void write_file(const fs::path& path, const std::string& bytes) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << bytes;
}

void write_json(const CommonOpts& opts, const std::string& name, const Json& body) {
    write_file(fs::path(opts.out) / (name + ".json"), body.dump(2) + "\n");
}

// Parses "0.1,2" or "1..5" style order lists.
std::vector<double> parse_q_list(const std::string& text) {
    std::vector<double> qs;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const auto dots = token.find("..");
        if (dots != std::string::npos) {
            const int lo = std::stoi(token.substr(0, dots));
            const int hi = std::stoi(token.substr(dots + 2));
            if (lo > hi) throw Error("bad q range '" + token + "'");
            for (int q = lo; q <= hi; ++q) qs.push_back(q);
        } else {
            size_t used = 0;
            const double q = std::stod(token, &used);
            if (used != token.size()) throw Error("bad q '" + token + "'");
            qs.push_back(q);
        }
    }
    if (qs.empty()) throw Error("empty q list");
    return qs;
}

// Series selector shared by the complexity subcommands.
std::vector<double> select_series(const DailySeries& series, const std::string& which) {
    if (which == "pe") {
        const auto start = series.pe_start();
        if (!start) throw NoPeCoverage("--series pe: input has no pe column values");
        std::vector<double> pe;
        pe.reserve(series.size() - *start);
        for (size_t i = *start; i < series.size(); ++i) pe.push_back(*series.pe[i]);
        return pe;
    }
    if (which == "close") return series.close;
    if (which == "returns") {
        return forward_returns(series, HorizonSpec{"1d", 1}).returns;
    }
    throw Error("--series must be pe, close, or returns");
}

// --- per-command payload builders ------------------------------------------

Json returns_payload(const DailySeries& series, const std::vector<HorizonSpec>& ladder,
                     bool include_returns) {
    Json horizons = Json::array();
    std::vector<HorizonSummary> summaries;
    for (const auto& spec : ladder) {
        Json row;
        row["label"] = spec.label;
        row["days"] = spec.days;
        try {
            const auto set = forward_returns(series, spec);
            const auto pmf = build_pmf(set.returns);
            const auto summary = horizon_summary(set, pmf);
            summaries.push_back(summary);
            row["n"] = set.returns.size();
            row["summary"] = to_json(summary);
            row["pmf"] = to_json(pmf);
            row["asymmetry"] = to_json(asymmetry(pmf));
            if (include_returns) {
                Json values = Json::array();
                for (double r : set.returns) values.push_back(json_number(r));
                row["returns"] = values;
            }
        } catch (const Error& e) {
            row["error"] = e.what();
        }
        horizons.push_back(row);
    }
    Json j;
    j["horizons"] = horizons;
    const auto trap = trapping_horizon(summaries);
    j["trapping_horizon"] = trap ? Json(trap->label) : Json(nullptr);
    return j;
}

std::vector<HorizonSummary> summaries_from_payload(const DailySeries& series,
                                                   const std::vector<HorizonSpec>& ladder) {
    std::vector<HorizonSummary> summaries;
    for (const auto& spec : ladder) {
        try {
            const auto set = forward_returns(series, spec);
            summaries.push_back(horizon_summary(set, build_pmf(set.returns)));
        } catch (const Error&) {
        }
    }
    return summaries;
}

Json cagr_payload(const DailySeries& series, int max_years, std::vector<CagrSummary>& rows) {
    Json arr = Json::array();
    for (int years = 1; years <= max_years; ++years) {
        try {
            const auto summary = cagr_summary(series, years);
            rows.push_back(summary);
            arr.push_back(to_json(summary));
        } catch (const SeriesTooShort&) {
            break;  // longer horizons cannot fit either
        }
    }
    if (rows.empty()) throw SeriesTooShort("cagr: series shorter than one trading year");
    Json j;
    j["cagr"] = arr;
    return j;
}

Json pmf_payload_for(const std::vector<double>& samples, std::span<const double> thresholds) {
    const auto pmf = build_pmf(samples);
    Json j;
    j["pmf"] = to_json(pmf);
    j["stats"] = to_json(pmf_stats(pmf, samples, thresholds));
    j["asymmetry"] = to_json(asymmetry(pmf));
    return j;
}

struct PipelineStatus {
    Json stages = Json::array();
    bool hard_failure = false;

    void ok(const std::string& stage) {
        Json s;
        s["stage"] = stage;
        s["status"] = "ok";
        stages.push_back(s);
    }
    void skipped(const std::string& stage, const std::string& why) {
        Json s;
        s["stage"] = stage;
        s["status"] = "skipped";
        s["reason"] = why;
        stages.push_back(s);
    }
};

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Multi-horizon return distribution and complexity analytics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kArtifactVersion);

    CommonOpts opts;
    std::string horizons_flag = "1d,1w,2w,1m,3m,6m,1y..12y";
    std::string q_flag;
    int dim = 5;
    int delay = 1;
    int sampen_m = 2;
    double sampen_r = 0.2;
    int perm_order = 5;
    int history_k = 1;
    int max_lag = 50;
    int max_years = 7;
    int cagr_years = 12;
    int neighbors = 0;
    int fit_order = 1;
    std::string series_flag = "pe";
    bool te_both = false;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--in", opts.in, "input CSV (date,close[,pe])")->required();
        cmd->add_option("--out", opts.out, "output directory");
        cmd->add_option("--from", opts.from, "first date to keep (YYYY-MM-DD)");
        cmd->add_option("--to", opts.to, "last date to keep (YYYY-MM-DD)");
        cmd->add_option("--format", opts.format, "report format")
            ->check(CLI::IsMember({"json", "csv", "svg"}));
    };

    auto* c_ingest = app.add_subcommand("ingest-check", "validate a CSV and report coverage");
    add_common(c_ingest);
    auto* c_returns = app.add_subcommand("returns", "forward returns over the horizon ladder");
    add_common(c_returns);
    c_returns->add_option("--horizons", horizons_flag, "horizon list, e.g. 1d,1w,1y..12y");
    auto* c_cagr = app.add_subcommand("cagr", "per-window CAGR summaries by holding period");
    add_common(c_cagr);
    c_cagr->add_option("--max-years", cagr_years, "longest holding period");
    auto* c_pmf = app.add_subcommand("pmf", "FD return PMFs at the requested horizons");
    add_common(c_pmf);
    c_pmf->add_option("--horizons", horizons_flag, "horizon list");
    auto* c_pepmf = app.add_subcommand("pe-pmf", "FD PMF of the daily P/E ratio");
    add_common(c_pepmf);
    auto* c_pemonthly = app.add_subcommand("pe-monthly", "month-wise P/E PMFs");
    add_common(c_pemonthly);
    auto* c_entropy = app.add_subcommand("entropy", "entropy suite for one series");
    add_common(c_entropy);
    c_entropy->add_option("--series", series_flag, "pe, close, or returns");
    c_entropy->add_option("--q", q_flag, "Tsallis q list (default 0.1,2)");
    c_entropy->add_option("--m", sampen_m, "sample-entropy template length");
    c_entropy->add_option("--r", sampen_r, "sample-entropy tolerance as a std fraction");
    c_entropy->add_option("--order", perm_order, "permutation-entropy order");
    c_entropy->add_option("--delay", delay, "permutation-entropy delay");
    auto* c_hurst = app.add_subcommand("hurst", "generalized Hurst exponents");
    add_common(c_hurst);
    c_hurst->add_option("--series", series_flag, "pe, close, or returns");
    c_hurst->add_option("--q", q_flag, "moment orders (default 1..5)");
    auto* c_lyap = app.add_subcommand("lyapunov", "Lyapunov spectrum, KS entropy, KY dimension");
    add_common(c_lyap);
    c_lyap->add_option("--series", series_flag, "pe, close, or returns");
    c_lyap->add_option("--dim", dim, "embedding dimension");
    c_lyap->add_option("--delay", delay, "embedding delay");
    c_lyap->add_option("--neighbors", neighbors, "local-fit neighbor count (0 = 2*dim+2)");
    c_lyap->add_option("--fit-order", fit_order, "local map order, 1 or 2");
    auto* c_profile = app.add_subcommand("profile", "SNE / H(2) / LLE per horizon");
    add_common(c_profile);
    c_profile->add_option("--horizons", horizons_flag, "horizon list");
    c_profile->add_option("--dim", dim, "embedding dimension for the LLE");
    c_profile->add_option("--delay", delay, "embedding delay");
    auto* c_mi = app.add_subcommand("mi", "mutual information, P/E vs next-day return");
    add_common(c_mi);
    auto* c_nmi = app.add_subcommand("nmi", "lagged normalized mutual information");
    add_common(c_nmi);
    c_nmi->add_option("--max-lag", max_lag, "largest lag");
    auto* c_te = app.add_subcommand("te", "transfer entropy, P/E vs next-day return");
    add_common(c_te);
    c_te->add_option("--k", history_k, "history length");
    c_te->add_flag("--both", te_both, "report both directions");
    auto* c_cond = app.add_subcommand("conditional", "P/E-band conditional return cells");
    add_common(c_cond);
    c_cond->add_option("--max-years", max_years, "longest holding period");
    auto* c_all = app.add_subcommand("report-all", "full pipeline over one CSV");
    add_common(c_all);
    c_all->add_option("--horizons", horizons_flag, "horizon list");
    c_all->add_option("--max-lag", max_lag, "largest NMI lag");
    c_all->add_option("--max-years", max_years, "conditional holding-period cap");
    c_all->add_option("--dim", dim, "Lyapunov embedding dimension");
    c_all->add_option("--delay", delay, "Lyapunov embedding delay");
    c_all->add_option("--k", history_k, "transfer-entropy history length");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("returnlab");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const bool want_csv = opts.format == "csv";
        const bool want_svg = opts.format == "svg";

        if (c_ingest->parsed()) {
            const auto loaded = load_input(opts);
            Json j;
            j["manifest"] = to_json(make_manifest("ingest-check", opts, loaded.digest, {}));
            j["rows"] = loaded.series.size();
            j["first_date"] = loaded.series.dates.front().to_string();
            j["last_date"] = loaded.series.dates.back().to_string();
            const auto pe_start = loaded.series.pe_start();
            j["pe_coverage_start"] =
                pe_start ? Json(loaded.series.dates[*pe_start].to_string()) : Json(nullptr);
            write_json(opts, "ingest_check", j);
        } else if (c_returns->parsed()) {
            const auto loaded = load_input(opts);
            const auto ladder = parse_horizons(horizons_flag);
            Json params;
            params["horizons"] = horizons_flag;
            Json j;
            j["manifest"] = to_json(make_manifest("returns", opts, loaded.digest, params));
            j.update(returns_payload(loaded.series, ladder, true));
            write_json(opts, "returns", j);
            if (want_csv) {
                write_file(fs::path(opts.out) / "returns.csv",
                           horizon_summary_csv(summaries_from_payload(loaded.series, ladder)));
            }
            if (want_svg) {
                write_file(fs::path(opts.out) / "returns.svg",
                           emit_svg_horizons(summaries_from_payload(loaded.series, ladder),
                                             "Min / max / mode return by horizon"));
            }
        } else if (c_cagr->parsed()) {
            const auto loaded = load_input(opts);
            Json params;
            params["max_years"] = cagr_years;
            std::vector<CagrSummary> rows;
            Json j;
            j["manifest"] = to_json(make_manifest("cagr", opts, loaded.digest, params));
            j.update(cagr_payload(loaded.series, cagr_years, rows));
            write_json(opts, "cagr", j);
            if (want_csv) write_file(fs::path(opts.out) / "cagr.csv", cagr_table_csv(rows));
        } else if (c_pmf->parsed()) {
            const auto loaded = load_input(opts);
            const auto ladder = parse_horizons(horizons_flag);
            Json params;
            params["horizons"] = horizons_flag;
            Json j;
            j["manifest"] = to_json(make_manifest("pmf", opts, loaded.digest, params));
            Json per = Json::array();
            for (const auto& spec : ladder) {
                Json row;
                row["label"] = spec.label;
                row["days"] = spec.days;
                try {
                    const auto set = forward_returns(loaded.series, spec);
                    row.update(pmf_payload_for(set.returns, {}));
                    if (want_svg) {
                        const auto pmf = build_pmf(set.returns);
                        write_file(fs::path(opts.out) / ("pmf_" + spec.label + ".svg"),
                                   emit_svg_pmf(pmf, pmf_stats(pmf, set.returns),
                                                "Return PMF, horizon " + spec.label));
                    }
                } catch (const Error& e) {
                    row["error"] = e.what();
                }
                per.push_back(row);
            }
            j["horizons"] = per;
            write_json(opts, "pmf", j);
        } else if (c_pepmf->parsed()) {
            const auto loaded = load_input(opts);
            const auto pe = select_series(loaded.series, "pe");
            const auto pmf = build_pmf(pe);
            const double mean_plus_2std = [&] {
                const auto st = pmf_stats(pmf, pe, {});
                return st.mean + 2.0 * st.std;
            }();
            const std::vector<double> thresholds = {26.0, mean_plus_2std};
            Json j;
            j["manifest"] = to_json(make_manifest("pe-pmf", opts, loaded.digest, {}));
            j.update(pmf_payload_for(pe, thresholds));
            write_json(opts, "pe_pmf", j);
            if (want_svg) {
                write_file(fs::path(opts.out) / "pe_pmf.svg",
                           emit_svg_pmf(pmf, pmf_stats(pmf, pe, thresholds), "P/E ratio PMF"));
            }
        } else if (c_pemonthly->parsed()) {
            const auto loaded = load_input(opts);
            const auto start = loaded.series.pe_start();
            if (!start) throw NoPeCoverage("pe-monthly: input has no pe column values");
            std::vector<Date> dates(loaded.series.dates.begin() +
                                        static_cast<ptrdiff_t>(*start),
                                    loaded.series.dates.end());
            std::vector<double> pe;
            for (size_t i = *start; i < loaded.series.size(); ++i) {
                pe.push_back(*loaded.series.pe[i]);
            }
            Json j;
            j["manifest"] = to_json(make_manifest("pe-monthly", opts, loaded.digest, {}));
            j.update(to_json(monthly_pmfs(dates, pe)));
            write_json(opts, "pe_monthly", j);
        } else if (c_entropy->parsed()) {
            const auto loaded = load_input(opts);
            const auto x = select_series(loaded.series, series_flag);
            EntropyParams params;
            if (!q_flag.empty()) params.tsallis_q = parse_q_list(q_flag);
            params.sampen_m = sampen_m;
            params.sampen_r_factor = sampen_r;
            params.perm_order = perm_order;
            params.perm_delay = delay;
            const auto report = entropy_report(x, params);
            Json extra;
            extra["series"] = series_flag;
            Json j;
            j["manifest"] = to_json(make_manifest("entropy", opts, loaded.digest, extra));
            j.update(to_json(report));
            write_json(opts, "entropy", j);
            if (want_csv) {
                write_file(fs::path(opts.out) / "entropy.csv", entropy_table_csv(report));
            }
        } else if (c_hurst->parsed()) {
            const auto loaded = load_input(opts);
            const auto x = select_series(loaded.series, series_flag);
            HurstParams params;
            if (!q_flag.empty()) params.qs = parse_q_list(q_flag);
            const auto curve = generalized_hurst(x, params);
            Json extra;
            extra["series"] = series_flag;
            extra["q"] = q_flag.empty() ? "1..5" : q_flag;
            Json j;
            j["manifest"] = to_json(make_manifest("hurst", opts, loaded.digest, extra));
            j.update(to_json(curve));
            write_json(opts, "hurst", j);
            if (want_csv) write_file(fs::path(opts.out) / "hurst.csv", hurst_table_csv(curve));
        } else if (c_lyap->parsed()) {
            const auto loaded = load_input(opts);
            const auto x = select_series(loaded.series, series_flag);
            LyapunovParams params;
            params.dim = dim;
            params.delay = delay;
            params.neighbors = neighbors;
            params.fit_order = fit_order;
            const auto report = lyapunov_spectrum(x, params);
            Json extra;
            extra["series"] = series_flag;
            extra["dim"] = dim;
            extra["delay"] = delay;
            Json j;
            j["manifest"] = to_json(make_manifest("lyapunov", opts, loaded.digest, extra));
            j.update(to_json(report));
            write_json(opts, "lyapunov", j);
            if (want_csv) {
                write_file(fs::path(opts.out) / "lyapunov.csv", lyapunov_table_csv(report));
            }
        } else if (c_profile->parsed()) {
            const auto loaded = load_input(opts);
            const auto ladder = parse_horizons(horizons_flag);
            LyapunovParams lp;
            lp.dim = dim;
            lp.delay = delay;
            const auto profile = complexity_profile(loaded.series, ladder, lp);
            Json extra;
            extra["horizons"] = horizons_flag;
            extra["dim"] = dim;
            extra["delay"] = delay;
            Json j;
            j["manifest"] = to_json(make_manifest("profile", opts, loaded.digest, extra));
            j.update(to_json(profile));
            write_json(opts, "profile", j);
            if (want_svg) {
                write_file(fs::path(opts.out) / "profile.svg",
                           emit_svg_profile(profile, "Return complexity by horizon"));
            }
        } else if (c_mi->parsed()) {
            const auto loaded = load_input(opts);
            const auto set = info_report(loaded.series, 1, 0);
            Json j;
            j["manifest"] = to_json(make_manifest("mi", opts, loaded.digest, {}));
            j["mi"] = json_number(set.mi);
            j["mi_degenerate"] = set.mi_degenerate;
            write_json(opts, "mi", j);
        } else if (c_nmi->parsed()) {
            const auto loaded = load_input(opts);
            const auto set = info_report(loaded.series, 1, max_lag);
            Json extra;
            extra["max_lag"] = max_lag;
            Json j;
            j["manifest"] = to_json(make_manifest("nmi", opts, loaded.digest, extra));
            j.update(to_json(set));
            write_json(opts, "nmi", j);
            if (want_svg) {
                std::vector<double> curve;
                for (const auto& r : set.reports) curve.push_back(r.nmi);
                write_file(fs::path(opts.out) / "nmi.svg",
                           emit_svg_nmi(curve, "Lagged NMI, P/E vs next-day return"));
            }
        } else if (c_te->parsed()) {
            const auto loaded = load_input(opts);
            const auto set = info_report(loaded.series, history_k, 0);
            Json extra;
            extra["k"] = history_k;
            extra["both"] = te_both;
            Json j;
            j["manifest"] = to_json(make_manifest("te", opts, loaded.digest, extra));
            j["te_forward"] = json_number(set.te_forward);
            j["te_forward_clipped"] = set.te_forward_clipped;
            if (te_both) {
                j["te_backward"] = json_number(set.te_backward);
                j["te_backward_clipped"] = set.te_backward_clipped;
            }
            j["history_k"] = set.history_k;
            write_json(opts, "te", j);
        } else if (c_cond->parsed()) {
            const auto loaded = load_input(opts);
            const auto cells = conditional_cells(loaded.series, max_years);
            Json extra;
            extra["max_years"] = max_years;
            Json j;
            j["manifest"] = to_json(make_manifest("conditional", opts, loaded.digest, extra));
            j.update(to_json(cells));
            write_json(opts, "conditional", j);
            if (want_csv) {
                write_file(fs::path(opts.out) / "conditional.csv", conditional_table_csv(cells));
            }
        } else if (c_all->parsed()) {
            const auto loaded = load_input(opts);
            const auto& series = loaded.series;
            const auto ladder = parse_horizons(horizons_flag);
            PipelineStatus status;
            Json params;
            params["horizons"] = horizons_flag;
            params["max_lag"] = max_lag;
            params["max_years"] = max_years;
            params["dim"] = dim;
            params["delay"] = delay;
            params["k"] = history_k;
            const auto manifest = to_json(make_manifest("report-all", opts, loaded.digest, params));
            const auto emit = [&](const std::string& name, const Json& body) {
                Json j;
                j["manifest"] = manifest;
                j["stage"] = name;
                j.update(body);
                write_json(opts, name, j);
                status.ok(name);
            };
            const bool has_pe = series.has_pe();
            const auto pe_stage = [&](const std::string& name, auto&& fn) {
                if (!has_pe) {
                    status.skipped(name, "no pe coverage in input");
                    return;
                }
                emit(name, fn());
            };

            pe_stage("eps_growth", [&] {
                const auto eps = eps_proxy(series);
                std::vector<double> growth;
                for (const auto& g : eps.trailing_growth) {
                    if (g) growth.push_back(*g);
                }
                if (growth.empty()) throw TooShort("eps_growth: fewer than 253 pe rows");
                return pmf_payload_for(growth, {});
            });
            emit("returns", returns_payload(series, ladder, false));
            {
                std::vector<CagrSummary> rows;
                emit("cagr", cagr_payload(series, 12, rows));
                write_file(fs::path(opts.out) / "cagr.csv", cagr_table_csv(rows));
            }
            write_file(fs::path(opts.out) / "returns.csv",
                       horizon_summary_csv(summaries_from_payload(series, ladder)));
            {
                LyapunovParams lp;
                lp.dim = dim;
                lp.delay = delay;
                emit("profile", to_json(complexity_profile(series, ladder, lp)));
            }
            pe_stage("pe_pmf", [&] {
                const auto pe = select_series(series, "pe");
                const auto pmf = build_pmf(pe);
                const auto st = pmf_stats(pmf, pe, {});
                const std::vector<double> thresholds = {26.0, st.mean + 2.0 * st.std};
                return pmf_payload_for(pe, thresholds);
            });
            pe_stage("pe_monthly", [&] {
                const auto start = series.pe_start();
                std::vector<Date> dates(series.dates.begin() + static_cast<ptrdiff_t>(*start),
                                        series.dates.end());
                const auto pe = select_series(series, "pe");
                return to_json(monthly_pmfs(dates, pe));
            });
            pe_stage("entropy", [&] { return to_json(entropy_report(select_series(series, "pe"))); });
            pe_stage("hurst", [&] {
                const auto curve = generalized_hurst(select_series(series, "pe"));
                write_file(fs::path(opts.out) / "hurst.csv", hurst_table_csv(curve));
                return to_json(curve);
            });
            pe_stage("lyapunov", [&] {
                LyapunovParams lp;
                lp.dim = dim;
                lp.delay = delay;
                const auto report = lyapunov_spectrum(select_series(series, "pe"), lp);
                write_file(fs::path(opts.out) / "lyapunov.csv", lyapunov_table_csv(report));
                return to_json(report);
            });
            pe_stage("infoflow", [&] { return to_json(info_report(series, history_k, max_lag)); });
            pe_stage("conditional", [&] {
                const auto cells = conditional_cells(series, max_years);
                write_file(fs::path(opts.out) / "conditional.csv", conditional_table_csv(cells));
                return to_json(cells);
            });

            Json j;
            j["manifest"] = manifest;
            j["stages"] = status.stages;
            write_json(opts, "pipeline", j);
        }
        return 0;
    } catch (const UnsupportedKind& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace returnlab
