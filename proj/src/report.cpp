#include "returnlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "returnlab/version.hpp"

namespace returnlab {

std::string content_digest(const std::string& bytes) {
    uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

Json json_number(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::strtod(buf, nullptr);
}

std::string csv_number(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

namespace {

Json json_numbers(const std::vector<double>& xs) {
    Json arr = Json::array();
    for (double x : xs) arr.push_back(json_number(x));
    return arr;
}

}  // namespace

Json to_json(const RunManifest& m) {
    Json j;
    j["command"] = m.command;
    j["parameters"] = m.parameters;
    j["input_digest"] = m.input_digest;
    j["artifact_version"] = m.artifact_version.empty() ? kArtifactVersion : m.artifact_version;
    return j;
}

Json to_json(const Pmf& pmf) {
    Json j;
    j["edges"] = json_numbers(pmf.edges);
    j["mids"] = json_numbers(pmf.mids);
    j["probs"] = json_numbers(pmf.probs);
    j["n"] = pmf.n;
    j["rule"] = to_string(pmf.rule);
    return j;
}

Json to_json(const PmfStats& stats) {
    Json j;
    j["mode"] = json_number(stats.mode);
    j["mode_prob"] = json_number(stats.mode_prob);
    j["mean"] = json_number(stats.mean);
    j["std"] = json_number(stats.std);
    const auto band = [](const SigmaBand& b) {
        Json bj;
        bj["lo"] = json_number(b.lo);
        bj["hi"] = json_number(b.hi);
        bj["coverage"] = json_number(b.coverage);
        return bj;
    };
    j["band1"] = band(stats.band1);
    j["band2"] = band(stats.band2);
    Json cdf = Json::array();
    for (const auto& [threshold, p] : stats.cdf_at) {
        Json entry;
        entry["threshold"] = json_number(threshold);
        entry["cumulative_prob"] = json_number(p);
        cdf.push_back(entry);
    }
    j["cdf_at"] = cdf;
    return j;
}

Json to_json(const AsymmetryStats& stats) {
    Json j;
    j["exp_pos"] = json_number(stats.exp_pos);
    j["exp_neg"] = json_number(stats.exp_neg);
    j["rrr_magnitude"] = json_number(stats.rrr_magnitude);
    j["prp"] = json_number(stats.prp);
    j["nrp"] = json_number(stats.nrp);
    j["rrr_probability"] = json_number(stats.rrr_probability);
    return j;
}

Json to_json(const HorizonSummary& summary) {
    Json j;
    j["label"] = summary.spec.label;
    j["days"] = summary.spec.days;
    j["min"] = json_number(summary.min);
    j["max"] = json_number(summary.max);
    j["mode"] = json_number(summary.mode);
    j["mode_prob"] = json_number(summary.mode_prob);
    return j;
}

Json to_json(const CagrSummary& summary) {
    Json j;
    j["years"] = summary.years;
    j["min_cagr"] = json_number(summary.min_cagr);
    j["max_cagr"] = json_number(summary.max_cagr);
    j["mode_cagr"] = json_number(summary.mode_cagr);
    j["n"] = summary.n;
    return j;
}

Json to_json(const EntropyReport& report) {
    Json j;
    j["shannon_norm"] = json_number(report.shannon_norm);
    Json tsallis = Json::array();
    for (const auto& [q, value] : report.tsallis_norm) {
        Json entry;
        entry["q"] = json_number(q);
        entry["value"] = json_number(value);
        tsallis.push_back(entry);
    }
    j["tsallis_norm"] = tsallis;
    j["sample_entropy"] =
        report.sample_entropy ? json_number(*report.sample_entropy) : Json(nullptr);
    if (!report.sample_entropy_note.empty()) {
        j["sample_entropy_note"] = report.sample_entropy_note;
    }
    j["permutation_norm"] = json_number(report.permutation_norm);
    Json params;
    params["sampen_m"] = report.params.sampen_m;
    params["sampen_r_factor"] = json_number(report.params.sampen_r_factor);
    params["sampen_r"] = json_number(report.sampen_r);
    params["perm_order"] = report.params.perm_order;
    params["perm_delay"] = report.params.perm_delay;
    j["params"] = params;
    return j;
}

Json to_json(const HurstCurve& curve) {
    Json j;
    Json rows = Json::array();
    for (double q : curve.qs) {
        Json row;
        row["q"] = json_number(q);
        row["h"] = json_number(curve.h.at(q));
        row["fit_r2"] = json_number(curve.fit_r2.at(q));
        rows.push_back(row);
    }
    j["h_of_q"] = rows;
    return j;
}

Json to_json(const LyapunovReport& report) {
    Json j;
    j["spectrum"] = json_numbers(report.spectrum);
    Json embedding;
    embedding["dim"] = report.dim;
    embedding["delay"] = report.delay;
    embedding["neighbors"] = report.neighbors;
    embedding["fit_order"] = report.fit_order;
    embedding["theiler"] = report.theiler;
    j["embedding"] = embedding;
    j["ks_entropy"] = json_number(report.ks_entropy);
    j["ky_dimension"] = json_number(report.ky_dimension);
    j["largest"] = json_number(report.largest);
    return j;
}

Json to_json(const ComplexityProfile& profile) {
    Json rows = Json::array();
    for (const auto& entry : profile.entries) {
        Json row;
        row["label"] = entry.spec.label;
        row["days"] = entry.spec.days;
        row["shannon_norm"] =
            entry.shannon_norm ? json_number(*entry.shannon_norm) : Json(nullptr);
        row["hurst_h2"] = entry.hurst_h2 ? json_number(*entry.hurst_h2) : Json(nullptr);
        row["largest_lyapunov"] =
            entry.largest_lyapunov ? json_number(*entry.largest_lyapunov) : Json(nullptr);
        if (!entry.error.empty()) row["error"] = entry.error;
        rows.push_back(row);
    }
    Json j;
    j["entries"] = rows;
    return j;
}

Json to_json(const InfoFlowSet& set) {
    Json j;
    j["mi"] = json_number(set.mi);
    j["mi_degenerate"] = set.mi_degenerate;
    j["te_forward"] = json_number(set.te_forward);
    j["te_backward"] = json_number(set.te_backward);
    j["te_forward_clipped"] = set.te_forward_clipped;
    j["te_backward_clipped"] = set.te_backward_clipped;
    j["history_k"] = set.history_k;
    j["max_lag"] = set.max_lag;
    Json lags = Json::array();
    for (const auto& report : set.reports) {
        Json row;
        row["lag"] = report.lag;
        row["nmi"] = json_number(report.nmi);
        row["mi"] = json_number(report.mi);
        row["te_forward"] = json_number(report.te_forward);
        row["te_backward"] = json_number(report.te_backward);
        row["history_k"] = report.history_k;
        lags.push_back(row);
    }
    j["lags"] = lags;
    j["driver_edges"] = json_numbers(set.driver_edges);
    j["target_edges"] = json_numbers(set.target_edges);
    return j;
}

Json to_json(const MonthlyPmfs& monthly) {
    static const char* kMonths[] = {"jan", "feb", "mar", "apr", "may", "jun",
                                    "jul", "aug", "sep", "oct", "nov", "dec"};
    Json j;
    Json months;
    for (size_t m = 0; m < 12; ++m) {
        months[kMonths[m]] = monthly.months[m] ? to_json(*monthly.months[m]) : Json(nullptr);
    }
    j["months"] = months;
    j["empty_months"] = monthly.empty_months;
    return j;
}

Json to_json(const std::vector<ConditionalCell>& cells) {
    Json rows = Json::array();
    for (const auto& cell : cells) {
        Json row;
        row["pe_band"] = std::to_string(cell.band_lo) + "-" + std::to_string(cell.band_lo + 1);
        row["years"] = cell.years;
        row["n"] = cell.n;
        row["stats"] = to_json(cell.stats);
        rows.push_back(row);
    }
    Json j;
    j["cells"] = rows;
    return j;
}

std::string cagr_table_csv(const std::vector<CagrSummary>& rows) {
    std::string out = "Holding Period,Min CAGR (%),Max CAGR (%),Mode CAGR (%)\n";
    for (const auto& row : rows) {
        out += std::to_string(row.years) + " Year," + csv_number(row.min_cagr) + "," +
               csv_number(row.max_cagr) + "," + csv_number(row.mode_cagr) + "\n";
    }
    return out;
}

std::string horizon_summary_csv(const std::vector<HorizonSummary>& rows) {
    std::string out = "Horizon,Days,Min (%),Max (%),Mode (%),Mode Probability\n";
    for (const auto& row : rows) {
        out += row.spec.label + "," + std::to_string(row.spec.days) + "," + csv_number(row.min) +
               "," + csv_number(row.max) + "," + csv_number(row.mode) + "," +
               csv_number(row.mode_prob) + "\n";
    }
    return out;
}

std::string entropy_table_csv(const EntropyReport& report) {
    std::string out = "Entropy Type,Normalized Value\n";
    out += "Shannon Entropy," + csv_number(report.shannon_norm) + "\n";
    for (const auto& [q, value] : report.tsallis_norm) {
        out += "Tsallis Entropy (q=" + csv_number(q) + ")," + csv_number(value) + "\n";
    }
    out += "Sample Entropy,";
    out += report.sample_entropy ? csv_number(*report.sample_entropy) : std::string("undefined");
    out += "\n";
    out += "Permutation Entropy," + csv_number(report.permutation_norm) + "\n";
    return out;
}

std::string hurst_table_csv(const HurstCurve& curve) {
    std::string out = "Order q,Generalized Hurst Exponent H(q)\n";
    for (double q : curve.qs) {
        out += csv_number(q) + "," + csv_number(curve.h.at(q)) + "\n";
    }
    return out;
}

std::string lyapunov_table_csv(const LyapunovReport& report) {
    std::string out = "Lyapunov Exponent,Value\n";
    for (size_t i = 0; i < report.spectrum.size(); ++i) {
        out += "lambda_" + std::to_string(i + 1) + "," + csv_number(report.spectrum[i]) + "\n";
    }
    out += "KS Entropy," + csv_number(report.ks_entropy) + "\n";
    out += "Kaplan-Yorke Dimension," + csv_number(report.ky_dimension) + "\n";
    return out;
}

std::string conditional_table_csv(const std::vector<ConditionalCell>& cells) {
    std::string out = "PE Range,Duration,PRP,NRP,RRR (PRP/NRP),RRR (magnitude),N\n";
    for (const auto& cell : cells) {
        out += std::to_string(cell.band_lo) + "-" + std::to_string(cell.band_lo + 1) + "," +
               std::to_string(cell.years) + " Year," + csv_number(cell.stats.prp) + "," +
               csv_number(cell.stats.nrp) + "," + csv_number(cell.stats.rrr_probability) + "," +
               csv_number(cell.stats.rrr_magnitude) + "," + std::to_string(cell.n) + "\n";
    }
    return out;
}

}  // namespace returnlab
