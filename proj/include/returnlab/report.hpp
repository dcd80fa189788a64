#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "returnlab/complexity.hpp"
#include "returnlab/distribution.hpp"
#include "returnlab/horizons.hpp"
#include "returnlab/infoflow.hpp"
#include "returnlab/market_data.hpp"

namespace returnlab {

using Json = nlohmann::ordered_json;

// Every emitted report embeds its manifest; identical manifest + input bytes
// produce byte-identical output.
struct RunManifest {
    std::string command;
    Json parameters = Json::object();
    std::string input_digest;
    std::string artifact_version;
};

// FNV-1a 64-bit over the raw bytes, rendered "fnv1a64:<hex>".
std::string content_digest(const std::string& bytes);

// Numbers are serialized with 6 significant digits; infinities become the
// strings "inf"/"-inf" and undefined values null.
Json json_number(double v);

Json to_json(const RunManifest& m);
Json to_json(const Pmf& pmf);
Json to_json(const PmfStats& stats);
Json to_json(const AsymmetryStats& stats);
Json to_json(const HorizonSummary& summary);
Json to_json(const CagrSummary& summary);
Json to_json(const EntropyReport& report);
Json to_json(const HurstCurve& curve);
Json to_json(const LyapunovReport& report);
Json to_json(const ComplexityProfile& profile);
Json to_json(const InfoFlowSet& set);
Json to_json(const MonthlyPmfs& monthly);
Json to_json(const std::vector<ConditionalCell>& cells);

// CSV tables mirroring the report schemas (CAGR, entropy, Hurst, Lyapunov
// spectrum, conditional grid, horizon summary). 6 significant digits.
std::string csv_number(double v);
std::string cagr_table_csv(const std::vector<CagrSummary>& rows);
std::string horizon_summary_csv(const std::vector<HorizonSummary>& rows);
std::string entropy_table_csv(const EntropyReport& report);
std::string hurst_table_csv(const HurstCurve& curve);
std::string lyapunov_table_csv(const LyapunovReport& report);
std::string conditional_table_csv(const std::vector<ConditionalCell>& cells);

}  // namespace returnlab
