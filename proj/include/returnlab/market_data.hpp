#pragma once

#include <optional>
#include <string>
#include <vector>

#include "returnlab/date.hpp"

namespace returnlab {

// One trading year in rows. Row offsets, not calendar offsets, are used
// everywhere a "year" of history is needed.
inline constexpr int kTradingDaysPerYear = 252;

// Daily close (and optional P/E) observations, strictly increasing dates.
// P/E coverage, when present, is a contiguous suffix of the date range.
// Immutable after construction; validate() enforces every invariant.
struct DailySeries {
    std::vector<Date> dates;
    std::vector<double> close;
    std::vector<std::optional<double>> pe;

    size_t size() const { return dates.size(); }

    // Index of the first row carrying a P/E value; nullopt when none does.
    std::optional<size_t> pe_start() const;
    bool has_pe() const { return pe_start().has_value(); }

    // Throws MalformedRow / NonPositiveValue / DuplicateDate / NonContiguousPe.
    void validate() const;
};

// Implied earnings per share over the P/E-covered dates, plus trailing
// one-year growth (defined once 252 prior EPS observations exist).
struct EpsSeries {
    std::vector<Date> dates;
    std::vector<double> eps;
    std::vector<std::optional<double>> trailing_growth;  // percent

    size_t size() const { return dates.size(); }
};

struct IngestConfig {
    std::optional<Date> from;
    std::optional<Date> to;
};

// Parses `date,close[,pe]` CSV. Rows outside [from, to] are dropped before
// validation of the P/E-suffix invariant. Input rows may be unordered; the
// result is sorted by date.
DailySeries ingest_csv(const std::string& path, const IngestConfig& config = {});

// Same parse applied to in-memory text (used by ingest_csv and tests).
DailySeries ingest_csv_text(const std::string& text, const IngestConfig& config = {});

// Writes `date,close,pe` with round-trip-exact numeric formatting.
std::string to_csv(const DailySeries& series);

// EPS_t = close_t / pe_t over the covered suffix; trailing growth in percent
// against the EPS value 252 rows earlier. Throws NoPeCoverage.
EpsSeries eps_proxy(const DailySeries& series);

// Rows with from <= date <= to. Throws EmptyResult when nothing overlaps.
DailySeries subset_by_date(const DailySeries& series, const Date& from, const Date& to);

}  // namespace returnlab
