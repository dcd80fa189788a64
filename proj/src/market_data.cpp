#include "returnlab/market_data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "returnlab/errors.hpp"

namespace returnlab {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string token;
    for (char c : line) {
        if (c == ',') {
            out.push_back(trim(token));
            token.clear();
        } else {
            token.push_back(c);
        }
    }
    out.push_back(trim(token));
    return out;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_number(const std::string& field, size_t line_no, const char* what) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw MalformedRow("line " + std::to_string(line_no) + ": unparseable " + what + " '" +
                           field + "'");
    }
    return value;
}

}  // namespace

std::optional<size_t> DailySeries::pe_start() const {
    for (size_t i = 0; i < pe.size(); ++i) {
        if (pe[i].has_value()) return i;
    }
    return std::nullopt;
}

void DailySeries::validate() const {
    if (dates.size() != close.size() || dates.size() != pe.size()) {
        throw MalformedRow("series columns disagree in length");
    }
    for (size_t i = 0; i < dates.size(); ++i) {
        if (!dates[i].valid()) {
            throw MalformedRow("row " + std::to_string(i) + ": invalid date");
        }
        if (i > 0 && !(dates[i - 1] < dates[i])) {
            if (dates[i - 1] == dates[i]) {
                throw DuplicateDate("duplicate date " + dates[i].to_string());
            }
            throw MalformedRow("dates not increasing at " + dates[i].to_string());
        }
        if (!(close[i] > 0.0)) {
            throw NonPositiveValue("close <= 0 at " + dates[i].to_string());
        }
        if (pe[i].has_value() && !(*pe[i] > 0.0)) {
            throw NonPositiveValue("pe <= 0 at " + dates[i].to_string());
        }
    }
    const auto start = pe_start();
    if (start.has_value()) {
        for (size_t i = *start; i < pe.size(); ++i) {
            if (!pe[i].has_value()) {
                throw NonContiguousPe("pe absent at " + dates[i].to_string() +
                                      " after coverage began " + dates[*start].to_string());
            }
        }
    }
}

DailySeries ingest_csv_text(const std::string& text, const IngestConfig& config) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw MalformedRow("empty input");

    const auto header = split_fields(line);
    int date_col = -1, close_col = -1, pe_col = -1;
    for (size_t i = 0; i < header.size(); ++i) {
        const std::string name = lower(header[i]);
        if (name == "date") date_col = static_cast<int>(i);
        else if (name == "close") close_col = static_cast<int>(i);
        else if (name == "pe") pe_col = static_cast<int>(i);
    }
    if (date_col < 0 || close_col < 0) {
        throw MalformedRow("header must name 'date' and 'close' columns");
    }

    struct Row {
        Date date;
        double close;
        std::optional<double> pe;
    };
    std::vector<Row> rows;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() <= static_cast<size_t>(std::max(date_col, close_col))) {
            throw MalformedRow("line " + std::to_string(line_no) + ": too few fields");
        }
        Row row;
        const auto date = Date::parse(fields[static_cast<size_t>(date_col)]);
        if (!date) {
            throw MalformedRow("line " + std::to_string(line_no) + ": unparseable date '" +
                               fields[static_cast<size_t>(date_col)] + "'");
        }
        row.date = *date;
        row.close = parse_number(fields[static_cast<size_t>(close_col)], line_no, "close");
        if (pe_col >= 0 && static_cast<size_t>(pe_col) < fields.size() &&
            !fields[static_cast<size_t>(pe_col)].empty()) {
            row.pe = parse_number(fields[static_cast<size_t>(pe_col)], line_no, "pe");
        }
        if (config.from && row.date < *config.from) continue;
        if (config.to && *config.to < row.date) continue;
        rows.push_back(row);
    }

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });

    DailySeries series;
    series.dates.reserve(rows.size());
    series.close.reserve(rows.size());
    series.pe.reserve(rows.size());
    for (const auto& row : rows) {
        series.dates.push_back(row.date);
        series.close.push_back(row.close);
        series.pe.push_back(row.pe);
    }
    series.validate();
    return series;
}

DailySeries ingest_csv(const std::string& path, const IngestConfig& config) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedRow("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return ingest_csv_text(buf.str(), config);
}

std::string to_csv(const DailySeries& series) {
    std::ostringstream out;
    out << "date,close,pe\n";
    char buf[32];
    const auto fmt = [&buf](double v) {
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, res.ptr);
    };
    for (size_t i = 0; i < series.size(); ++i) {
        out << series.dates[i].to_string() << ',' << fmt(series.close[i]) << ',';
        if (series.pe[i].has_value()) out << fmt(*series.pe[i]);
        out << '\n';
    }
    return out.str();
}

EpsSeries eps_proxy(const DailySeries& series) {
    const auto start = series.pe_start();
    if (!start) throw NoPeCoverage("series carries no pe values");
    EpsSeries eps;
    const size_t n = series.size() - *start;
    eps.dates.reserve(n);
    eps.eps.reserve(n);
    eps.trailing_growth.reserve(n);
    for (size_t i = *start; i < series.size(); ++i) {
        eps.dates.push_back(series.dates[i]);
        eps.eps.push_back(series.close[i] / *series.pe[i]);
    }
    for (size_t i = 0; i < n; ++i) {
        if (i >= static_cast<size_t>(kTradingDaysPerYear)) {
            const double prior = eps.eps[i - kTradingDaysPerYear];
            eps.trailing_growth.push_back((eps.eps[i] - prior) / prior * 100.0);
        } else {
            eps.trailing_growth.push_back(std::nullopt);
        }
    }
    return eps;
}

DailySeries subset_by_date(const DailySeries& series, const Date& from, const Date& to) {
    if (to < from) throw EmptyResult("subset range is empty: from > to");
    DailySeries out;
    for (size_t i = 0; i < series.size(); ++i) {
        if (series.dates[i] < from || to < series.dates[i]) continue;
        out.dates.push_back(series.dates[i]);
        out.close.push_back(series.close[i]);
        out.pe.push_back(series.pe[i]);
    }
    if (out.dates.empty()) {
        throw EmptyResult("no rows between " + from.to_string() + " and " + to.to_string());
    }
    out.validate();
    return out;
}

}  // namespace returnlab
