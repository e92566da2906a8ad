#include "pfopt/cli/ingest.hpp"

#include "pfopt/cli/errors.hpp"

#include <pfopt/csv.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

namespace pfopt::cli {

namespace {

bool is_missing(const std::string& cell) {
    if (cell.empty()) return true;
    std::string lower;
    for (char c : cell)
        if (!std::isspace(static_cast<unsigned char>(c)))
            lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return lower.empty() || lower == "na" || lower == "nan" || lower == "null" || lower == ".";
}

bool parse_number(const std::string& cell, double& out) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(*begin))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(end[-1]))) --end;
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

ReturnsMatrix ingest_returns(const std::filesystem::path& path, const IngestOptions& options) {
    if (options.drop_threshold < 0.0 || options.drop_threshold > 1.0)
        throw ConfigError("ingest: drop_threshold must lie in [0,1]");

    csv::Table table;
    try {
        table = csv::read_file(path);
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
    if (table.header.size() < 2) throw DataError("ingest: header needs a date column and tickers");
    const std::size_t k_raw = table.header.size() - 1;
    const std::size_t T = table.rows.size();
    if (T < 2) throw DataError("ingest: need at least 2 rows");

    std::vector<std::string> dates;
    dates.reserve(T);
    std::vector<std::vector<double>> columns(k_raw);
    std::vector<std::size_t> missing(k_raw, 0);
    for (auto& c : columns) c.assign(T, 0.0);

    for (std::size_t t = 0; t < T; ++t) {
        const auto& row = table.rows[t];
        if (row.size() != table.header.size())
            throw DataError("ingest: row " + std::to_string(t + 2) + " has " +
                            std::to_string(row.size()) + " cells, expected " +
                            std::to_string(table.header.size()));
        dates.push_back(row[0]);
        for (std::size_t j = 0; j < k_raw; ++j) {
            const std::string& cell = row[j + 1];
            if (is_missing(cell)) {
                ++missing[j];
                columns[j][t] = std::numeric_limits<double>::quiet_NaN();
            } else if (!parse_number(cell, columns[j][t])) {
                throw DataError("ingest: unparseable cell '" + cell + "' at row " +
                                std::to_string(t + 2) + ", column " + table.header[j + 1]);
            }
        }
    }

    // Date sanity: duplicates and ordering under the requested comparison.
    {
        std::set<std::string> seen;
        for (const auto& d : dates)
            if (!seen.insert(d).second) throw DataError("ingest: duplicate date " + d);
        const bool numeric = options.date_format == "numeric" ||
                             (options.date_format == "auto" &&
                              std::all_of(dates.begin(), dates.end(), all_digits));
        for (std::size_t t = 0; t + 1 < dates.size(); ++t) {
            const bool ok = numeric ? std::stoll(dates[t]) < std::stoll(dates[t + 1])
                                    : dates[t] < dates[t + 1];
            if (!ok) throw DataError("ingest: dates not strictly increasing at " + dates[t + 1]);
        }
    }

    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < k_raw; ++j) {
        const double frac = static_cast<double>(missing[j]) / static_cast<double>(T);
        if (frac <= options.drop_threshold && missing[j] == 0) {
            kept.push_back(j);
        } else if (frac > options.drop_threshold) {
            continue;  // dropped
        } else {
            throw DataError("ingest: column " + table.header[j + 1] + " has " +
                            std::to_string(missing[j]) + " missing cells below the drop threshold");
        }
    }
    if (kept.size() < 2) throw DataError("ingest: fewer than 2 usable columns");

    ReturnsMatrix R;
    R.values.resize(static_cast<Eigen::Index>(T), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t jj = 0; jj < kept.size(); ++jj) {
        R.tickers.push_back(table.header[kept[jj] + 1]);
        for (std::size_t t = 0; t < T; ++t)
            R.values(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(jj)) =
                columns[kept[jj]][t];
    }
    R.dates = std::move(dates);
    if (options.percent_units) R.values /= 100.0;

    try {
        R.validate();
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
    return R;
}

}  // namespace pfopt::cli
