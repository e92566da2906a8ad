#pragma once

#include <pfopt/types.hpp>

#include <filesystem>
#include <string>

namespace pfopt::cli {

struct IngestOptions {
    std::string date_format = "auto";  // auto | numeric | lexicographic
    double drop_threshold = 0.0;       // fraction of missing cells tolerated per column
    bool percent_units = false;        // divide by 100 (Kenneth French convention)
};

/// Parses a returns CSV: header row of tickers, first column of dates.
/// Empty cells and NA/NaN spellings count as missing; columns with more
/// than drop_threshold missing are dropped, any remaining missing cell is
/// an error.
ReturnsMatrix ingest_returns(const std::filesystem::path& path, const IngestOptions& options);

}  // namespace pfopt::cli
