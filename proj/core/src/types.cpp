#include "pfopt/types.hpp"

#include <cmath>

namespace pfopt {

namespace {
// Date labels compare numerically when both parse as integers (e.g. 197001),
// lexicographically otherwise (e.g. ISO dates).
bool date_less(const std::string& a, const std::string& b) {
    auto as_int = [](const std::string& s, long long& out) {
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        out = std::stoll(s);
        return true;
    };
    long long ia = 0, ib = 0;
    if (as_int(a, ia) && as_int(b, ib)) return ia < ib;
    return a < b;
}
}  // namespace

void ReturnsMatrix::validate() const {
    require(values.rows() >= 2 && values.cols() >= 2,
            "ReturnsMatrix: need at least 2 periods and 2 assets");
    require(static_cast<Eigen::Index>(dates.size()) == values.rows(),
            "ReturnsMatrix: date labels do not match row count");
    require(static_cast<Eigen::Index>(tickers.size()) == values.cols(),
            "ReturnsMatrix: ticker labels do not match column count");
    require(values.allFinite(), "ReturnsMatrix: non-finite entries");
    for (std::size_t i = 0; i + 1 < dates.size(); ++i)
        require(date_less(dates[i], dates[i + 1]), "ReturnsMatrix: dates not strictly increasing");
}

ReturnsMatrix ReturnsMatrix::window(Eigen::Index first, Eigen::Index count) const {
    require(first >= 0 && count >= 1 && first + count <= values.rows(),
            "ReturnsMatrix::window: out of range");
    ReturnsMatrix out;
    out.values = values.middleRows(first, count);
    out.tickers = tickers;
    out.dates.assign(dates.begin() + first, dates.begin() + first + count);
    return out;
}

}  // namespace pfopt
