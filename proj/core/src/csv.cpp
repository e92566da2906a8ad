#include "pfopt/csv.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace pfopt::csv {

namespace {
std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}
}  // namespace

Table read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open " + path.string());
    Table table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() && in.peek() == EOF) break;
        auto cells = split_line(line);
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    if (first) throw std::runtime_error("csv: empty file " + path.string());
    return table;
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return fmt::format("{}", x);
}

Writer::Writer(std::vector<std::string> header) : columns_(header.size()) {
    if (header.empty()) throw std::invalid_argument("csv::Writer: empty header");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) body_ += ',';
        body_ += header[i];
    }
    body_ += '\n';
}

Writer& Writer::cell(const std::string& s) {
    if (in_row_) body_ += ',';
    body_ += s;
    ++in_row_;
    return *this;
}

Writer& Writer::cell(double x) { return cell(format_double(x)); }

Writer& Writer::cell(long long x) { return cell(fmt::format("{}", x)); }

Writer& Writer::end_row() {
    if (in_row_ != columns_) throw std::logic_error("csv::Writer: row width mismatch");
    body_ += '\n';
    in_row_ = 0;
    return *this;
}

void Writer::write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("csv: cannot write " + path.string());
    out << body_;
}

std::string Writer::str() const { return body_; }

}  // namespace pfopt::csv
