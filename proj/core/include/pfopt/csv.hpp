#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace pfopt::csv {

/// One parsed cell: empty string means missing.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

Table read_file(const std::filesystem::path& path);

/// Shortest round-trip decimal for a double ("inf"/"-inf"/"nan" spelled out).
std::string format_double(double x);

class Writer {
  public:
    explicit Writer(std::vector<std::string> header);

    Writer& cell(const std::string& s);
    Writer& cell(double x);
    Writer& cell(long long x);
    Writer& cell(int x) { return cell(static_cast<long long>(x)); }
    Writer& cell(std::size_t x) { return cell(static_cast<long long>(x)); }
    Writer& end_row();

    void write(const std::filesystem::path& path) const;
    std::string str() const;

  private:
    std::size_t columns_;
    std::size_t in_row_ = 0;
    std::string body_;
};

}  // namespace pfopt::csv
