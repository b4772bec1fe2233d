#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace nlrd {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// Line-buffered CSV writer; numeric cells use round-trip formatting so
/// re-parsing reproduces the written values exactly.
class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    void cell(const std::string& s);
    void cell(double v);
    void cell(long v);
    void end_row();
    long rows() const { return rows_; }

  private:
    std::ofstream out_;
    std::filesystem::path path_;
    bool row_open_ = false;
    long rows_ = 0;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    double number(std::size_t row, std::size_t col) const;
};

CsvTable read_csv(const std::filesystem::path& path);

} // namespace nlrd
