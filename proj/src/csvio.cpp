#include "nlrd/csvio.hpp"

#include "nlrd/errors.hpp"

#include <charconv>
#include <sstream>

namespace nlrd {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : path_(path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    out_.open(path);
    if (!out_)
        throw ParameterError("cannot open for writing: " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

void CsvWriter::cell(const std::string& s) {
    if (row_open_) out_ << ',';
    out_ << s;
    row_open_ = true;
}

void CsvWriter::cell(double v) { cell(format_double(v)); }
void CsvWriter::cell(long v) { cell(std::to_string(v)); }

void CsvWriter::end_row() {
    out_ << '\n';
    row_open_ = false;
    ++rows_;
    if (!out_) throw ParameterError("write failed: " + path_.string());
}

double CsvTable::number(std::size_t row, std::size_t col) const {
    const std::string& s = rows.at(row).at(col);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{})
        throw ParameterError("not a number in CSV: '" + s + "'");
    return v;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open for reading: " + path.string());
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

} // namespace nlrd
