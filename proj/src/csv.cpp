#include "gelswell/csv.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "gelswell/errors.hpp"

namespace gelswell::csv {

std::string formatDouble(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0.0 ? "inf" : "-inf";
    if (value == 0.0) return "0";  // folds -0 so reruns cannot differ by the sign of zero
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return {buf, res.ptr};
}

Writer::Writer(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary | std::ios::trunc), path_(path), columns_(header.size()) {
    if (!out_) throw ConfigError("cannot open '" + path.string() + "' for writing");
    for (std::size_t k = 0; k < header.size(); ++k) out_ << (k ? "," : "") << header[k];
    out_ << '\n';
}

Writer& Writer::add(double value) { return add(formatDouble(value)); }

Writer& Writer::add(const std::string& value) {
    if (fields_ == columns_) throw DomainError("csv: too many fields in row of " + path_.string());
    out_ << (fields_ ? "," : "") << value;
    ++fields_;
    return *this;
}

Writer& Writer::add(const std::optional<double>& value) { return add(value ? formatDouble(*value) : std::string()); }

void Writer::endRow() {
    if (fields_ != columns_) throw DomainError("csv: short row in " + path_.string());
    out_ << '\n';
    if (!out_) throw ConfigError("write failed for '" + path_.string() + "'");
    fields_ = 0;
    ++rows_;
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

Table read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    Table t;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("'" + path.string() + "' is empty");
    t.header = split(line);
    while (std::getline(in, line)) t.rows.push_back(split(line));
    return t;
}

}  // namespace gelswell::csv
