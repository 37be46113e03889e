#pragma once

/**
 * @file csv.hpp
 * @brief Byte-stable CSV emission.
 *
 * Doubles are written as the shortest decimal string that round-trips
 * (std::to_chars), non-finite values as inf, -inf or nan. Lines end in '\n'.
 */

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace gelswell::csv {

std::string formatDouble(double value);

class Writer {
public:
    /// Truncates `path` and writes the header line.
    Writer(const std::filesystem::path& path, const std::vector<std::string>& header);

    Writer& add(double value);
    Writer& add(const std::string& value);
    /// Empty field for an absent value.
    Writer& add(const std::optional<double>& value);
    /// Terminates the row; throws DomainError if the field count differs from the header.
    void endRow();

    std::size_t rows() const noexcept { return rows_; }

private:
    std::ofstream out_;
    std::filesystem::path path_;
    std::size_t columns_;
    std::size_t fields_ = 0;
    std::size_t rows_ = 0;
};

/// Parsed CSV (header plus string cells); used by tests and the resume logic.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

Table read(const std::filesystem::path& path);

}  // namespace gelswell::csv
