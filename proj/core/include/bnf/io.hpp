#pragma once

#include <concepts>
#include <filesystem>
#include <string>
#include <vector>

namespace bnf {

// General format, 17 significant digits, locale independent.
std::string format_double(double x);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    const std::vector<std::string>& header() const { return header_; }
    std::size_t rows() const { return rows_; }

    CsvTable& cell(const std::string& s);
    CsvTable& cell(double x);
    template <std::integral I>
    CsvTable& cell(I x) {
        return cell(std::to_string(x));
    }
    void end_row();

    std::string str() const;

private:
    std::vector<std::string> header_;
    std::string body_;
    std::size_t col_ = 0;
    std::size_t rows_ = 0;
};

// Writes to a sibling temp file and renames over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace bnf
