#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "bnf/io.hpp"

namespace bnf {

std::string format_double(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    if (r.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return {buf, r.ptr};
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) throw std::invalid_argument("CsvTable: empty header");
}

CsvTable& CsvTable::cell(const std::string& s) {
    if (col_ == header_.size()) throw std::logic_error("CsvTable: too many cells in row");
    if (col_) body_ += ',';
    if (s.find_first_of(",\"\n") != std::string::npos) {
        body_ += '"';
        for (char c : s) {
            if (c == '"') body_ += '"';
            body_ += c;
        }
        body_ += '"';
    } else {
        body_ += s;
    }
    ++col_;
    return *this;
}

CsvTable& CsvTable::cell(double x) { return cell(format_double(x)); }

void CsvTable::end_row() {
    if (col_ != header_.size()) throw std::logic_error("CsvTable: row has wrong number of cells");
    body_ += '\n';
    col_ = 0;
    ++rows_;
}

std::string CsvTable::str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (i) out += ',';
        out += header_[i];
    }
    out += '\n';
    return out + body_;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os << content;
        if (!os.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace bnf
