#include "io.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>

#include "error.hpp"

namespace th {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : path_(path), n_cols_(columns.size()) {
    f_ = std::fopen(path.c_str(), "wb");
    require(f_ != nullptr, errc::io_error, "cannot open for writing: " + path);
    for (size_t i = 0; i < columns.size(); ++i)
        std::fprintf(f_, "%s%s", columns[i].c_str(), i + 1 < columns.size() ? "," : "\n");
}

CsvWriter::~CsvWriter() { close(); }

void CsvWriter::row(const std::vector<double>& values) {
    require(values.size() == n_cols_, errc::invalid_argument, "csv row arity mismatch");
    for (size_t i = 0; i < values.size(); ++i)
        std::fprintf(f_, "%.17g%s", values[i], i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
    require(values.size() == n_cols_, errc::invalid_argument, "csv row arity mismatch");
    for (size_t i = 0; i < values.size(); ++i)
        std::fprintf(f_, "%s%s", values[i].c_str(), i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::close() {
    if (f_) {
        std::fclose(f_);
        f_ = nullptr;
    }
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), errc::io_error, "cannot digest: " + path);
    uint64_t h = 1469598103934665603ull;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& path) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64_file(path)));
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        require(out.good(), errc::io_error, "cannot open for writing: " + tmp);
        out << content;
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    require(!ec, errc::io_error, "atomic rename failed: " + path);
}

void ensure_dir(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    require(!ec, errc::io_error, "cannot create directory: " + path);
}

} // namespace th
