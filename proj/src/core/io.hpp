#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace th {

// Deterministic CSV writing: fixed %.17g formatting, LF line ends.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& values);
    void close();
    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::FILE* f_ = nullptr;
    size_t n_cols_;
};

std::string format_double(double v); // %.17g

uint64_t fnv1a64_file(const std::string& path);
std::string fnv1a64_hex(const std::string& path);

void write_file_atomic(const std::string& path, const std::string& content);
void ensure_dir(const std::string& path);

} // namespace th
