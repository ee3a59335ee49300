#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rolemine {

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

double parse_double(std::string_view s);
long long parse_int(std::string_view s);

/// Minimal CSV: comma separator, newline rows, no quoting. Field values
/// containing commas or newlines are rejected on write; GitHub logins and
/// repository names cannot contain either.
class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path);
    ~CsvWriter();

    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<std::string>& fields);
    void close();

private:
    std::filesystem::path path_;
    std::string buffer_;
    bool closed_ = false;
};

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

} // namespace rolemine
