#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rumortrack {

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);
// Fixed-point with `decimals` digits, used for human-facing report columns.
std::string format_fixed(double value, int decimals);

double parse_double(std::string_view text);
long long parse_int(std::string_view text);

std::vector<std::string> split(std::string_view line, char sep);
std::string_view trim(std::string_view text);

std::string read_file(const std::filesystem::path& path);
std::vector<std::string> read_lines(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// Tab-separated rows; lines starting with '#' and blank lines are skipped.
std::vector<std::vector<std::string>> read_tsv(const std::filesystem::path& path);

}  // namespace rumortrack
