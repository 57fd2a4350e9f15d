#ifndef PALPRENDER_CSV_HPP
#define PALPRENDER_CSV_HPP

#include <string>
#include <string_view>
#include <vector>

namespace palprender {

// Shortest decimal representation that parses back bit-exactly.
std::string format_double(double value);

// Strict parse of a full token; throws std::invalid_argument on garbage.
double parse_double(std::string_view token);

std::vector<std::string_view> split_csv_line(std::string_view line);

// Whole-file helpers; throw IoError on failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace palprender

#endif
