#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "nisbound/hypercube.hpp"

namespace nisbound {

// Text format: a header line "n=<dim>" followed by one codeword per line as a
// 0/1 string of exactly n characters, most-significant coordinate first.
// Blank lines are ignored; a trailing '\r' is tolerated.

std::string format_code(const BinaryCode& code);
BinaryCode parse_code(std::string_view text);

BinaryCode read_code_file(const std::filesystem::path& path);
void write_code_file(const std::filesystem::path& path, const BinaryCode& code);

}  // namespace nisbound
