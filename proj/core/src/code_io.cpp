#include "nisbound/code_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "nisbound/errors.hpp"

namespace nisbound {

namespace {

std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

std::string format_code(const BinaryCode& code) {
  std::string out = "n=" + std::to_string(code.dim()) + "\n";
  out.reserve(out.size() + code.size() * (static_cast<std::size_t>(code.dim()) + 1));
  for (Word w : code.words()) {
    out += to_bitstring(w, code.dim());
    out += '\n';
  }
  return out;
}

BinaryCode parse_code(std::string_view text) {
  int n = -1;
  std::vector<Word> words;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = trim_cr(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.empty()) continue;

    if (n < 0) {
      if (!line.starts_with("n=")) {
        throw ParseError("line " + std::to_string(line_no) + ": expected header n=<dim>");
      }
      auto digits = line.substr(2);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
      if (ec != std::errc{} || ptr != digits.data() + digits.size() || n < 1 || n > kMaxDim) {
        throw ParseError("line " + std::to_string(line_no) + ": bad dimension");
      }
      continue;
    }

    if (line.size() != static_cast<std::size_t>(n)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(n) + " characters, got " +
                       std::to_string(line.size()));
    }
    Word w = 0;
    for (std::size_t j = 0; j < line.size(); ++j) {
      const char c = line[j];
      if (c != '0' && c != '1') {
        throw ParseError("line " + std::to_string(line_no) + ": non-binary character");
      }
      if (c == '1') w |= Word{1} << (static_cast<std::size_t>(n) - 1 - j);
    }
    words.push_back(w);
  }
  if (n < 0) throw ParseError("missing header n=<dim>");
  if (words.empty()) throw ParseError("code has no codewords");
  return make_code(n, std::move(words));
}

BinaryCode read_code_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_code(buf.str());
}

void write_code_file(const std::filesystem::path& path, const BinaryCode& code) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << format_code(code);
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace nisbound
