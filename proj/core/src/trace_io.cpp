#include "asysa/trace_io.hpp"

#include <charconv>
#include <cstdint>
#include <string>

#include "asysa/file_util.hpp"

namespace asysa {

namespace {

constexpr std::size_t kMaxElements = std::size_t{1} << 26;  // 64M elements, ~512MB

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line = 1;

  void skip_space() {
    while (pos < text.size() && is_space(text[pos])) {
      if (text[pos] == '\n') {
        ++line;
      }
      ++pos;
    }
  }

  std::string_view next_token() {
    skip_space();
    const std::size_t start = pos;
    while (pos < text.size() && !is_space(text[pos])) {
      ++pos;
    }
    return text.substr(start, pos - start);
  }

  std::string where(std::size_t at) const {
    return "line " + std::to_string(line) + ", offset " + std::to_string(at);
  }
};

std::uint64_t parse_header_field(std::string_view token, std::string_view key) {
  if (token.size() <= key.size() + 1 || token.substr(0, key.size()) != key ||
      token[key.size()] != '=') {
    throw ParseError("line 1: expected '" + std::string(key) + "=<value>', got '" +
                     std::string(token) + "'");
  }
  const std::string_view digits = token.substr(key.size() + 1);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw ParseError("line 1: '" + std::string(key) + "' needs an unsigned decimal value, got '" +
                     std::string(digits) + "'");
  }
  return value;
}

}  // namespace

IntMatrix parse_trace(std::string_view text) {
  const std::size_t header_end = text.find('\n');
  const std::string_view header =
      header_end == std::string_view::npos ? text : text.substr(0, header_end);

  Cursor h{header};
  const std::uint64_t width = parse_header_field(h.next_token(), "width");
  const std::uint64_t signed_flag = parse_header_field(h.next_token(), "signed");
  const std::uint64_t rows = parse_header_field(h.next_token(), "rows");
  const std::uint64_t cols = parse_header_field(h.next_token(), "cols");
  h.skip_space();
  if (h.pos < header.size()) {
    throw ParseError("line 1: unexpected trailing text '" +
                     std::string(header.substr(h.pos)) + "' after header");
  }
  if (width < 1 || width > 63) {
    throw ParseError("line 1: width must be between 1 and 63 bits, got " +
                     std::to_string(width));
  }
  if (signed_flag > 1) {
    throw ParseError("line 1: signed must be 0 or 1, got " + std::to_string(signed_flag));
  }
  const std::size_t count = std::size_t(rows) * std::size_t(cols);
  if (rows > kMaxElements || cols > kMaxElements || (cols != 0 && count / cols != rows) ||
      count > kMaxElements) {
    throw ParseError("line 1: matrix of " + std::to_string(rows) + "x" + std::to_string(cols) +
                     " elements exceeds the supported size");
  }

  IntMatrix out(rows, cols, unsigned(width), signed_flag == 1);
  const std::int64_t lo = IntMatrix::min_value(unsigned(width), signed_flag == 1);
  const std::int64_t hi = IntMatrix::max_value(unsigned(width), signed_flag == 1);

  Cursor body{text, header_end == std::string_view::npos ? text.size() : header_end};
  for (std::size_t i = 0; i < count; ++i) {
    body.skip_space();
    const std::size_t at = body.pos;
    const std::string_view token = body.next_token();
    if (token.empty()) {
      throw ParseError("expected " + std::to_string(count) + " elements, found " +
                       std::to_string(i));
    }
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ParseError(body.where(at) + ": invalid integer '" + std::string(token) + "'");
    }
    if (value < lo || value > hi) {
      throw WidthViolationError("element " + std::to_string(i) + " (" + body.where(at) +
                                ") value " + std::to_string(value) + " does not fit " +
                                (signed_flag == 1 ? "signed " : "unsigned ") +
                                std::to_string(width) + "-bit range [" + std::to_string(lo) +
                                ", " + std::to_string(hi) + "]");
    }
    out.set(i / cols, i % cols, value);
  }
  body.skip_space();
  if (body.pos < text.size()) {
    const std::size_t at = body.pos;
    throw ParseError(body.where(at) + ": unexpected extra data after " + std::to_string(count) +
                     " elements");
  }
  return out;
}

std::string format_trace(const IntMatrix& matrix) {
  std::string out = "width=" + std::to_string(matrix.width_bits()) +
                    " signed=" + std::string(matrix.is_signed() ? "1" : "0") +
                    " rows=" + std::to_string(matrix.rows()) +
                    " cols=" + std::to_string(matrix.cols()) + "\n";
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      out += std::to_string(matrix(r, c));
      out += c + 1 == matrix.cols() ? '\n' : ' ';
    }
  }
  return out;
}

IntMatrix load_trace(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_trace(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const WidthViolationError& e) {
    throw WidthViolationError(path.string() + ": " + e.what());
  }
}

void save_trace(const IntMatrix& matrix, const std::filesystem::path& path) {
  write_file_atomic(path, format_trace(matrix));
}

}  // namespace asysa
