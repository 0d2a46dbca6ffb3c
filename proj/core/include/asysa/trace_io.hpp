#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "asysa/matrix.hpp"

namespace asysa {

// Trace text format, one matrix per file:
//
//   width=<bits> signed=<0|1> rows=<r> cols=<c>
//   <element> <element> ...
//
// The header is the first line; after it come exactly rows*cols decimal
// integers in row-major order, separated by arbitrary whitespace.
// rows=0 describes an empty matrix and carries no elements.

/// Parses trace text. ParseError carries the line and byte offset of the
/// first malformed token; WidthViolationError names the first element
/// outside the declared range.
IntMatrix parse_trace(std::string_view text);

std::string format_trace(const IntMatrix& matrix);

IntMatrix load_trace(const std::filesystem::path& path);

/// Atomic write (temp file + rename).
void save_trace(const IntMatrix& matrix, const std::filesystem::path& path);

}  // namespace asysa
