#pragma once

#include <cstddef>
#include <string>

#include "zpr/errors.hpp"
#include "zpr/poly.hpp"

namespace zpr {

enum class CodeKind { block, convolutional };
enum class MatrixRole { generator, p_encoder };

/// A matrix over Z_{p^r}[D] as stored on disk. Block codes only have
/// constant cells.
struct CodeFile {
  CodeKind kind = CodeKind::convolutional;
  MatrixRole role = MatrixRole::p_encoder;
  PolyMatrix matrix{RingParams(2, 1), 0};

  friend bool operator==(const CodeFile&, const CodeFile&) = default;
};

/// Malformed input; the message names the line and column (text files) or
/// the JSON path of the offending value.
class ParseError : public InvalidArgument {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InvalidArgument(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

inline constexpr int code_file_version = 1;

std::string to_string(CodeKind kind);
std::string to_string(MatrixRole role);

/// Line format:
///   zpr-code 1
///   p 5
///   r 2
///   kind convolutional
///   role p-encoder
///   rows 2
///   cols 2
///   [1,1] [1,2]
///   [5,5] [5,10]
/// Cells list coefficients from D^0 upwards. '#' starts a comment.
CodeFile parse_code_text(const std::string& text);
std::string write_code_text(const CodeFile& f);

CodeFile parse_code_json(const std::string& text);
std::string write_code_json(const CodeFile& f);

/// Chooses the JSON reader for paths ending in ".json".
CodeFile read_code_file(const std::string& path);
void write_code_file(const std::string& path, const CodeFile& f);

}  // namespace zpr
