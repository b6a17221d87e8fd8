#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ppattach {

/// Error for malformed input files. Carries the source name, 1-based line
/// and 1-based column (0 when unknown) so the CLI can print "file:line:col".
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string message, std::string source = {}, std::size_t line = 0,
              std::size_t column = 0)
      : std::runtime_error(render(message, source, line, column)),
        message_(std::move(message)),
        source_(std::move(source)),
        line_(line),
        column_(column) {}

  const std::string& message() const { return message_; }
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

  /// Rebuild with location info filled in (used by the corpus readers, which
  /// know the file name and line while the per-line parsers only know columns).
  FormatError at(std::string_view source, std::size_t line) const {
    return FormatError(message_, std::string(source), line, column_);
  }

 private:
  static std::string render(const std::string& message, const std::string& source,
                            std::size_t line, std::size_t column) {
    std::string out;
    if (!source.empty()) out += source + ":";
    if (line > 0) out += std::to_string(line) + ":";
    if (column > 0) out += std::to_string(column) + ":";
    if (!out.empty()) out += " ";
    return out + message;
  }

  std::string message_;
  std::string source_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ppattach
