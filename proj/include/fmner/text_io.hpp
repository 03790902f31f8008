#pragma once

#include <filesystem>
#include <functional>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fmner {

/// Shortest-safe decimal form of a double: 17 significant digits, so
/// parse_real(format_real(x)) == x bit for bit.
std::string format_real(double value);

/// Strict decimal parse of the whole token; nullopt on trailing junk,
/// empty input or out-of-range values.
std::optional<double> parse_real(std::string_view token);
std::optional<long long> parse_integer(std::string_view token);

/// Splits on runs of spaces/tabs; never yields empty tokens.
std::vector<std::string_view> split_whitespace(std::string_view line);

/// Splits on every occurrence of `sep`, keeping empty fields.
std::vector<std::string_view> split_exact(std::string_view line, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Reads a file line by line, remembering the 1-based number of the last
/// line returned so that parse errors can point at it.
class LineReader {
public:
  LineReader(std::istream& in, std::string source);

  /// Next line without its terminator ('\r' stripped too); nullopt at EOF.
  std::optional<std::string> next();

  /// Like next(), but a missing line is a ParseError.
  std::string expect(std::string_view what);

  std::size_t line_number() const noexcept { return line_; }
  const std::string& source() const noexcept { return source_; }

  [[noreturn]] void fail(const std::string& message) const;

private:
  std::istream& in_;
  std::string source_;
  std::size_t line_ = 0;
};

/// Opens `path` for reading or throws IoError.
std::ifstream open_input(const std::filesystem::path& path);

/// Writes via `writer` into a sibling temporary and renames it over
/// `path`, so the target either holds the complete output or is untouched.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer);

} // namespace fmner
