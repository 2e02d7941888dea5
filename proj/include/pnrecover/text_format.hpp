#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small helpers shared by the text file formats. Doubles are written in the
// shortest form that round-trips exactly, so files are byte-stable.
namespace pnrecover::text {

std::string formatDouble(double v);

std::optional<double> parseDouble(std::string_view s);
std::optional<std::uint64_t> parseUnsigned(std::string_view s);
std::optional<bool> parseBool(std::string_view s);

std::string_view trim(std::string_view s);

std::vector<std::string_view> splitComma(std::string_view line);

/// Lines of `text` without terminators; a trailing empty line is dropped.
std::vector<std::string_view> splitLines(std::string_view text);

std::string readFile(const std::string& path);
void writeFile(const std::string& path, std::string_view contents);

}  // namespace pnrecover::text
