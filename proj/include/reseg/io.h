#pragma once

#include <string>
#include <string_view>

namespace reseg {

std::string read_file(const std::string& path);

// Writes `contents` to a sibling temporary file and renames it over `path`,
// so readers never observe a partially written file.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace reseg
