#pragma once

#include <string>

namespace mtcavity {

// Shortest decimal string that round-trips the double (<= 17 significant
// digits).  All CSV/JSON artifacts go through this so repeated runs are
// byte-identical.
std::string format_double(double value);

// Write content atomically enough for our purposes; throws IoError.
void write_text_file(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

// mkdir -p; throws IoError.
void ensure_directory(const std::string& path);

}  // namespace mtcavity
