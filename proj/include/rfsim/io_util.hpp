#ifndef RFSIM_IO_UTIL_HPP
#define RFSIM_IO_UTIL_HPP

#include <string>
#include <vector>

namespace rfsim::io {

/// Split one CSV record. Handles quoted fields with doubled inner quotes.
std::vector<std::string> csv_split(const std::string& line);

/// Quote a field when it contains a comma, quote, or newline.
std::string csv_escape(const std::string& field);

double parse_double(const std::string& text, const std::string& source, int line_no);

std::string read_file(const std::string& path);

/// Write via a temp file in the same directory, then rename. The target is
/// either complete or untouched.
void write_file_atomic(const std::string& path, const std::string& content);

/// Worker count for parallel sections: explicit request > RFSIM_WORKERS env
/// var > hardware concurrency.
int resolve_worker_count(int requested);

}  // namespace rfsim::io

#endif  // RFSIM_IO_UTIL_HPP
