#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fracpvar/field.hpp"

namespace fracpvar {

// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double value);

// Field CSV: header x0[,x1],value, one node per row in grid order.
void write_field_csv(const std::filesystem::path& path, const Field& u);

// Reads a field written by write_field_csv and checks the coordinates match
// the grid bit-exactly. Throws IoError on any mismatch.
Field read_field_csv(const std::filesystem::path& path,
                     std::shared_ptr<const Grid> grid);

// Two-column (s, f(s)) table for tabulated nonlinearities; a non-numeric
// first line is treated as a header.
std::pair<std::vector<double>, std::vector<double>> read_table_csv(
    const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace fracpvar
