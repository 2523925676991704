#include "fracpvar/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "fracpvar/errors.hpp"

namespace fracpvar {

std::string format_double(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

namespace {

double parse_double(const std::string& token, const std::filesystem::path& path) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc{} || result.ptr != end)
        throw IoError("malformed number '" + token + "' in " + path.string());
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> tokens;
    std::stringstream stream(line);
    std::string token;
    while (std::getline(stream, token, ',')) tokens.push_back(token);
    return tokens;
}

} // namespace

void write_field_csv(const std::filesystem::path& path, const Field& u) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    const Grid& g = *u.grid;
    out << (g.dim() == 1 ? "x0,value\n" : "x0,x1,value\n");
    for (std::size_t i = 0; i < u.size(); ++i) {
        out << format_double(g.node(i)[0]);
        if (g.dim() == 2) out << ',' << format_double(g.node(i)[1]);
        out << ',' << format_double(u.values[i]) << '\n';
    }
    if (!out) throw IoError("write failed for " + path.string());
}

Field read_field_csv(const std::filesystem::path& path,
                     std::shared_ptr<const Grid> grid) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty field file " + path.string());

    Field u(grid);
    std::size_t row = 0;
    const std::size_t coords = grid->dim() == 1 ? 1 : 2;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto tokens = split_csv_line(line);
        if (tokens.size() != coords + 1)
            throw IoError("bad column count in " + path.string());
        if (row >= grid->size())
            throw IoError("field file " + path.string() + " has more rows than the grid");
        for (std::size_t axis = 0; axis < coords; ++axis) {
            if (parse_double(tokens[axis], path) != grid->node(row)[axis])
                throw IoError("field file " + path.string() +
                              " does not match the configured grid");
        }
        u.values[row] = parse_double(tokens[coords], path);
        ++row;
    }
    if (row != grid->size())
        throw IoError("field file " + path.string() + " has fewer rows than the grid");
    return u;
}

std::pair<std::vector<double>, std::vector<double>> read_table_csv(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open table " + path.string());
    std::vector<double> abscissae;
    std::vector<double> values;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto tokens = split_csv_line(line);
        if (tokens.size() != 2) throw IoError("table " + path.string() + " needs two columns");
        if (first) {
            first = false;
            double probe = 0.0;
            const auto result =
                std::from_chars(tokens[0].data(), tokens[0].data() + tokens[0].size(), probe);
            if (result.ec != std::errc{}) continue; // header line
        }
        abscissae.push_back(parse_double(tokens[0], path));
        values.push_back(parse_double(tokens[1], path));
    }
    if (abscissae.size() < 2) throw IoError("table " + path.string() + " has too few rows");
    return {std::move(abscissae), std::move(values)};
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw IoError("write failed for " + path.string());
}

} // namespace fracpvar
