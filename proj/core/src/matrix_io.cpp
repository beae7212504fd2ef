#include "hclust/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hclust/errors.hpp"

namespace hclust {

MatrixFormat matrix_format_from_string(const std::string& s) {
    if (s == "csv")
        return MatrixFormat::csv;
    if (s == "phylip")
        return MatrixFormat::phylip;
    throw ParseError("unknown matrix format '" + s + "'");
}

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open '" + path.string() + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ','))
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.push_back("");
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

double parse_number(const std::string& cell, std::size_t line_no, std::size_t col) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (trim(cell.substr(used)).empty())
            return v;
    } catch (const std::exception&) {
    }
    throw ParseError("bad number '" + trim(cell) + "' at line " +
                     std::to_string(line_no) + ", column " + std::to_string(col));
}

std::vector<std::string> non_empty_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (!trim(line).empty())
            lines.push_back(line);
    }
    return lines;
}

} // namespace

DissimilarityMatrix parse_matrix_csv(const std::string& text, bool strict) {
    const auto lines = non_empty_lines(text);
    if (lines.empty())
        throw ParseError("empty csv input");

    auto header = split_csv_line(lines[0]);
    if (header.size() < 2)
        throw ParseError("csv header needs at least one label");
    std::vector<std::string> labels;
    for (std::size_t i = 1; i < header.size(); ++i)
        labels.push_back(trim(header[i]));
    const std::size_t n = labels.size();

    if (lines.size() != n + 1)
        throw ParseError("expected " + std::to_string(n) + " data rows, found " +
                         std::to_string(lines.size() - 1));

    std::vector<std::vector<double>> values(n, std::vector<double>(n));
    for (std::size_t r = 0; r < n; ++r) {
        const auto cells = split_csv_line(lines[r + 1]);
        if (cells.size() != n + 1)
            throw ParseError("ragged row at line " + std::to_string(r + 2) + ": " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(n + 1));
        if (trim(cells[0]) != labels[r])
            throw ParseError("row label '" + trim(cells[0]) + "' at line " +
                             std::to_string(r + 2) + " does not match column label '" +
                             labels[r] + "'");
        for (std::size_t c = 0; c < n; ++c)
            values[r][c] = parse_number(cells[c + 1], r + 2, c + 2);
    }
    return DissimilarityMatrix::build(std::move(labels), values, strict);
}

DissimilarityMatrix parse_matrix_phylip(const std::string& text, bool strict) {
    const auto lines = non_empty_lines(text);
    if (lines.empty())
        throw ParseError("empty phylip input");

    std::size_t n = 0;
    try {
        n = static_cast<std::size_t>(std::stoul(trim(lines[0])));
    } catch (const std::exception&) {
        throw ParseError("first phylip line must be the object count, got '" +
                         trim(lines[0]) + "'");
    }
    if (lines.size() != n + 1)
        throw ParseError("expected " + std::to_string(n) + " taxon rows, found " +
                         std::to_string(lines.size() - 1));

    std::vector<std::string> labels;
    std::vector<std::vector<double>> values(n, std::vector<double>(n));
    for (std::size_t r = 0; r < n; ++r) {
        std::stringstream ss(lines[r + 1]);
        std::string label;
        if (!(ss >> label))
            throw ParseError("missing label at line " + std::to_string(r + 2));
        labels.push_back(label);
        for (std::size_t c = 0; c < n; ++c) {
            std::string cell;
            if (!(ss >> cell))
                throw ParseError("ragged row at line " + std::to_string(r + 2) +
                                 ": expected " + std::to_string(n) + " values");
            values[r][c] = parse_number(cell, r + 2, c + 2);
        }
        std::string extra;
        if (ss >> extra)
            throw ParseError("trailing data '" + extra + "' at line " +
                             std::to_string(r + 2));
    }
    return DissimilarityMatrix::build(std::move(labels), values, strict);
}

DissimilarityMatrix parse_matrix(const std::filesystem::path& path,
                                 MatrixFormat format, bool strict) {
    const std::string text = slurp(path);
    return format == MatrixFormat::csv ? parse_matrix_csv(text, strict)
                                       : parse_matrix_phylip(text, strict);
}

namespace {

std::string fmt_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string to_csv(const DissimilarityMatrix& d) {
    std::string out;
    for (const auto& l : d.labels()) {
        out += ',';
        out += l;
    }
    out += '\n';
    for (std::size_t i = 0; i < d.size(); ++i) {
        out += d.label(i);
        for (std::size_t j = 0; j < d.size(); ++j) {
            out += ',';
            out += fmt_value(d.at(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string to_phylip(const DissimilarityMatrix& d) {
    std::string out = std::to_string(d.size()) + "\n";
    for (std::size_t i = 0; i < d.size(); ++i) {
        out += d.label(i);
        for (std::size_t j = 0; j < d.size(); ++j) {
            out += ' ';
            out += fmt_value(d.at(i, j));
        }
        out += '\n';
    }
    return out;
}

void write_matrix(const DissimilarityMatrix& d, MatrixFormat format,
                  const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open '" + path.string() + "' for writing");
    os << (format == MatrixFormat::csv ? to_csv(d) : to_phylip(d));
}

} // namespace hclust
