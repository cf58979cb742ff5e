#include "aivip/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aivip {

Dataset::Dataset(std::vector<std::string> cols, Eigen::MatrixXd vals)
    : columns(std::move(cols)), values(std::move(vals)) {
    if (static_cast<Eigen::Index>(columns.size()) != values.cols())
        throw std::invalid_argument("column count does not match matrix width");
    if (values.rows() < 2) throw std::invalid_argument("dataset needs at least 2 rows");
    if (!values.allFinite()) throw std::invalid_argument("dataset contains non-finite values");
    for (size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].empty()) throw std::invalid_argument("empty column name");
        for (size_t j = i + 1; j < columns.size(); ++j)
            if (columns[i] == columns[j])
                throw std::invalid_argument("duplicate column: " + columns[i]);
    }
}

int Dataset::column(std::string_view name) const {
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("unknown column: " + std::string(name));
}

Eigen::VectorXd Dataset::col(std::string_view name) const { return values.col(column(name)); }

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

}  // namespace

Dataset read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv_line(line);
    if (header.empty()) throw std::invalid_argument("CSV header has no columns");

    std::vector<double> flat;
    Eigen::Index rows = 0;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(header.size()) + " fields, got " +
                                        std::to_string(fields.size()));
        for (const auto& f : fields) {
            size_t used = 0;
            double v = 0;
            try {
                v = std::stod(f, &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": non-numeric value '" + f + "'");
            }
            if (used != f.size() || !std::isfinite(v))
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": non-numeric value '" + f + "'");
            flat.push_back(v);
        }
        ++rows;
    }
    Eigen::MatrixXd m(rows, static_cast<Eigen::Index>(header.size()));
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = flat[r * m.cols() + c];
    return Dataset(header, std::move(m));
}

Dataset read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open data file: " + path);
    return read_csv(in);
}

void write_csv(const Dataset& d, std::ostream& out, int precision) {
    for (size_t i = 0; i < d.columns.size(); ++i) {
        if (i) out << ',';
        out << d.columns[i];
    }
    out << '\n';
    std::ostringstream cell;
    cell.precision(precision);
    for (Eigen::Index r = 0; r < d.values.rows(); ++r) {
        for (Eigen::Index c = 0; c < d.values.cols(); ++c) {
            if (c) out << ',';
            cell.str("");
            cell << d.values(r, c);
            out << cell.str();
        }
        out << '\n';
    }
}

void write_csv_file(const Dataset& d, const std::string& path, int precision) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_csv(d, out, precision);
}

}  // namespace aivip
