#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace aivip {

/// Rectangular numeric dataset with named columns. No missing values: CSV
/// ingestion rejects empty or non-numeric cells, construction rejects
/// non-finite entries and fewer than two rows.
struct Dataset {
    std::vector<std::string> columns;
    Eigen::MatrixXd values;  // n rows, one column per name

    Dataset() = default;
    Dataset(std::vector<std::string> columns, Eigen::MatrixXd values);

    Eigen::Index rows() const { return values.rows(); }
    int cols() const { return static_cast<int>(columns.size()); }
    int column(std::string_view name) const;  // throws on unknown column
    Eigen::VectorXd col(std::string_view name) const;
};

Dataset read_csv(std::istream& in);
Dataset read_csv_file(const std::string& path);
void write_csv(const Dataset& d, std::ostream& out, int precision = 6);
void write_csv_file(const Dataset& d, const std::string& path, int precision = 6);

}  // namespace aivip
