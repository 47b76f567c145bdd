#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace skewmix {

/// n x p observation matrix with optional class labels and standardization
/// metadata for inverting a z-score transform.
struct DataMatrix {
    Eigen::MatrixXd values;
    std::optional<std::vector<int>> labels;       // 0..K-1, every class nonempty
    std::optional<Eigen::VectorXd> column_means;
    std::optional<Eigen::VectorXd> column_sds;

    int n() const { return static_cast<int>(values.rows()); }
    int p() const { return static_cast<int>(values.cols()); }
};

/// Reads a headered CSV of numeric columns ('.' decimals, no quoting).
/// When label_column names a column, it is removed from the features and
/// its distinct values become labels 0..K-1 in order of first appearance.
DataMatrix load_csv(const std::string& path, const std::optional<std::string>& label_column = {});

/// Per-column z-scores; the returned matrix stores means/sds for inversion.
/// A zero-variance column raises contract_error naming the column.
DataMatrix standardize(const DataMatrix& data);

/// Inverts standardize using the stored metadata.
DataMatrix destandardize(const DataMatrix& data);

/// Row-wise argmax with ties broken toward the lower index.
std::vector<int> map_assign(const Eigen::MatrixXd& responsibilities);

/// Adjusted Rand index between two labelings of the same n items, computed
/// with exact integer pair counts.
double ari(const std::vector<int>& a, const std::vector<int>& b);

/// Writes labels as a single-column CSV with header "cluster".
void write_labels_csv(const std::string& path, const std::vector<int>& labels);

} // namespace skewmix
