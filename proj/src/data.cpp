#include "skewmix/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "skewmix/errors.hpp"

namespace skewmix {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim surrounding whitespace and a possible trailing \r
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

} // namespace

DataMatrix load_csv(const std::string& path, const std::optional<std::string>& label_column) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw parse_error("empty file: " + path);
    const std::vector<std::string> header = split_line(line);
    const int n_cols = static_cast<int>(header.size());
    if (n_cols < 1) throw parse_error("header row has no columns", 1);

    int label_idx = -1;
    if (label_column) {
        for (int j = 0; j < n_cols; ++j) {
            if (header[j] == *label_column) { label_idx = j; break; }
        }
        if (label_idx < 0) {
            std::string cols;
            for (int j = 0; j < n_cols; ++j) cols += (j ? ", " : "") + header[j];
            throw parse_error("label column '" + *label_column + "' not found; available columns: " + cols, 1);
        }
        if (n_cols < 2) throw parse_error("no feature columns besides the label", 1);
    }

    std::vector<std::vector<double>> rows;
    std::vector<std::string> raw_labels;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_line(line);
        if (static_cast<int>(cells.size()) != n_cols) {
            throw parse_error("ragged row: expected " + std::to_string(n_cols) + " cells, found " +
                                  std::to_string(cells.size()),
                              line_no);
        }
        std::vector<double> row;
        row.reserve(n_cols - (label_idx >= 0 ? 1 : 0));
        for (int j = 0; j < n_cols; ++j) {
            if (j == label_idx) {
                raw_labels.push_back(cells[j]);
                continue;
            }
            double v;
            const auto* first = cells[j].data();
            const auto* last = first + cells[j].size();
            const auto res = std::from_chars(first, last, v);
            if (res.ec != std::errc() || res.ptr != last) {
                throw parse_error("non-numeric cell '" + cells[j] + "'", line_no, j + 1);
            }
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw parse_error("no data rows in " + path);

    DataMatrix out;
    const int n = static_cast<int>(rows.size());
    const int p = static_cast<int>(rows[0].size());
    out.values.resize(n, p);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) out.values(i, j) = rows[i][j];
    }
    if (label_idx >= 0) {
        std::vector<int> labels(n);
        std::map<std::string, int> seen;
        for (int i = 0; i < n; ++i) {
            auto [it, inserted] = seen.emplace(raw_labels[i], static_cast<int>(seen.size()));
            labels[i] = it->second;
        }
        out.labels = std::move(labels);
    }
    return out;
}

DataMatrix standardize(const DataMatrix& data) {
    const int n = data.n();
    const int p = data.p();
    if (n < 2) throw contract_error("standardize: need at least two rows");
    Eigen::VectorXd means = data.values.colwise().mean();
    Eigen::VectorXd sds(p);
    for (int j = 0; j < p; ++j) {
        const double var = (data.values.col(j).array() - means[j]).square().sum() / (n - 1);
        if (!(var > 0.0)) {
            throw contract_error("standardize: column " + std::to_string(j) + " has zero variance");
        }
        sds[j] = std::sqrt(var);
    }
    DataMatrix out;
    out.values = (data.values.rowwise() - means.transpose()).array().rowwise() /
                 sds.transpose().array();
    out.labels = data.labels;
    out.column_means = means;
    out.column_sds = sds;
    return out;
}

DataMatrix destandardize(const DataMatrix& data) {
    if (!data.column_means || !data.column_sds) {
        throw contract_error("destandardize: no standardization metadata present");
    }
    DataMatrix out;
    out.values = (data.values.array().rowwise() * data.column_sds->transpose().array()).matrix()
                     .rowwise() + data.column_means->transpose();
    out.labels = data.labels;
    return out;
}

std::vector<int> map_assign(const Eigen::MatrixXd& responsibilities) {
    const int n = static_cast<int>(responsibilities.rows());
    const int g = static_cast<int>(responsibilities.cols());
    std::vector<int> labels(n, 0);
    for (int i = 0; i < n; ++i) {
        double best = responsibilities(i, 0);
        for (int h = 1; h < g; ++h) {
            if (responsibilities(i, h) > best) { // strict: ties stay at the lower index
                best = responsibilities(i, h);
                labels[i] = h;
            }
        }
    }
    return labels;
}

double ari(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw contract_error("ari: label vectors differ in length");
    const long long n = static_cast<long long>(a.size());
    if (n < 2) throw contract_error("ari: need at least two items");

    std::map<int, int> amap, bmap;
    for (int v : a) amap.emplace(v, static_cast<int>(amap.size()));
    for (int v : b) bmap.emplace(v, static_cast<int>(bmap.size()));
    const int ka = static_cast<int>(amap.size());
    const int kb = static_cast<int>(bmap.size());

    std::vector<long long> table(static_cast<std::size_t>(ka) * kb, 0);
    std::vector<long long> arow(ka, 0), bcol(kb, 0);
    for (long long i = 0; i < n; ++i) {
        const int ia = amap[a[i]];
        const int ib = bmap[b[i]];
        ++table[static_cast<std::size_t>(ia) * kb + ib];
        ++arow[ia];
        ++bcol[ib];
    }

    auto choose2 = [](long long m) -> long long { return m * (m - 1) / 2; };
    long long sum_cells = 0;
    for (long long v : table) sum_cells += choose2(v);
    long long sum_a = 0, sum_b = 0;
    for (long long v : arow) sum_a += choose2(v);
    for (long long v : bcol) sum_b += choose2(v);
    const long long pairs = choose2(n);

    // expected index and max index can overflow 64 bits near n = 1e6
    const __int128 expected_num = static_cast<__int128>(sum_a) * sum_b;
    const long double expected = static_cast<long double>(expected_num) / pairs;
    const long double max_index = (static_cast<long double>(sum_a) + sum_b) / 2.0L;
    const long double denom = max_index - expected;
    if (denom == 0.0L) {
        // both partitions trivial (all singletons vs ... ): identical iff cells match
        return (sum_cells == max_index) ? 1.0 : 0.0;
    }
    return static_cast<double>((static_cast<long double>(sum_cells) - expected) / denom);
}

void write_labels_csv(const std::string& path, const std::vector<int>& labels) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open for writing: " + path);
    out << "cluster\n";
    for (int v : labels) out << v << "\n";
}

} // namespace skewmix
