#include "clfinfo/distribution.hpp"

#include <algorithm>

#include "clfinfo/error.hpp"

namespace clfinfo {

double compensated_total(std::span<const double> xs) {
    CompensatedSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

Distribution Distribution::from_weights(std::vector<std::string> labels, std::span<const double> weights) {
    if (labels.size() != weights.size()) throw std::invalid_argument("label/weight size mismatch");
    const double total = compensated_total(weights);
    if (!(total > 0.0)) throw DataError("distribution has no mass");
    Distribution d;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (weights[i] < 0.0) throw DataError("negative weight for '" + labels[i] + "'");
        if (weights[i] == 0.0) continue;
        d.labels.push_back(std::move(labels[i]));
        d.mass.push_back(weights[i] / total);
    }
    return d;
}

double Distribution::probability(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) return mass[i];
    }
    return 0.0;
}

double normalize_cells(std::vector<JointCell>& cells) {
    std::sort(cells.begin(), cells.end(), [](const JointCell& a, const JointCell& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::size_t out = 0;
    CompensatedSum total;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& c = cells[i];
        if (c.mass < 0.0 || !std::isfinite(c.mass)) throw DataError("invalid cell weight");
        if (c.mass == 0.0) continue;
        if (out > 0 && cells[out - 1].row == c.row && cells[out - 1].col == c.col) {
            cells[out - 1].mass += c.mass;
        } else {
            cells[out++] = c;
        }
        total.add(c.mass);
    }
    cells.resize(out);
    const double t = total.value();
    if (!(t > 0.0)) throw DataError("no observations");
    for (auto& c : cells) c.mass /= t;
    return t;
}

std::vector<double> row_sums(std::size_t n_rows, std::span<const JointCell> cells) {
    std::vector<CompensatedSum> acc(n_rows);
    for (const auto& c : cells) acc[c.row].add(c.mass);
    std::vector<double> out(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) out[i] = acc[i].value();
    return out;
}

std::vector<double> col_sums(std::size_t n_cols, std::span<const JointCell> cells) {
    std::vector<CompensatedSum> acc(n_cols);
    for (const auto& c : cells) acc[c.col].add(c.mass);
    std::vector<double> out(n_cols);
    for (std::size_t i = 0; i < n_cols; ++i) out[i] = acc[i].value();
    return out;
}

JointDistribution JointDistribution::from_weights(std::vector<std::string> row_labels,
                                                  std::vector<std::string> col_labels,
                                                  std::vector<JointCell> weights) {
    for (const auto& c : weights) {
        if (c.row >= row_labels.size() || c.col >= col_labels.size()) throw std::out_of_range("joint cell index");
    }
    normalize_cells(weights);
    JointDistribution j;
    j.rows_ = std::move(row_labels);
    j.cols_ = std::move(col_labels);
    j.cells_ = std::move(weights);
    return j;
}

JointDistribution JointDistribution::from_labeled(const std::map<std::pair<std::string, std::string>, double>& weights) {
    std::map<std::string, std::size_t> row_idx, col_idx;
    for (const auto& [key, w] : weights) {
        if (w <= 0.0) continue;
        row_idx.emplace(key.first, 0);
        col_idx.emplace(key.second, 0);
    }
    std::vector<std::string> rows, cols;
    for (auto& [label, i] : row_idx) {
        i = rows.size();
        rows.push_back(label);
    }
    for (auto& [label, i] : col_idx) {
        i = cols.size();
        cols.push_back(label);
    }
    std::vector<JointCell> cells;
    cells.reserve(weights.size());
    for (const auto& [key, w] : weights) {
        if (w < 0.0) throw DataError("negative weight for (" + key.first + ", " + key.second + ")");
        if (w == 0.0) continue;
        cells.push_back({row_idx.at(key.first), col_idx.at(key.second), w});
    }
    return from_weights(std::move(rows), std::move(cols), std::move(cells));
}

std::vector<double> JointDistribution::row_marginal() const { return row_sums(rows_.size(), cells_); }

std::vector<double> JointDistribution::col_marginal() const { return col_sums(cols_.size(), cells_); }

std::size_t JointDistribution::support_rows() const {
    auto m = row_marginal();
    return static_cast<std::size_t>(std::count_if(m.begin(), m.end(), [](double x) { return x > 0.0; }));
}

std::size_t JointDistribution::support_cols() const {
    auto m = col_marginal();
    return static_cast<std::size_t>(std::count_if(m.begin(), m.end(), [](double x) { return x > 0.0; }));
}

double JointDistribution::mass(const std::string& row, const std::string& col) const {
    for (const auto& c : cells_) {
        if (rows_[c.row] == row && cols_[c.col] == col) return c.mass;
    }
    return 0.0;
}

double JointDistribution::total_mass() const {
    CompensatedSum s;
    for (const auto& c : cells_) s.add(c.mass);
    return s.value();
}

JointDistribution JointDistribution::transposed() const {
    JointDistribution t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.cells_.reserve(cells_.size());
    for (const auto& c : cells_) t.cells_.push_back({c.col, c.row, c.mass});
    std::sort(t.cells_.begin(), t.cells_.end(), [](const JointCell& a, const JointCell& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    return t;
}

}  // namespace clfinfo
