#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace clfinfo {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

double compensated_total(std::span<const double> xs);

/// Categorical distribution over labels; masses are positive and sum to one.
struct Distribution {
    std::vector<std::string> labels;
    std::vector<double> mass;

    /// Normalizes nonnegative weights, dropping zero entries.
    static Distribution from_weights(std::vector<std::string> labels, std::span<const double> weights);

    double probability(const std::string& label) const;
    std::size_t size() const { return labels.size(); }
};

struct JointCell {
    std::size_t row;
    std::size_t col;
    double mass;
};

/// Sorts cells by (row, col), merges duplicates, drops zeros and divides by
/// the compensated total. Returns the total; throws DataError if it is not positive.
double normalize_cells(std::vector<JointCell>& cells);

/// Per-row (or per-column) sums of cell masses.
std::vector<double> row_sums(std::size_t n_rows, std::span<const JointCell> cells);
std::vector<double> col_sums(std::size_t n_cols, std::span<const JointCell> cells);

/// Sparse two-axis distribution p(row, col). Cells are sorted by (row, col),
/// unique, and strictly positive; label lists may extend beyond the support.
class JointDistribution {
public:
    JointDistribution() = default;

    /// Normalizes nonnegative cell weights (duplicates summed, zeros dropped).
    /// Throws DataError if the total weight is not positive.
    static JointDistribution from_weights(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                                          std::vector<JointCell> weights);

    /// Builds from label-keyed weights; labels become the sorted support.
    static JointDistribution from_labeled(const std::map<std::pair<std::string, std::string>, double>& weights);

    const std::vector<std::string>& row_labels() const { return rows_; }
    const std::vector<std::string>& col_labels() const { return cols_; }
    const std::vector<JointCell>& cells() const { return cells_; }

    std::vector<double> row_marginal() const;
    std::vector<double> col_marginal() const;
    std::size_t support_rows() const;
    std::size_t support_cols() const;

    /// p(row, col), 0 when either label is unknown or the cell is empty.
    double mass(const std::string& row, const std::string& col) const;
    double total_mass() const;

    JointDistribution transposed() const;

private:
    std::vector<std::string> rows_;
    std::vector<std::string> cols_;
    std::vector<JointCell> cells_;
};

}  // namespace clfinfo
