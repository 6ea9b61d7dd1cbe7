#pragma once

#include <span>

#include "clfinfo/distribution.hpp"

namespace clfinfo {

// Plug-in estimators. All quantities are in bits; sums run in label order
// with compensated accumulation, so results are reproducible bit for bit.

enum class Axis { rows, cols };

double entropy(std::span<const double> probabilities);
double entropy(const Distribution& d);

/// Entropy of one marginal of a joint: H(C) for Axis::rows, H(X) for Axis::cols.
double marginal_entropy(const JointDistribution& j, Axis axis);

/// I(C;X) = sum p(c,x) log2 p(c,x) / (p(c) p(x)). Values in [-1e-12, 0) are clamped to 0.
double mutual_information(const JointDistribution& j);

/// Same, over normalized cells (see normalize_cells) of an n_rows x n_cols joint.
double mutual_information(std::size_t n_rows, std::size_t n_cols, std::span<const JointCell> cells);

/// H(other axis | given axis). With given = Axis::cols this is H(C | X).
double conditional_entropy(const JointDistribution& j, Axis given = Axis::cols);

/// H(C), H(C|X) and I(C;X) for one joint.
struct EntropySummary {
    double h_rows = 0.0;
    double h_rows_given_cols = 0.0;
    double mi = 0.0;
};

EntropySummary summarize(const JointDistribution& j);

}  // namespace clfinfo
