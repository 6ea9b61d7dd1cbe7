#include "clfinfo/infotheory.hpp"

#include <cmath>

namespace clfinfo {

namespace {

constexpr double kClampTolerance = 1e-12;

}  // namespace

double entropy(std::span<const double> probabilities) {
    CompensatedSum s;
    for (double p : probabilities) {
        if (p > 0.0) s.add(-p * std::log2(p));
    }
    // -0.0 and tiny negative round-off both read as zero.
    const double h = s.value();
    return h > 0.0 ? h : 0.0;
}

double entropy(const Distribution& d) { return entropy(d.mass); }

double marginal_entropy(const JointDistribution& j, Axis axis) {
    const auto m = axis == Axis::rows ? j.row_marginal() : j.col_marginal();
    return entropy(m);
}

double mutual_information(const JointDistribution& j) {
    return mutual_information(j.row_labels().size(), j.col_labels().size(), j.cells());
}

double mutual_information(std::size_t n_rows, std::size_t n_cols, std::span<const JointCell> cells) {
    const auto pr = row_sums(n_rows, cells);
    const auto pc = col_sums(n_cols, cells);
    CompensatedSum s;
    for (const auto& c : cells) {
        s.add(c.mass * std::log2(c.mass / (pr[c.row] * pc[c.col])));
    }
    const double mi = s.value();
    if (mi < 0.0 && mi >= -kClampTolerance) return 0.0;
    return mi;
}

double conditional_entropy(const JointDistribution& j, Axis given) {
    const auto pg = given == Axis::cols ? j.col_marginal() : j.row_marginal();
    CompensatedSum s;
    for (const auto& c : j.cells()) {
        const double p_given = pg[given == Axis::cols ? c.col : c.row];
        s.add(-c.mass * std::log2(c.mass / p_given));
    }
    const double h = s.value();
    return h > 0.0 ? h : 0.0;
}

EntropySummary summarize(const JointDistribution& j) {
    EntropySummary out;
    out.h_rows = marginal_entropy(j, Axis::rows);
    out.h_rows_given_cols = conditional_entropy(j, Axis::cols);
    out.mi = mutual_information(j);
    return out;
}

}  // namespace clfinfo
