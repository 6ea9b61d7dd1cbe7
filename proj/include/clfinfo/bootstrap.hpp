#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "clfinfo/distribution.hpp"
#include "clfinfo/projection.hpp"

namespace clfinfo {

struct BootstrapConfig {
    std::size_t replicates = 1000;
    double confidence = 0.95;
    std::uint64_t seed = 20190601;
    unsigned threads = 1;  // never changes results

    void validate() const;
};

struct IntervalEstimate {
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    std::size_t replicates_used = 0;
    /// Percentile intervals can exclude the full-data estimate; flagged, not corrected.
    bool point_outside = false;
};

/// Seed for replicate r, a splitmix64 mix of (seed, r). Replicate r draws
/// only from its own engine, so output is independent of evaluation order.
std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t replicate);

/// One with-replacement resample of sum(counts) draws from the multiset,
/// returned as per-unit multiplicities (multinomial via conditional binomials).
std::vector<std::uint64_t> resample_counts(std::span<const std::uint64_t> counts, std::mt19937_64& rng);

using ReplicateStatistic = std::function<double(std::span<const std::uint64_t>)>;

/// Statistic value for each replicate, in replicate order.
std::vector<double> bootstrap_replicates(std::span<const std::uint64_t> counts, const ReplicateStatistic& statistic,
                                         const BootstrapConfig& cfg);

/// Nearest-rank percentile interval: ranks ceil(q B) for q = (1 - confidence) / 2
/// and 1 - q, over the sorted sample.
IntervalEstimate percentile_interval(std::vector<double> samples, double point, double confidence);

using JointBuilder = std::function<JointDistribution(std::span<const std::uint64_t>)>;

/// Percentile bootstrap of plug-in MI. `build` maps per-unit counts to a joint.
/// Throws DataError when the multiset is empty.
IntervalEstimate bootstrap_mi(std::span<const std::uint64_t> counts, const JointBuilder& build,
                              const BootstrapConfig& cfg);

/// Same, resampling the analysis' own tuple observations.
IntervalEstimate bootstrap_mi(const ObservationSet& observations, const BootstrapConfig& cfg);

}  // namespace clfinfo
