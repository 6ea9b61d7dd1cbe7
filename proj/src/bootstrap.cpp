#include "clfinfo/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "clfinfo/error.hpp"
#include "clfinfo/infotheory.hpp"

namespace clfinfo {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t total_of(std::span<const std::uint64_t> counts) {
    std::uint64_t n = 0;
    for (auto c : counts) n += c;
    return n;
}

}  // namespace

void BootstrapConfig::validate() const {
    if (replicates < 1) throw ConfigError("bootstrap replicates must be at least 1");
    if (!(confidence > 0.0 && confidence < 1.0)) throw ConfigError("bootstrap confidence must lie in (0, 1)");
}

std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t replicate) {
    return splitmix64(splitmix64(seed) ^ splitmix64(replicate + 0x632BE59BD9B4E019ULL));
}

std::vector<std::uint64_t> resample_counts(std::span<const std::uint64_t> counts, std::mt19937_64& rng) {
    std::vector<std::uint64_t> out(counts.size(), 0);
    std::uint64_t remaining_draws = total_of(counts);
    std::uint64_t remaining_mass = remaining_draws;
    for (std::size_t i = 0; i < counts.size() && remaining_draws > 0; ++i) {
        if (counts[i] == 0) continue;
        if (counts[i] == remaining_mass) {
            out[i] = remaining_draws;
            break;
        }
        const double p = static_cast<double>(counts[i]) / static_cast<double>(remaining_mass);
        std::binomial_distribution<long long> draw(static_cast<long long>(remaining_draws), p);
        const auto k = static_cast<std::uint64_t>(draw(rng));
        out[i] = k;
        remaining_draws -= k;
        remaining_mass -= counts[i];
    }
    return out;
}

std::vector<double> bootstrap_replicates(std::span<const std::uint64_t> counts, const ReplicateStatistic& statistic,
                                         const BootstrapConfig& cfg) {
    cfg.validate();
    if (total_of(counts) == 0) throw DataError("bootstrap needs at least one observation");
    std::vector<double> out(cfg.replicates);
    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            std::mt19937_64 rng(replicate_seed(cfg.seed, r));
            out[r] = statistic(resample_counts(counts, rng));
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(cfg.threads, 1, cfg.replicates);
    if (workers == 1) {
        run(0, cfg.replicates);
        return out;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (cfg.replicates + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(cfg.replicates, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(run, begin, end);
    }
    return out;
}

IntervalEstimate percentile_interval(std::vector<double> samples, double point, double confidence) {
    if (samples.empty()) throw DataError("no bootstrap replicates");
    if (!(confidence > 0.0 && confidence < 1.0)) throw ConfigError("confidence must lie in (0, 1)");
    std::sort(samples.begin(), samples.end());
    const auto b = static_cast<double>(samples.size());
    const double tail = (1.0 - confidence) / 2.0;
    // 1e-9 keeps q*B from rounding up past an exact integer rank.
    auto rank = [&](double q) {
        const double r = std::ceil(q * b - 1e-9);
        return static_cast<std::size_t>(std::clamp(r, 1.0, b)) - 1;
    };
    IntervalEstimate e;
    e.point = point;
    e.lower = samples[rank(tail)];
    e.upper = samples[rank(1.0 - tail)];
    e.replicates_used = samples.size();
    e.point_outside = point < e.lower || point > e.upper;
    return e;
}

IntervalEstimate bootstrap_mi(std::span<const std::uint64_t> counts, const JointBuilder& build,
                              const BootstrapConfig& cfg) {
    if (total_of(counts) == 0) throw DataError("bootstrap needs at least one observation");
    const double point = mutual_information(build(counts));
    auto samples = bootstrap_replicates(
        counts, [&](std::span<const std::uint64_t> c) { return mutual_information(build(c)); }, cfg);
    return percentile_interval(std::move(samples), point, cfg.confidence);
}

IntervalEstimate bootstrap_mi(const ObservationSet& observations, const BootstrapConfig& cfg) {
    const auto counts = observations.counts();
    if (total_of(counts) == 0) throw DataError("bootstrap needs at least one observation");
    const double point = observations.mutual_information(counts);
    auto samples = bootstrap_replicates(
        counts, [&](std::span<const std::uint64_t> c) { return observations.mutual_information(c); }, cfg);
    return percentile_interval(std::move(samples), point, cfg.confidence);
}

}  // namespace clfinfo
