#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "clfinfo/bootstrap.hpp"
#include "clfinfo/config.hpp"
#include "clfinfo/counts.hpp"
#include "clfinfo/lexicon.hpp"
#include "clfinfo/projection.hpp"

namespace clfinfo {

inline constexpr const char* kReportSchema = "clfinfo-report/1";
/// Tolerance for the H(C) - H(C|X) = I(C;X) check at emission.
inline constexpr double kIdentityTolerance = 1e-9;

struct MIRecord {
    std::string analysis;
    std::string category;
    double h_c = 0.0;
    double h_c_given_x = 0.0;
    double i_c_x = 0.0;
    IntervalEstimate interval;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::uint64_t observation_total = 0;
    std::uint64_t dropped_observations = 0;
    double dropped_mass = 0.0;
    std::optional<double> h_c_global;  // supersense categories only
};

struct CategoryReport {
    std::string analysis;
    std::size_t categories_declared = 0;
    std::size_t lemmas_mapped = 0;
    std::size_t lemmas_unmapped = 0;
    std::size_t lemmas_multi_category = 0;
    std::uint64_t unmapped_observations = 0;
    std::vector<MIRecord> categories;  // sorted by I descending
    std::vector<std::string> skipped;  // declared categories with no observations
};

struct ConditionalReport {
    std::string noun;
    std::uint64_t observations = 0;
    std::vector<std::pair<std::string, double>> classifiers;  // p(C | N = noun), descending
};

struct MIReport {
    nlohmann::ordered_json settings;
    nlohmann::ordered_json inputs;
    std::vector<MIRecord> analyses;
    std::optional<CategoryReport> noun_supersense;
    std::optional<CategoryReport> adjective_supersense;
    std::vector<ConditionalReport> conditionals;
};

/// Point estimates and bootstrap interval for one analysis joint.
MIRecord measure(const AnalysisJoint& joint, const BootstrapConfig& cfg);

/// Lexicon inputs for analyze; any may be absent.
struct LexiconInputs {
    std::optional<Dictionary> dictionary;
    std::optional<Inventory> noun_supersenses;
    std::optional<Inventory> adjective_supersenses;
    std::optional<Inventory> synsets;
};

/// Analyses to run: cfg.analyses if set, otherwise noun (and adjective when
/// triples exist) plus every lexicon analysis whose inputs are present.
/// Throws ConfigError listing missing inputs for explicitly requested analyses.
std::vector<AnalysisKind> resolve_analyses(const RunConfig& cfg, bool have_triples);

MIReport analyze(const PairCount& pairs, const TripleCount* triples, const LexiconInputs& lexicon,
                 const std::vector<AnalysisKind>& analyses, const RunConfig& cfg,
                 const CountsMetadata& extraction_metadata = {});

/// Checks every record's entropy identity; throws std::logic_error on violation.
void check_identity(const MIReport& report);

nlohmann::ordered_json to_json(const MIReport& report);

/// `category,H_C,I,H_C_given,ci_lo,ci_hi` rows, sorted by I descending.
void write_category_csv(std::ostream& out, const CategoryReport& report);

/// Aligned text tables for a report JSON. Throws FormatError naming the
/// offending field path when the document does not match the schema.
std::string render_report(const nlohmann::json& report);

}  // namespace clfinfo
