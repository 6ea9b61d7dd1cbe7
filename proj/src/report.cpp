#include "clfinfo/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "clfinfo/error.hpp"
#include "clfinfo/infotheory.hpp"

namespace clfinfo {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void sort_by_mi(std::vector<MIRecord>& records) {
    std::sort(records.begin(), records.end(), [](const MIRecord& a, const MIRecord& b) {
        if (a.i_c_x != b.i_c_x) return a.i_c_x > b.i_c_x;
        return a.category < b.category;
    });
}

template <typename Count>
std::set<std::string> column_labels(const Count& table, std::size_t column) {
    std::set<std::string> out;
    for (const auto& [key, n] : table.entries()) out.insert(key[column]);
    return out;
}

template <typename Count>
CategoryReport categorize(const std::string& analysis, const Count& table, std::size_t column,
                          const Inventory& inventory, const Membership& membership, double h_c_global,
                          const BootstrapConfig& cfg,
                          std::optional<AnalysisJoint> (*build)(const Count&, const std::string&, const Membership&)) {
    CategoryReport r;
    r.analysis = analysis;
    r.categories_declared = inventory.labels().size();
    const auto lemmas = column_labels(table, column);
    r.lemmas_mapped = membership.size();
    r.lemmas_unmapped = lemmas.size() - membership.size();
    for (const auto& [lemma, cats] : membership) {
        if (cats.size() > 1) ++r.lemmas_multi_category;
    }
    for (const auto& [key, n] : table.entries()) {
        if (!membership.contains(key[column])) r.unmapped_observations += n;
    }
    for (const auto& category : inventory.labels()) {
        auto joint = build(table, category, membership);
        if (!joint) {
            r.skipped.push_back(category);
            continue;
        }
        auto rec = measure(*joint, cfg);
        rec.h_c_global = h_c_global;
        r.categories.push_back(std::move(rec));
    }
    sort_by_mi(r.categories);
    return r;
}

ordered_json record_json(const MIRecord& r) {
    ordered_json j;
    j["analysis"] = r.analysis;
    if (!r.category.empty()) j["category"] = r.category;
    j["H_C"] = r.h_c;
    j["H_C_given_X"] = r.h_c_given_x;
    j["I_C_X"] = r.i_c_x;
    if (r.h_c_global) {
        j["H_C_global"] = *r.h_c_global;
        j["H_C_given_X_global"] = *r.h_c_global - r.i_c_x;
    }
    j["interval"] = {{"point", r.interval.point},
                     {"lower", r.interval.lower},
                     {"upper", r.interval.upper},
                     {"replicates_used", r.interval.replicates_used},
                     {"point_outside", r.interval.point_outside}};
    j["support"] = {{"rows", r.rows}, {"cols", r.cols}};
    j["observation_total"] = r.observation_total;
    j["dropped"] = {{"observations", r.dropped_observations}, {"mass", r.dropped_mass}};
    return j;
}

ordered_json category_json(const CategoryReport& r) {
    ordered_json j;
    j["categories_declared"] = r.categories_declared;
    j["lemmas_mapped"] = r.lemmas_mapped;
    j["lemmas_unmapped"] = r.lemmas_unmapped;
    j["lemmas_multi_category"] = r.lemmas_multi_category;
    j["unmapped_observations"] = r.unmapped_observations;
    j["categories"] = ordered_json::array();
    for (const auto& c : r.categories) j["categories"].push_back(record_json(c));
    j["skipped"] = r.skipped;
    return j;
}

// ---- schema-checked access for render_report ----

const json& field(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) throw FormatError(path + ": expected object");
    auto it = obj.find(key);
    if (it == obj.end()) throw FormatError(path + "." + key + ": missing");
    return *it;
}

double number(const json& obj, const std::string& path, const char* key) {
    const auto& v = field(obj, path, key);
    if (!v.is_number()) throw FormatError(path + "." + key + ": expected number");
    return v.get<double>();
}

std::uint64_t count(const json& obj, const std::string& path, const char* key) {
    const auto& v = field(obj, path, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw FormatError(path + "." + key + ": expected nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

std::string text(const json& obj, const std::string& path, const char* key) {
    const auto& v = field(obj, path, key);
    if (!v.is_string()) throw FormatError(path + "." + key + ": expected string");
    return v.get<std::string>();
}

const json& array(const json& obj, const std::string& path, const char* key) {
    const auto& v = field(obj, path, key);
    if (!v.is_array()) throw FormatError(path + "." + key + ": expected array");
    return v;
}

std::string format(const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

constexpr const char* kRowFormat = "%-24s %8s %8s %8s %8s %8s %12s %6s %6s\n";
constexpr const char* kValueFormat = "%-24s %8.4f %8.4f %8.4f %8.4f %8.4f %12llu %6llu %6llu\n";

void render_row(std::ostringstream& out, const json& rec, const std::string& path, const std::string& label) {
    const auto& interval = field(rec, path, "interval");
    const auto& support = field(rec, path, "support");
    out << format(kValueFormat, label.c_str(), number(rec, path, "H_C"), number(rec, path, "H_C_given_X"),
                  number(rec, path, "I_C_X"), number(interval, path + ".interval", "lower"),
                  number(interval, path + ".interval", "upper"),
                  static_cast<unsigned long long>(count(rec, path, "observation_total")),
                  static_cast<unsigned long long>(count(support, path + ".support", "rows")),
                  static_cast<unsigned long long>(count(support, path + ".support", "cols")));
}

std::string header_row(const char* first) {
    return format(kRowFormat, first, "H(C)", "H(C|X)", "I(C;X)", "ci_lo", "ci_hi", "observations", "rows", "cols");
}

}  // namespace

MIRecord measure(const AnalysisJoint& joint, const BootstrapConfig& cfg) {
    MIRecord r;
    r.analysis = to_string(joint.kind);
    r.category = joint.category;
    const auto s = summarize(joint.joint);
    r.h_c = s.h_rows;
    r.h_c_given_x = s.h_rows_given_cols;
    r.i_c_x = s.mi;
    r.interval = bootstrap_mi(joint.observations, cfg);
    r.rows = joint.support_rows;
    r.cols = joint.support_cols;
    r.observation_total = joint.observation_total;
    r.dropped_observations = joint.dropped_observations;
    r.dropped_mass = joint.dropped_mass;
    return r;
}

std::vector<AnalysisKind> resolve_analyses(const RunConfig& cfg, bool have_triples) {
    const bool have_dict = !cfg.dictionary.empty();
    if (cfg.analyses.empty()) {
        std::vector<AnalysisKind> out{AnalysisKind::noun};
        if (have_triples) out.push_back(AnalysisKind::adjective);
        if (have_dict && !cfg.noun_supersenses.empty()) out.push_back(AnalysisKind::noun_supersense);
        if (have_dict && have_triples && !cfg.adjective_supersenses.empty()) {
            out.push_back(AnalysisKind::adjective_supersense);
        }
        if (have_dict && !cfg.synsets.empty()) out.push_back(AnalysisKind::synset);
        return out;
    }
    std::vector<std::string> missing;
    auto need = [&](bool ok, const std::string& what) {
        if (!ok && std::find(missing.begin(), missing.end(), what) == missing.end()) missing.push_back(what);
    };
    std::vector<AnalysisKind> out;
    for (auto k : cfg.analyses) {
        if (std::find(out.begin(), out.end(), k) != out.end()) continue;
        out.push_back(k);
        switch (k) {
            case AnalysisKind::noun: break;
            case AnalysisKind::adjective: need(have_triples, "triples"); break;
            case AnalysisKind::noun_supersense:
                need(have_dict, "dictionary");
                need(!cfg.noun_supersenses.empty(), "noun_supersenses");
                break;
            case AnalysisKind::adjective_supersense:
                need(have_triples, "triples");
                need(have_dict, "dictionary");
                need(!cfg.adjective_supersenses.empty(), "adjective_supersenses");
                break;
            case AnalysisKind::synset:
                need(have_dict, "dictionary");
                need(!cfg.synsets.empty(), "synsets");
                break;
        }
    }
    if (!missing.empty()) {
        std::string msg = "requested analyses need missing inputs:";
        for (const auto& m : missing) msg += " " + m;
        throw ConfigError(msg);
    }
    return out;
}

MIReport analyze(const PairCount& pairs, const TripleCount* triples, const LexiconInputs& lexicon,
                 const std::vector<AnalysisKind>& analyses, const RunConfig& cfg,
                 const CountsMetadata& extraction_metadata) {
    cfg.bootstrap.validate();
    if (pairs.empty()) throw DataError("pair counts are empty: no observations");
    BootstrapConfig boot = cfg.bootstrap;
    boot.threads = std::max(1u, cfg.threads);

    MIReport report;
    auto& s = report.settings;
    s["estimator"] = "plug-in (maximum likelihood), no smoothing or bias correction";
    s["log_base"] = 2;
    s["counting"] = "token: every extracted tuple occurrence counts once";
    s["bootstrap"] = {{"method", "percentile, nearest rank"},
                      {"replicates", boot.replicates},
                      {"confidence", boot.confidence},
                      {"seed", boot.seed},
                      {"resampling_unit", "extracted tuple observation of each analysis"}};
    s["category_membership"] = "multi: a lemma contributes to every category it maps to";
    s["per_category_entropy"] = "restricted: H_C and I_C_X on the renormalized category sub-corpus; "
                                "H_C_global alongside";
    s["drop_policy"] = "untranslatable, unlisted and synset-less lemmas are dropped and counted";
    s["gloss_lookup"] = "lowercase, parentheticals removed, leading to/a/the stripped; whole gloss then final word";
    s["synset_weighting"] = "uniform: a noun with m synsets gives 1/m of each observation to each synset";
    ordered_json extraction = ordered_json::object();
    for (const auto& [k, v] : extraction_metadata) extraction[k] = v;
    s["extraction"] = extraction;

    auto& in = report.inputs;
    in["pair_observations"] = pairs.total();
    in["pair_types"] = pairs.size();
    if (triples) {
        in["triple_observations"] = triples->total();
        in["triple_types"] = triples->size();
    }
    if (lexicon.dictionary) {
        in["dictionary_entries"] = lexicon.dictionary->entries_read;
        in["dictionary_malformed_lines"] = lexicon.dictionary->malformed_lines;
    }
    auto inventory_json = [](const Inventory& inv) {
        return ordered_json{{"lemmas", inv.size()}, {"labels", inv.labels().size()},
                            {"malformed_lines", inv.malformed_lines}};
    };
    if (lexicon.noun_supersenses) in["noun_supersenses"] = inventory_json(*lexicon.noun_supersenses);
    if (lexicon.adjective_supersenses) in["adjective_supersenses"] = inventory_json(*lexicon.adjective_supersenses);
    if (lexicon.synsets) in["synsets"] = inventory_json(*lexicon.synsets);

    auto require = [](bool ok, const char* what) {
        if (!ok) throw ConfigError(std::string("missing input: ") + what);
    };
    auto has = [&](AnalysisKind k) { return std::find(analyses.begin(), analyses.end(), k) != analyses.end(); };

    const auto cn = build_cn(pairs);
    const double h_c_pairs = marginal_entropy(cn.joint, Axis::rows);

    if (has(AnalysisKind::noun)) report.analyses.push_back(measure(cn, boot));
    std::optional<AnalysisJoint> ca;
    if (has(AnalysisKind::adjective) || has(AnalysisKind::adjective_supersense)) {
        require(triples != nullptr, "triples");
        if (triples->empty()) throw DataError("triple counts are empty: no observations");
        ca = build_ca(*triples);
    }
    if (has(AnalysisKind::adjective)) report.analyses.push_back(measure(*ca, boot));
    if (has(AnalysisKind::synset)) {
        require(lexicon.dictionary && lexicon.synsets, "dictionary and synsets");
        const auto nouns = column_labels(pairs, 1);
        const auto membership = build_membership(nouns, *lexicon.dictionary, *lexicon.synsets);
        report.analyses.push_back(measure(build_cs(pairs, membership), boot));
    }
    if (has(AnalysisKind::noun_supersense)) {
        require(lexicon.dictionary && lexicon.noun_supersenses, "dictionary and noun_supersenses");
        const auto nouns = column_labels(pairs, 1);
        const auto membership = build_membership(nouns, *lexicon.dictionary, *lexicon.noun_supersenses);
        report.noun_supersense = categorize<PairCount>("noun_supersense", pairs, 1, *lexicon.noun_supersenses,
                                                       membership, h_c_pairs, boot, &build_cn_restricted);
    }
    if (has(AnalysisKind::adjective_supersense)) {
        require(lexicon.dictionary && lexicon.adjective_supersenses, "dictionary and adjective_supersenses");
        const auto adjectives = column_labels(*triples, 0);
        const auto membership = build_membership(adjectives, *lexicon.dictionary, *lexicon.adjective_supersenses);
        const double h_c_triples = marginal_entropy(ca->joint, Axis::rows);
        report.adjective_supersense =
            categorize<TripleCount>("adjective_supersense", *triples, 0, *lexicon.adjective_supersenses, membership,
                                    h_c_triples, boot, &build_ca_restricted);
    }

    for (const auto& noun : cfg.conditionals) {
        auto dist = condition(cn.joint, noun);
        ConditionalReport c;
        c.noun = noun;
        for (const auto& [key, n] : pairs.entries()) {
            if (key[1] == noun) c.observations += n;
        }
        for (std::size_t i = 0; i < dist.size(); ++i) c.classifiers.emplace_back(dist.labels[i], dist.mass[i]);
        std::stable_sort(c.classifiers.begin(), c.classifiers.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        report.conditionals.push_back(std::move(c));
    }
    check_identity(report);
    return report;
}

void check_identity(const MIReport& report) {
    auto check = [](const MIRecord& r) {
        if (!(std::abs(r.h_c - r.h_c_given_x - r.i_c_x) <= kIdentityTolerance)) {
            throw std::logic_error("entropy identity violated for " + r.analysis +
                                   (r.category.empty() ? "" : "/" + r.category) + ": H_C=" + real(r.h_c) +
                                   " H_C_given_X=" + real(r.h_c_given_x) + " I_C_X=" + real(r.i_c_x));
        }
    };
    for (const auto& r : report.analyses) check(r);
    for (const auto* cat : {&report.noun_supersense, &report.adjective_supersense}) {
        if (!*cat) continue;
        for (const auto& r : (*cat)->categories) check(r);
    }
}

ordered_json to_json(const MIReport& report) {
    check_identity(report);
    ordered_json j;
    j["schema"] = kReportSchema;
    j["settings"] = report.settings;
    j["inputs"] = report.inputs;
    j["analyses"] = ordered_json::array();
    for (const auto& r : report.analyses) j["analyses"].push_back(record_json(r));
    if (report.noun_supersense) j["noun_supersense"] = category_json(*report.noun_supersense);
    if (report.adjective_supersense) j["adjective_supersense"] = category_json(*report.adjective_supersense);
    if (!report.conditionals.empty()) {
        j["conditionals"] = ordered_json::array();
        for (const auto& c : report.conditionals) {
            ordered_json cj;
            cj["noun"] = c.noun;
            cj["observations"] = c.observations;
            cj["classifiers"] = ordered_json::array();
            for (const auto& [label, p] : c.classifiers) {
                cj["classifiers"].push_back({{"classifier", label}, {"p", p}});
            }
            j["conditionals"].push_back(std::move(cj));
        }
    }
    return j;
}

void write_category_csv(std::ostream& out, const CategoryReport& report) {
    out << "category,H_C,I,H_C_given,ci_lo,ci_hi\n";
    for (const auto& r : report.categories) {
        out << csv_field(r.category) << ',' << real(r.h_c) << ',' << real(r.i_c_x) << ',' << real(r.h_c_given_x)
            << ',' << real(r.interval.lower) << ',' << real(r.interval.upper) << '\n';
    }
}

std::string render_report(const json& doc) {
    if (!doc.is_object()) throw FormatError("$: expected object");
    const auto schema = text(doc, "$", "schema");
    if (schema != kReportSchema) throw FormatError("$.schema: unsupported schema '" + schema + "'");
    std::ostringstream out;
    out << "schema: " << schema << '\n';

    const auto& settings = field(doc, "$", "settings");
    const auto& boot = field(settings, "$.settings", "bootstrap");
    out << format("bootstrap: %s, %llu replicates, confidence %.4g, seed %llu\n",
                  text(boot, "$.settings.bootstrap", "method").c_str(),
                  static_cast<unsigned long long>(count(boot, "$.settings.bootstrap", "replicates")),
                  number(boot, "$.settings.bootstrap", "confidence"),
                  static_cast<unsigned long long>(count(boot, "$.settings.bootstrap", "seed")));
    out << '\n' << header_row("analysis");

    const auto& analyses = array(doc, "$", "analyses");
    for (std::size_t i = 0; i < analyses.size(); ++i) {
        const auto path = "$.analyses[" + std::to_string(i) + "]";
        render_row(out, analyses[i], path, text(analyses[i], path, "analysis"));
    }

    for (const char* section : {"noun_supersense", "adjective_supersense"}) {
        auto it = doc.find(section);
        if (it == doc.end()) continue;
        const auto base = std::string("$.") + section;
        out << '\n'
            << section << ": "
            << count(*it, base, "categories_declared") << " categories declared, "
            << count(*it, base, "lemmas_mapped") << " lemmas mapped, " << count(*it, base, "lemmas_unmapped")
            << " unmapped\n";
        out << header_row("category");
        const auto& cats = array(*it, base, "categories");
        for (std::size_t i = 0; i < cats.size(); ++i) {
            const auto path = base + ".categories[" + std::to_string(i) + "]";
            render_row(out, cats[i], path, text(cats[i], path, "category"));
        }
        const auto& skipped = array(*it, base, "skipped");
        if (!skipped.empty()) {
            out << "skipped (no observations):";
            for (std::size_t i = 0; i < skipped.size(); ++i) {
                if (!skipped[i].is_string()) {
                    throw FormatError(base + ".skipped[" + std::to_string(i) + "]: expected string");
                }
                out << ' ' << skipped[i].get<std::string>();
            }
            out << '\n';
        }
    }

    if (auto it = doc.find("conditionals"); it != doc.end()) {
        if (!it->is_array()) throw FormatError("$.conditionals: expected array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto path = "$.conditionals[" + std::to_string(i) + "]";
            const auto& c = (*it)[i];
            out << "\np(C | N = " << text(c, path, "noun") << "), "
                << count(c, path, "observations") << " observations\n";
            const auto& rows = array(c, path, "classifiers");
            for (std::size_t k = 0; k < rows.size(); ++k) {
                const auto rpath = path + ".classifiers[" + std::to_string(k) + "]";
                out << "  " << text(rows[k], rpath, "classifier") << format("\t%.4f\n", number(rows[k], rpath, "p"));
            }
        }
    }
    return out.str();
}

}  // namespace clfinfo
