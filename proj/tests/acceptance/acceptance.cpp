// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "clfinfo/bootstrap.hpp"
#include "clfinfo/counts.hpp"
#include "clfinfo/infotheory.hpp"
#include "clfinfo/projection.hpp"
#include "oracles.hpp"

using namespace clfinfo;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

std::string data(const std::string& name) { return std::string(CLFINFO_TEST_DATA) + "/" + name; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run(const std::string& cmd) {
    const std::string full = cmd + " > /dev/null 2>&1";
    return std::system(full.c_str());
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

// Draws n pairs from a dense joint over labels c<i> x n<j>.
PairCount sample_pairs(const oracle::Matrix& p, std::size_t n, std::mt19937_64& rng) {
    std::vector<double> flat;
    for (const auto& row : p) flat.insert(flat.end(), row.begin(), row.end());
    std::discrete_distribution<std::size_t> draw(flat.begin(), flat.end());
    const std::size_t cols = p[0].size();
    std::vector<std::uint64_t> tally(flat.size(), 0);
    for (std::size_t i = 0; i < n; ++i) ++tally[draw(rng)];
    PairCount out;
    for (std::size_t k = 0; k < tally.size(); ++k) {
        if (tally[k] > 0) out.add({"c" + std::to_string(k / cols), "n" + std::to_string(k % cols)}, tally[k]);
    }
    return out;
}

// 1. Entropy identity and symmetry on random joints.
Outcome criterion1() {
    Outcome o;
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<std::size_t> dim(2, 50);
    double worst_identity = 0.0, worst_symmetry = 0.0;
    const auto t0 = Clock::now();
    for (int trial = 0; trial < 1000; ++trial) {
        auto j = oracle::to_joint(oracle::random_joint(rng, dim(rng), dim(rng), 0.5));
        const double i = mutual_information(j);
        const double hc = marginal_entropy(j, Axis::rows);
        const double hcx = conditional_entropy(j, Axis::cols);
        worst_identity = std::max(worst_identity, std::abs(hc - hcx - i));
        worst_symmetry = std::max(worst_symmetry, std::abs(i - mutual_information(j.transposed())));
    }
    const double elapsed = seconds_since(t0);
    o.require(worst_identity < 1e-9, "identity");
    o.require(worst_symmetry < 1e-12, "symmetry");
    o.require(elapsed < 10.0, "runtime");
    o.detail << "max |H(C)-H(C|X)-I| = " << worst_identity << ", max |I(C;X)-I(X;C)| = " << worst_symmetry
             << ", " << elapsed << " s";
    return o;
}

// 2. Analytic anchors.
Outcome criterion2() {
    Outcome o;
    const std::vector<double> u4(4, 0.25);
    const double h = entropy(u4);
    const double diag = mutual_information(oracle::to_joint({{0.5, 0.0}, {0.0, 0.5}}));
    // outer product of (0.2, 0.8) and (0.3, 0.7)
    const double prod = mutual_information(oracle::to_joint({{0.06, 0.14}, {0.24, 0.56}}));
    o.require(std::abs(h - 2.0) <= 1e-12, "uniform entropy");
    o.require(std::abs(diag - 1.0) <= 1e-12, "diagonal MI");
    o.require(prod <= 1e-12, "product MI");
    o.detail << "H(uniform4) = " << h << ", I(diag) = " << diag << ", I(product) = " << prod;
    return o;
}

// 3. Synthetic corpora through counting and normalization.
Outcome criterion3() {
    Outcome o;
    std::mt19937_64 rng(3003);

    auto t0 = Clock::now();
    const std::vector<double> pc{0.1, 0.2, 0.3, 0.4}, pn{0.25, 0.25, 0.3, 0.2};
    oracle::Matrix indep(4, std::vector<double>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) indep[i][j] = pc[i] * pn[j];
    const double i_indep = mutual_information(build_cn(sample_pairs(indep, 100000, rng)).joint);
    const double t_indep = seconds_since(t0);

    t0 = Clock::now();
    // C = f(N): 12 nouns, noun k always takes classifier k mod 5
    std::uniform_int_distribution<int> noun(0, 11);
    PairCount det;
    for (int i = 0; i < 100000; ++i) {
        const int k = noun(rng);
        det.add({"c" + std::to_string(k % 5), "n" + std::to_string(k)});
    }
    const auto s = summarize(build_cn(det).joint);
    const double t_det = seconds_since(t0);

    o.require(i_indep <= 0.005, "independent MI");
    o.require(std::abs(s.mi - s.h_rows) < 1e-9, "deterministic MI");
    o.require(t_indep < 5.0 && t_det < 5.0, "runtime");
    o.detail << "independent I = " << i_indep << " (" << t_indep << " s), deterministic |I-H(C)| = "
             << std::abs(s.mi - s.h_rows) << " (" << t_det << " s)";
    return o;
}

// 4. MI against a direct double sum.
Outcome criterion4() {
    Outcome o;
    std::mt19937_64 rng(4004);
    std::uniform_int_distribution<std::size_t> dim(2, 6);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        auto m = oracle::random_joint(rng, dim(rng), dim(rng), 0.7);
        worst = std::max(worst, std::abs(mutual_information(oracle::to_joint(m)) - oracle::mutual_information(m)));
    }
    o.require(worst <= 1e-12, "oracle agreement");
    o.detail << "max deviation = " << worst;
    return o;
}

// 5. Bootstrap coverage and reproducibility.
Outcome criterion5() {
    Outcome o;
    const oracle::Matrix truth{{0.35, 0.15}, {0.15, 0.35}};
    const double analytic = oracle::mutual_information(truth);
    std::mt19937_64 rng(5005);
    BootstrapConfig cfg;
    cfg.replicates = 500;
    cfg.confidence = 0.95;
    int covered = 0;
    const int trials = 200;
    const auto t0 = Clock::now();
    for (int t = 0; t < trials; ++t) {
        auto obs = build_cn(sample_pairs(truth, 2000, rng)).observations;
        cfg.seed = 77000 + static_cast<std::uint64_t>(t);
        const auto e = bootstrap_mi(obs, cfg);
        if (e.lower <= analytic && analytic <= e.upper) ++covered;
    }
    const double elapsed = seconds_since(t0);

    std::mt19937_64 again(5005);
    auto obs = build_cn(sample_pairs(truth, 2000, again)).observations;
    cfg.seed = 77000;
    const auto a = bootstrap_mi(obs, cfg);
    const auto b = bootstrap_mi(obs, cfg);
    const bool identical = std::memcmp(&a.lower, &b.lower, sizeof(double)) == 0 &&
                           std::memcmp(&a.upper, &b.upper, sizeof(double)) == 0;

    const double coverage = static_cast<double>(covered) / trials;
    o.require(coverage >= 0.90, "coverage");
    o.require(identical, "seed reproducibility");
    o.require(elapsed < 120.0, "runtime");
    o.detail << "coverage " << covered << "/" << trials << " of I = " << analytic << ", identical seeds "
             << (identical ? "bit-identical" : "differ") << ", " << elapsed << " s";
    return o;
}

// 6. CLI extraction on the committed fixture.
Outcome criterion6() {
    Outcome o;
    const fs::path out = fs::path(CLFINFO_SCRATCH) / "c6";
    fs::remove_all(out);
    const int rc = run(quote(CLFINFO_CLI) + " extract --mode strict --corpus " + quote(data("golden.conllu")) +
                       " -o " + quote(out.string()));
    o.require(rc == 0, "extract exit code");
    const bool pairs = slurp(out / "pairs.tsv") == slurp(data("golden_pairs.tsv"));
    const bool triples = slurp(out / "triples.tsv") == slurp(data("golden_triples.tsv"));
    o.require(pairs, "pairs.tsv differs");
    o.require(triples, "triples.tsv differs");
    o.detail << "pairs.tsv " << (pairs ? "identical" : "differs") << ", triples.tsv "
             << (triples ? "identical" : "differs");
    return o;
}

// 7. Projection mass conservation and reductions.
Outcome criterion7() {
    Outcome o;
    std::mt19937_64 rng(7007);
    std::uniform_int_distribution<int> cls(0, 7), noun(0, 29), count(1, 40), cat(0, 4), nsyn(1, 4);
    double worst_mass = 0.0, worst_cover = 0.0, worst_single = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        PairCount pairs;
        for (int i = 0; i < 120; ++i) {
            pairs.add({"c" + std::to_string(cls(rng)), "n" + std::to_string(noun(rng))},
                      static_cast<std::uint64_t>(count(rng)));
        }
        Membership cats, syn, single, all;
        for (const auto& [key, n] : pairs.entries()) {
            cats[key[1]].insert("k" + std::to_string(cat(rng)));
            const int m = nsyn(rng);
            for (int s = 0; s < m; ++s) syn[key[1]].insert(key[1] + ".s" + std::to_string(cat(rng) * 10 + s));
            single[key[1]] = {key[1] + ".only"};
            all[key[1]] = {"all"};
        }
        const double i_cn = mutual_information(build_cn(pairs).joint);

        worst_mass = std::max(worst_mass, std::abs(build_cs(pairs, syn).joint.total_mass() - 1.0));
        for (int k = 0; k < 5; ++k) {
            auto r = build_cn_restricted(pairs, "k" + std::to_string(k), cats);
            if (!r) continue;
            worst_mass = std::max(worst_mass, std::abs(r->joint.total_mass() - 1.0));
            worst_mass = std::max(worst_mass, std::abs(r->kept_mass + r->dropped_mass - 1.0));
        }
        auto covering = build_cn_restricted(pairs, "all", all);
        worst_cover = std::max(worst_cover, std::abs(mutual_information(covering->joint) - i_cn));
        worst_single = std::max(worst_single, std::abs(mutual_information(build_cs(pairs, single).joint) - i_cn));
    }
    o.require(worst_mass <= 1e-12, "mass conservation");
    o.require(worst_cover <= 1e-12, "covering category");
    o.require(worst_single <= 1e-12, "singleton synsets");
    o.detail << "max mass error = " << worst_mass << ", covering |dI| = " << worst_cover
             << ", singleton-synset |dI| = " << worst_single;
    return o;
}

// 8. Conditional classifier distributions on a fixture of per-noun counts.
Outcome criterion8() {
    Outcome o;
    std::ifstream in(data("conditional_pairs.tsv"));
    const auto joint = normalize(read_pairs_tsv(in, "conditional_pairs.tsv").table);
    const double wei = condition(joint, "人士").probability("位");
    const double xiang = condition(joint, "工程").probability("项");
    o.require(std::abs(wei - 0.4838) <= 1e-4, "p(位|人士)");
    o.require(std::abs(xiang - 0.4077) <= 1e-4, "p(项|工程)");
    o.detail << "p(位|人士) = " << wei << ", p(项|工程) = " << xiang;
    return o;
}

// 9. End-to-end determinism of extract + analyze.
Outcome criterion9() {
    Outcome o;
    std::string reports[2];
    for (int r = 0; r < 2; ++r) {
        const fs::path out = fs::path(CLFINFO_SCRATCH) / ("c9_run" + std::to_string(r));
        fs::remove_all(out);
        const std::string cli = quote(CLFINFO_CLI);
        int rc = run(cli + " extract --mode strict --corpus " + quote(data("golden.conllu")) + " -o " +
                     quote(out.string()));
        rc |= run(cli + " analyze --pairs " + quote((out / "pairs.tsv").string()) + " --triples " +
                  quote((out / "triples.tsv").string()) + " --dictionary " + quote(data("cedict_fixture.u8")) +
                  " --noun-supersenses " + quote(data("noun_supersenses.tsv")) + " --adjective-supersenses " +
                  quote(data("adjective_supersenses.tsv")) + " --synsets " + quote(data("synsets.tsv")) +
                  " --replicates 200 --seed 424242 -o " + quote(out.string()));
        o.require(rc == 0, "CLI exit code");
        reports[r] = slurp(out / "report.json");
    }
    const bool same = !reports[0].empty() && reports[0] == reports[1];
    o.require(same, "reports differ");
    o.detail << "report.json " << reports[0].size() << " bytes, " << (same ? "byte-identical" : "differs");
    return o;
}

}  // namespace

int main() {
    fs::create_directories(CLFINFO_SCRATCH);
    const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3,
                                                         criterion4, criterion5, criterion6,
                                                         criterion7, criterion8, criterion9};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << o.detail.str() << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
