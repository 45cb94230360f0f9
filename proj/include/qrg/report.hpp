#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrg/adversary.hpp"
#include "qrg/harmonic.hpp"
#include "qrg/spectra.hpp"

namespace qrg {

inline constexpr std::string_view kToolVersion = "0.3.0";
inline constexpr int kReportFormat = 1;

/// Builds a group from a one-token name: z:<n>, s:<m>, a:<m>, sl2:<p>,
/// psl2:<p>, file:<path>. Throws GroupError on a malformed name.
FiniteGroup group_from_name(std::string_view name);

struct CatalogEntry {
    std::string name;
    std::string description;
};
/// Built-in families with example members, for `groups list`.
std::vector<CatalogEntry> catalog();

/// Checks in the fixed order used for every run plan.
const std::vector<std::string>& all_checks();

struct VerifyOptions {
    std::vector<std::string> checks;  // empty = all
    std::size_t trials = 200;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool timings = false;  // runtimes make reports run-dependent, so they are opt-in
};

struct TrialRecord {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double observed = 0;
    double bound = 0;
    double margin = 0;
    std::uint64_t digest = 0;
    std::optional<double> bound_secondary;  // corollary: erratum D^-1 bound
    std::optional<std::size_t> component;   // schur: character row
    std::optional<Element> element;         // step4_lemma: maximizing h
};

struct CheckRecord {
    std::string name;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double bound = 0;
    double max_observed = 0;
    double min_margin = 0;
    std::optional<double> bound_secondary;
    std::optional<double> min_margin_secondary;
    std::optional<double> max_identity_residual;
    std::string note;
    double runtime_seconds = 0;
    std::vector<TrialRecord> per_trial;

    bool passed() const { return min_margin >= 0 && (!min_margin_secondary || *min_margin_secondary >= 0); }
};

struct VerificationReport {
    std::string group;
    std::size_t order = 0;
    std::size_t num_classes = 0;
    std::vector<int> degrees;  // sorted
    int D = 1;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool timings = false;
    std::vector<CheckRecord> checks;

    bool passed() const;
};

/// Runs the selected checks. Trials are seeded from (seed, check, trial) so
/// results do not depend on the thread count. Throws std::invalid_argument
/// for unknown check names.
VerificationReport run_verification(const GroupAnalysis& a, const VerifyOptions& options);

/// Regenerates the inputs of one trial, for reproducer files.
std::vector<GroupFunction> trial_inputs(const GroupAnalysis& a, std::string_view check, std::uint64_t seed,
                                        std::size_t trial);

std::string report_json(const VerificationReport& report);
/// check,trial,seed,observed,bound,margin
std::string report_csv(const VerificationReport& report);
std::string analysis_json(const GroupAnalysis& a, double orthogonality_tolerance);
std::string search_json(const GroupAnalysis& a, const SearchConfig& config, const SearchResult& result);
/// Failing trials of a report with their regenerated inputs.
std::string reproducer_json(const GroupAnalysis& a, const VerificationReport& report);

}  // namespace qrg
