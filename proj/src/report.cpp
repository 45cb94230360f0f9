#include "qrg/report.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include "json.hpp"
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qrg {

using ordered_json = nlohmann::ordered_json;

namespace {

int parse_int(std::string_view s, std::string_view whole) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || p != s.data() + s.size())
        throw GroupError("malformed group name '" + std::string(whole) + "'");
    return v;
}

std::string hex(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json complex_array(std::span<const Complex> values) {
    ordered_json out = ordered_json::array();
    for (auto z : values) out.push_back({z.real(), z.imag()});
    return out;
}

/// Runs body(i) for i in [0, count) on up to `threads` workers.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, count))));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i; !failed && (i = next.fetch_add(1)) < count;) {
                    try {
                        body(i);
                    } catch (...) {
                        if (!failed.exchange(true)) error = std::current_exception();
                    }
                }
            });
    }
    if (error) std::rethrow_exception(error);
}

std::uint64_t trial_seed(std::uint64_t seed, std::string_view check, std::size_t trial) {
    return mix_seed(seed, stream_id(std::string(check).c_str()), trial);
}

std::vector<std::size_t> schur_components(const GroupAnalysis& a) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < a.table.num_classes(); ++r)
        if (r != a.table.trivial_row && conjugation_multiplicity(a, r) == 1) rows.push_back(r);
    return rows;
}

inline constexpr double kSchurTolerance = 1e-8;

}  // namespace

FiniteGroup group_from_name(std::string_view name) {
    const auto colon = name.find(':');
    if (colon == std::string_view::npos) throw GroupError("malformed group name '" + std::string(name) + "'");
    const auto kind = name.substr(0, colon);
    const auto arg = name.substr(colon + 1);
    if (kind == "file") {
        std::ifstream in{std::string(arg)};
        if (!in) throw GroupError("cannot read Cayley file '" + std::string(arg) + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return load_cayley_table(ss.str(), std::string(name));
    }
    const int v = parse_int(arg, name);
    if (kind == "z") {
        if (v < 1) throw GroupError("cyclic group order must be at least 1");
        return build_cyclic(static_cast<std::size_t>(v));
    }
    if (kind == "s") return build_symmetric(v);
    if (kind == "a") return build_alternating(v);
    if (kind == "sl2") return build_sl2(v);
    if (kind == "psl2") return build_psl2(v);
    throw GroupError("unknown group family '" + std::string(kind) + "'");
}

std::vector<CatalogEntry> catalog() {
    return {
        {"z:<n>", "cyclic group Z_n, 1 <= n <= 5040 (abelian, D = 1)"},
        {"s:<m>", "symmetric group S_m, 2 <= m <= 7"},
        {"a:<m>", "alternating group A_m, 2 <= m <= 7"},
        {"sl2:<p>", "SL(2,p) for primes 3 <= p <= 13"},
        {"psl2:<p>", "PSL(2,p) for primes 3 <= p <= 13"},
        {"file:<path>", "Cayley table file (first line n, then n rows of n 0-based indices)"},
    };
}

const std::vector<std::string>& all_checks() {
    static const std::vector<std::string> checks{"lemma", "corollary", "schur", "theorem",    "step1",
                                                 "step2", "step3",     "step4", "step4_lemma"};
    return checks;
}

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed(); });
}

std::vector<GroupFunction> trial_inputs(const GroupAnalysis& a, std::string_view check, std::uint64_t seed,
                                        std::size_t trial) {
    const std::size_t n = a.order();
    Rng rng(trial_seed(seed, check, trial));
    if (check == "lemma" || check == "corollary") {
        auto u = random_unit_vector(n, rng);
        auto v = random_unit_vector(n, rng);
        return {u, v};
    }
    if (check == "schur") return {random_unit_vector(n, rng)};
    if (check == "theorem") {
        auto f1 = random_phase_function(n, rng);
        auto f2 = random_phase_function(n, rng);
        auto f3 = random_phase_function(n, rng);
        return {f1, f2, f3};
    }
    if (check == "step1" || check == "step2") {
        auto f1 = centered(random_phase_function(n, rng));
        auto f2 = random_phase_function(n, rng);
        auto f3 = random_phase_function(n, rng);
        return {f1, f2, f3};
    }
    if (check == "step3" || check == "step4") {
        auto f1 = centered(random_phase_function(n, rng));
        auto f2 = random_phase_function(n, rng);
        return {f1, f2};
    }
    if (check == "step4_lemma") return {random_phase_function(n, rng)};
    throw std::invalid_argument("unknown check '" + std::string(check) + "'");
}

namespace {

CheckRecord run_check(const GroupAnalysis& a, const std::string& name, const VerifyOptions& opt) {
    CheckRecord rec;
    rec.name = name;
    rec.seed = opt.seed;
    const int D = a.D();
    const auto Dd = static_cast<double>(D);
    const auto started = std::chrono::steady_clock::now();

    auto fill = [&](TrialRecord& t, const BoundCheck& c, std::size_t i) {
        t.trial = i;
        t.seed = trial_seed(opt.seed, name, i);
        t.observed = c.observed;
        t.bound = c.bound;
        t.margin = c.margin;
        t.digest = c.inputs_digest;
    };

    if (name == "schur") {
        const auto rows = schur_components(a);
        rec.bound = kSchurTolerance;
        rec.note = std::to_string(rows.size()) +
                   " multiplicity-free non-trivial isotypic components; observed = |value - 1/d|";
        rec.per_trial.resize(opt.trials * rows.size());
        parallel_for(opt.trials, opt.threads, [&](std::size_t i) {
            const auto raw = trial_inputs(a, name, opt.seed, i).front();
            for (std::size_t j = 0; j < rows.size(); ++j) {
                auto u = isotypic_project(a, raw, rows[j]);
                u = (1.0 / u.l2_norm()) * u;
                const auto value = corollary_lhs(a, u, u).published.observed;
                const double expect = 1.0 / static_cast<double>(a.table.degrees[rows[j]]);
                auto& t = rec.per_trial[i * rows.size() + j];
                fill(t, make_check("schur", std::abs(value - expect), kSchurTolerance, digest(u.values())), i);
                t.component = rows[j];
            }
        });
        rec.trials = opt.trials;
    } else {
        rec.trials = opt.trials;
        rec.per_trial.resize(opt.trials);
        std::vector<double> residuals(opt.trials, 0.0);
        if (name == "lemma") rec.bound = std::pow(Dd, -0.5);
        else if (name == "corollary") {
            rec.bound = std::pow(Dd, -0.5);
            rec.bound_secondary = 1.0 / Dd;
        } else if (name == "theorem") rec.bound = 4.0 * std::pow(Dd, -0.125);
        else if (name == "step1") rec.bound = 3.0 * std::pow(Dd, -0.125);
        else if (name == "step2") rec.bound = 5.0 * std::pow(Dd, -0.25);
        else if (name == "step3") rec.bound = 25.0 * std::pow(Dd, -0.5);
        else if (name == "step4" || name == "step4_lemma") rec.bound = std::pow(Dd, -0.5);
        else throw std::invalid_argument("unknown check '" + name + "'");

        parallel_for(opt.trials, opt.threads, [&](std::size_t i) {
            const auto in = trial_inputs(a, name, opt.seed, i);
            auto& t = rec.per_trial[i];
            if (name == "lemma") fill(t, lemma_gap(a, in[0], in[1]), i);
            else if (name == "corollary") {
                const auto c = corollary_lhs(a, in[0], in[1]);
                fill(t, c.published, i);
                t.bound_secondary = c.erratum.bound;
            } else if (name == "theorem") {
                const auto c = theorem_lhs(a, in[0], in[1], in[2]);
                if (c.observed > 2.0 + 1e-12)
                    throw NumericalInvariantError("theorem: observed " + g17(c.observed) +
                                                  " exceeds the triangle-inequality ceiling 2");
                fill(t, c, i);
            } else if (name == "step1") fill(t, step1_reduced_lhs(a, in[0], in[1], in[2]), i);
            else if (name == "step2") {
                const auto c = step2_squared(a, in[0], in[1], in[2]);
                fill(t, c, i);
                residuals[i] = c.identity_residual.value_or(-1.0);
            } else if (name == "step3") fill(t, step3_intermediate(a, in[0], in[1]), i);
            else if (name == "step4") fill(t, step4_final(a, in[0], in[1]), i);
            else {
                BoundCheck worst;
                for (Element h = 0; h < a.order(); ++h) {
                    auto c = step4_lemma_substitution(a, in[0], h);
                    if (h == 0 || c.observed > worst.observed) {
                        worst = c;
                        t.element = h;
                    }
                }
                fill(t, worst, i);
                t.digest = digest(in[0].values());
            }
        });

        if (name == "step2" && a.order() <= kStep2IdentityCap && opt.trials > 0)
            rec.max_identity_residual = *std::max_element(residuals.begin(), residuals.end());
        if (name == "theorem") {
            rec.note = rec.bound >= 2.0
                           ? "bound " + g17(rec.bound) +
                                 " is vacuous at this D: disc-valued inputs give observed <= 2 by the triangle "
                                 "inequality"
                           : "bound is below the trivial ceiling 2";
        } else if (name == "step4_lemma") {
            rec.note = "observed = max over all h in G";
        } else if (name == "corollary") {
            rec.note = "bound = D^-1/2 (published); bound_secondary = D^-1 (erratum)";
        }
    }

    rec.max_observed = 0;
    rec.min_margin = rec.bound;
    if (rec.bound_secondary) rec.min_margin_secondary = *rec.bound_secondary;
    for (std::size_t i = 0; i < rec.per_trial.size(); ++i) {
        const auto& t = rec.per_trial[i];
        rec.max_observed = std::max(rec.max_observed, t.observed);
        if (i == 0 || t.margin < rec.min_margin) rec.min_margin = t.margin;
        if (t.bound_secondary) {
            const double m2 = *t.bound_secondary - t.observed;
            if (i == 0 || m2 < *rec.min_margin_secondary) rec.min_margin_secondary = m2;
        }
    }
    rec.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rec;
}

}  // namespace

VerificationReport run_verification(const GroupAnalysis& a, const VerifyOptions& options) {
    std::set<std::string> wanted(options.checks.begin(), options.checks.end());
    for (const auto& c : wanted)
        if (std::find(all_checks().begin(), all_checks().end(), c) == all_checks().end())
            throw std::invalid_argument("unknown check '" + c + "'");

    VerificationReport report;
    report.group = a.g().name();
    report.order = a.order();
    report.num_classes = a.classes.num_classes();
    report.degrees = a.table.degrees;
    std::sort(report.degrees.begin(), report.degrees.end());
    report.D = a.D();
    report.trials = options.trials;
    report.seed = options.seed;
    report.threads = options.threads;
    report.timings = options.timings;
    for (const auto& name : all_checks())
        if (wanted.empty() || wanted.contains(name)) report.checks.push_back(run_check(a, name, options));
    return report;
}

std::string report_json(const VerificationReport& r) {
    ordered_json j;
    j["format"] = kReportFormat;
    j["tool_version"] = kToolVersion;
    j["group"] = {{"name", r.group},
                  {"order", r.order},
                  {"num_classes", r.num_classes},
                  {"degrees", r.degrees},
                  {"D", r.D}};
    j["run"] = {{"trials", r.trials}, {"seed", r.seed}, {"threads", r.threads}};
    j["passed"] = r.passed();
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["trials"] = c.trials;
        cj["seed"] = c.seed;
        cj["bound"] = c.bound;
        cj["max_observed"] = c.max_observed;
        cj["min_margin"] = c.min_margin;
        if (c.bound_secondary) {
            cj["bound_secondary"] = *c.bound_secondary;
            cj["min_margin_secondary"] = *c.min_margin_secondary;
        }
        if (c.max_identity_residual) cj["max_identity_residual"] = *c.max_identity_residual;
        if (!c.note.empty()) cj["note"] = c.note;
        if (r.timings) cj["runtime_seconds"] = c.runtime_seconds;
        cj["passed"] = c.passed();
        ordered_json trials = ordered_json::array();
        for (const auto& t : c.per_trial) {
            ordered_json tj;
            tj["trial"] = t.trial;
            tj["observed"] = t.observed;
            tj["margin"] = t.margin;
            if (t.component) tj["component"] = *t.component;
            if (t.element) tj["h"] = *t.element;
            tj["digest"] = hex(t.digest);
            trials.push_back(std::move(tj));
        }
        cj["per_trial"] = std::move(trials);
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    return j.dump(2) + "\n";
}

std::string report_csv(const VerificationReport& r) {
    std::string out = "check,trial,seed,observed,bound,margin,bound_secondary\n";
    for (const auto& c : r.checks)
        for (const auto& t : c.per_trial) {
            out += c.name + "," + std::to_string(t.trial) + "," + std::to_string(t.seed) + "," + g17(t.observed) +
                   "," + g17(t.bound) + "," + g17(t.margin) + "," +
                   (t.bound_secondary ? g17(*t.bound_secondary) : std::string()) + "\n";
        }
    return out;
}

std::string analysis_json(const GroupAnalysis& a, double orthogonality_tolerance) {
    ordered_json j;
    j["format"] = kReportFormat;
    j["tool_version"] = kToolVersion;
    j["group"] = a.g().name();
    j["order"] = a.order();
    j["identity"] = a.g().identity();
    j["abelian"] = a.g().is_abelian();
    j["associativity"] = {{"exhaustive", a.g().associativity().exhaustive},
                          {"triples_checked", a.g().associativity().triples_checked},
                          {"exhaustive_limit", kExhaustiveAssociativityLimit}};
    j["num_classes"] = a.classes.num_classes();
    j["class_sizes"] = a.classes.class_sizes;
    j["class_representatives"] = a.classes.representatives;
    auto degrees = a.table.degrees;
    std::sort(degrees.begin(), degrees.end());
    j["degrees"] = degrees;
    j["D"] = a.D();
    if (a.degree.witness_row) j["witness_row"] = *a.degree.witness_row;
    else j["witness_row"] = nullptr;
    j["perfect"] = a.perfect;
    j["commutator_order"] = a.commutator_order;
    j["trivial_row"] = a.table.trivial_row;
    std::vector<int> mult;
    for (std::size_t r = 0; r < a.table.num_classes(); ++r) mult.push_back(conjugation_multiplicity(a, r));
    j["conjugation_multiplicities"] = mult;
    j["orthogonality"] = {{"tolerance", orthogonality_tolerance},
                          {"row_residual", row_orthogonality_residual(a.table)},
                          {"column_residual", column_orthogonality_residual(a.table)},
                          {"attempts", a.table.attempts}};
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < a.table.num_classes(); ++r)
        rows.push_back({{"degree", a.table.degrees[r]},
                        {"values", complex_array(std::span<const Complex>(
                                       a.table.values.data() + r * a.table.num_classes(), a.table.num_classes()))}});
    j["characters"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string search_json(const GroupAnalysis& a, const SearchConfig& cfg, const SearchResult& res) {
    ordered_json j;
    j["format"] = kReportFormat;
    j["tool_version"] = kToolVersion;
    j["group"] = {{"name", a.g().name()}, {"order", a.order()}, {"D", a.D()}};
    j["config"] = {{"objective", std::string(to_string(cfg.objective))},
                   {"budget", cfg.budget},
                   {"restarts", cfg.restarts},
                   {"initial_step", cfg.initial_step},
                   {"final_step", cfg.final_step},
                   {"seed", cfg.seed},
                   {"threads", cfg.threads}};
    const double bound = objective_bound(cfg.objective, a.D());
    j["bound"] = bound;
    j["best_value"] = res.best_value;
    j["margin"] = bound - res.best_value;
    j["best_restart"] = res.best_restart;
    j["evaluations_used"] = res.evaluations_used;
    j["trace"] = res.trace;
    ordered_json inputs = ordered_json::array();
    for (const auto& f : res.best_inputs) inputs.push_back(complex_array(f.values()));
    j["best_inputs"] = std::move(inputs);
    return j.dump(2) + "\n";
}

std::string reproducer_json(const GroupAnalysis& a, const VerificationReport& report) {
    ordered_json j;
    j["format"] = kReportFormat;
    j["group"] = report.group;
    j["seed"] = report.seed;
    ordered_json failures = ordered_json::array();
    for (const auto& c : report.checks)
        for (const auto& t : c.per_trial) {
            const bool secondary_fail = t.bound_secondary && *t.bound_secondary < t.observed;
            if (t.margin >= 0 && !secondary_fail) continue;
            ordered_json f;
            f["check"] = c.name;
            f["trial"] = t.trial;
            f["trial_seed"] = t.seed;
            f["observed"] = t.observed;
            f["bound"] = t.bound;
            f["margin"] = t.margin;
            if (t.component) f["component"] = *t.component;
            if (t.element) f["h"] = *t.element;
            ordered_json in = ordered_json::array();
            for (const auto& fn : trial_inputs(a, c.name, report.seed, t.trial)) in.push_back(complex_array(fn.values()));
            f["inputs"] = std::move(in);
            failures.push_back(std::move(f));
        }
    j["failures"] = std::move(failures);
    return j.dump(2) + "\n";
}

}  // namespace qrg
