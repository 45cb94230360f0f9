#include "qrg/adversary.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace qrg {

std::string_view to_string(Objective o) {
    switch (o) {
        case Objective::theorem: return "theorem";
        case Objective::step1: return "step1";
        case Objective::lemma: return "lemma";
        case Objective::corollary: return "corollary";
    }
    return "?";
}

Objective parse_objective(std::string_view name) {
    for (auto o : {Objective::theorem, Objective::step1, Objective::lemma, Objective::corollary})
        if (to_string(o) == name) return o;
    throw std::invalid_argument("unknown objective '" + std::string(name) + "'");
}

void SearchConfig::validate() const {
    if (!(initial_step > 0) || !(final_step > 0)) throw std::invalid_argument("step magnitudes must be positive");
    if (final_step > initial_step) throw std::invalid_argument("step schedule must be non-increasing");
}

namespace {

enum class Feasible { disc, unit_norm };

Feasible feasible_set(Objective o) {
    return (o == Objective::lemma || o == Objective::corollary) ? Feasible::unit_norm : Feasible::disc;
}

std::size_t arity(Objective o) { return (o == Objective::lemma || o == Objective::corollary) ? 2 : 3; }

using Values = std::vector<Complex>;

void normalize_unit(Values& v) {
    double s = 0;
    for (auto z : v) s += std::norm(z);
    if (s == 0) {
        std::fill(v.begin(), v.end(), Complex(1.0));
        return;
    }
    const double scale = std::sqrt(static_cast<double>(v.size()) / s);
    for (auto& z : v) z *= scale;
}

void clip_disc(Complex& z) {
    const double r = std::abs(z);
    if (r > 1.0) z /= r;
}

/// Maps raw search variables to the objective's feasible inputs.
std::vector<GroupFunction> objective_inputs(Objective o, const std::vector<Values>& vars) {
    std::vector<GroupFunction> out;
    for (const auto& v : vars) out.emplace_back(v);
    if (o == Objective::step1) out[0] = centered(out[0]);
    return out;
}

struct RestartOutcome {
    double best = 0;
    std::vector<GroupFunction> inputs;
    std::vector<double> trace;
    std::size_t evaluations = 0;
};

RestartOutcome run_restart(const GroupAnalysis& a, const SearchConfig& cfg, std::size_t restart,
                           std::size_t moves) {
    const std::size_t n = a.order();
    const Objective o = cfg.objective;
    const Feasible feasible = feasible_set(o);
    Rng rng(mix_seed(cfg.seed, stream_id("restart"), restart));

    std::vector<Values> vars(arity(o), Values(n));
    const bool structured = restart % 2 == 1;
    for (auto& v : vars) {
        if (structured) {
            // A character scaled into the disc; falls back to the trivial row
            // when the group has no other.
            const std::size_t k = a.table.num_classes();
            std::size_t r = a.table.trivial_row;
            if (k > 1) {
                r = rng.below(k - 1);
                if (r >= a.table.trivial_row) ++r;
            }
            const double d = a.table.degrees[r];
            for (Element x = 0; x < n; ++x) v[x] = character_at(a, r, x) / d;
        } else {
            for (auto& z : v) z = feasible == Feasible::disc ? rng.unit_phase() : rng.gaussian();
        }
        if (feasible == Feasible::unit_norm) normalize_unit(v);
        else for (auto& z : v) clip_disc(z);
    }

    RestartOutcome out;
    out.inputs = objective_inputs(o, vars);
    out.best = evaluate_objective(a, o, out.inputs);
    out.evaluations = 1;
    out.trace.push_back(out.best);

    const double ratio = cfg.final_step / cfg.initial_step;
    for (std::size_t t = 0; t < moves; ++t) {
        const double frac = moves > 1 ? static_cast<double>(t) / static_cast<double>(moves - 1) : 0.0;
        const double step = cfg.initial_step * std::pow(ratio, frac);
        const std::size_t i = rng.below(vars.size());
        const std::size_t x = rng.below(n);
        const Complex delta = step * rng.unit_phase();

        Values saved = vars[i];
        vars[i][x] += delta;
        if (feasible == Feasible::disc) clip_disc(vars[i][x]);
        else normalize_unit(vars[i]);

        auto candidate = objective_inputs(o, vars);
        const double value = evaluate_objective(a, o, candidate);
        ++out.evaluations;
        if (value > out.best) {
            out.best = value;
            out.inputs = std::move(candidate);
        } else {
            vars[i] = std::move(saved);
        }
        out.trace.push_back(out.best);
    }
    return out;
}

}  // namespace

double evaluate_objective(const GroupAnalysis& a, Objective objective, const std::vector<GroupFunction>& inputs) {
    switch (objective) {
        case Objective::theorem: return theorem_lhs(a, inputs.at(0), inputs.at(1), inputs.at(2)).observed;
        case Objective::step1: return step1_reduced_lhs(a, inputs.at(0), inputs.at(1), inputs.at(2)).observed;
        case Objective::lemma: {
            const auto& u = inputs.at(0);
            const auto& v = inputs.at(1);
            return lemma_gap(a, u, v).observed / (u.l2_norm() * v.l2_norm());
        }
        case Objective::corollary: {
            const auto& u = inputs.at(0);
            const auto& v = inputs.at(1);
            return corollary_lhs(a, u, v).published.observed / std::pow(u.l2_norm() * v.l2_norm(), 2);
        }
    }
    throw std::logic_error("unreachable objective");
}

double objective_bound(Objective objective, int D) {
    const auto d = static_cast<double>(D);
    switch (objective) {
        case Objective::theorem: return 4.0 * std::pow(d, -0.125);
        case Objective::step1: return 3.0 * std::pow(d, -0.125);
        case Objective::lemma: return std::pow(d, -0.5);
        case Objective::corollary: return 1.0 / d;
    }
    throw std::logic_error("unreachable objective");
}

SearchResult maximize(const GroupAnalysis& a, const SearchConfig& config) {
    config.validate();
    const std::size_t restarts = std::max<std::size_t>(1, config.restarts);
    std::vector<RestartOutcome> outcomes(restarts);
    auto moves_for = [&](std::size_t r) {
        return config.budget / restarts + (r < config.budget % restarts ? 1 : 0);
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(restarts)));
    if (threads == 1) {
        for (std::size_t r = 0; r < restarts; ++r) outcomes[r] = run_restart(a, config, r, moves_for(r));
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t r; (r = next.fetch_add(1)) < restarts;)
                    outcomes[r] = run_restart(a, config, r, moves_for(r));
            });
    }

    SearchResult result;
    double running = -1.0;
    for (std::size_t r = 0; r < restarts; ++r) {
        auto& o = outcomes[r];
        if (o.best > result.best_value || r == 0) {
            result.best_value = o.best;
            result.best_inputs = o.inputs;
            result.best_restart = r;
        }
        result.evaluations_used += o.evaluations;
        for (double v : o.trace) {
            running = std::max(running, v);
            result.trace.push_back(running);
        }
    }
    return result;
}

std::vector<GroupFunction> witness_abelian_character(std::size_t n, long e1, long e2, long e3) {
    if (n < 2) throw std::invalid_argument("witness needs n >= 2");
    const auto m = static_cast<long>(n);
    auto reduce = [m](long e) { return ((e % m) + m) % m; };
    const long a = reduce(e1), b = reduce(e2), c = reduce(e3);
    if (a == 0 && b == 0 && c == 0) throw std::invalid_argument("witness exponents are all 0 mod n");
    if ((a + b + c) % m != 0) throw std::invalid_argument("witness exponents must sum to 0 mod n");
    std::vector<GroupFunction> out;
    for (long e : {a, b, c}) {
        std::vector<Complex> v(n);
        for (std::size_t x = 0; x < n; ++x) {
            const long k = (e * static_cast<long>(x)) % m;
            v[x] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
        }
        out.emplace_back(std::move(v), FunctionFlags{.disc_valued = true, .two_disc_valued = true});
    }
    return out;
}

}  // namespace qrg
