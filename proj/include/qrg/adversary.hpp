#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qrg/harmonic.hpp"

namespace qrg {

enum class Objective { theorem, step1, lemma, corollary };

std::string_view to_string(Objective o);
/// Throws std::invalid_argument for unknown names.
Objective parse_objective(std::string_view name);

struct SearchConfig {
    Objective objective = Objective::theorem;
    std::size_t budget = 10000;  // perturbation moves, summed over restarts
    std::size_t restarts = 4;
    double initial_step = 0.5;
    double final_step = 0.01;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    /// Throws std::invalid_argument if the schedule is not positive and non-increasing.
    void validate() const;
};

/// Raw search variables. The objective sees them after projection onto the
/// feasible set (see objective_inputs).
struct SearchResult {
    double best_value = 0;
    std::vector<GroupFunction> best_inputs;  // feasible, as passed to the objective
    std::size_t best_restart = 0;
    std::size_t evaluations_used = 0;
    std::vector<double> trace;  // best-so-far after each evaluation, restarts in index order
};

/// Value the search maximizes. theorem/step1 return the observed quantity;
/// lemma/corollary are scale-invariant ratios observed / (|u| |v|)
/// resp. observed / (|u|^2 |v|^2), i.e. the observed value at unit norm.
double evaluate_objective(const GroupAnalysis& a, Objective objective, const std::vector<GroupFunction>& inputs);

/// Sharpest proven bound for the objective at this D. For the corollary
/// this is the erratum's D^-1 rather than the published D^-1/2.
double objective_bound(Objective objective, int D);

/// Random-restart hill climbing with projection after every move.
/// Deterministic given the config (thread count does not change the result).
SearchResult maximize(const GroupAnalysis& a, const SearchConfig& config);

/// f_i(x) = w^(e_i x), w = exp(2 pi i / n), on Z_n as built by build_cyclic.
/// Requires n >= 2, e1 + e2 + e3 = 0 mod n and not all exponents 0 mod n.
std::vector<GroupFunction> witness_abelian_character(std::size_t n, long e1, long e2, long e3);

}  // namespace qrg
