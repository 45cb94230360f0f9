#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrg/function.hpp"
#include "qrg/group.hpp"
#include "qrg/random.hpp"
#include "qrg/spectra.hpp"

namespace qrg {

/// Largest order for which dense functions on G x G are materialized.
inline constexpr std::size_t kPairCap = 2000;
/// Quantities that are real by symmetry may carry at most this much imaginary residue.
inline constexpr double kImaginaryTolerance = 1e-9;
/// Step 2's expanded-form identity is re-derived on every call up to this order.
inline constexpr std::size_t kStep2IdentityCap = 400;
inline constexpr double kStep2IdentityTolerance = 1e-10;

class SizeLimitError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A hard numerical invariant failed (imaginary residue, broken identity).
class NumericalInvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Point actions, returned as the composed function used inside integrals.

/// x -> f(g x)
GroupFunction act_S(const FiniteGroup& group, Element g, const GroupFunction& f);
/// x -> f(x g^-1)
GroupFunction act_T(const FiniteGroup& group, Element g, const GroupFunction& f);
/// x -> f(g x g^-1)
GroupFunction conj_action(const FiniteGroup& group, Element g, const GroupFunction& f);

/// E(f | conjugation-invariant sets): the class average of f.
GroupFunction cond_exp_conj(const ConjugacyStructure& classes, const GroupFunction& f);
inline GroupFunction cond_exp_conj(const GroupAnalysis& a, const GroupFunction& f) {
    return cond_exp_conj(a.classes, f);
}

/// Complex function on G x G, dense (row-major, index x*n + y) or as a
/// product a(x) b(y).
class PairFunction {
public:
    static PairFunction dense(std::size_t n, std::vector<Complex> values);
    static PairFunction factored(GroupFunction left, GroupFunction right);
    /// f (x) conj(f)
    static PairFunction tensor_conj(const GroupFunction& f) { return factored(f, conj(f)); }

    std::size_t order() const { return n_; }
    bool is_factored() const { return dense_.empty(); }
    Complex operator()(Element x, Element y) const {
        return is_factored() ? left_[x] * right_[y] : dense_[static_cast<std::size_t>(x) * n_ + y];
    }
    std::vector<Complex> to_dense() const;
    /// L^2(mu x mu) norm.
    double l2_norm() const;

private:
    std::size_t n_ = 0;
    std::vector<Complex> dense_;
    GroupFunction left_, right_;
};

/// phi(z) = (1/n) sum_w F(w, w z); then E(F | Delta)(x, y) = phi(x^-1 y).
std::vector<Complex> diag_kernel(const FiniteGroup& group, const PairFunction& pair);
/// E(F | Delta)(x, y) = (1/n) sum_g F(g x, g y), via diag_kernel.
PairFunction cond_exp_diag(const FiniteGroup& group, const PairFunction& pair);

/// Projection of u (x) v onto the fixed vectors of the diagonal
/// conjugation action: (1/n) sum_g (u o c_g) (x) (v o c_g).
PairFunction proj_fixed_tensor(const FiniteGroup& group, const GroupFunction& u, const GroupFunction& v);

struct BoundCheck {
    std::string quantity;
    double observed = 0;
    double bound = 0;
    double margin = 0;  // bound - observed; never clamped
    std::uint64_t inputs_digest = 0;
    std::uint64_t seed = 0;
    /// Step 2 only: |closed form - expanded form| when it was re-derived.
    std::optional<double> identity_residual;

    bool passed() const { return margin >= 0; }
};

BoundCheck make_check(std::string quantity, double observed, double bound, std::uint64_t digest);

/// || P(u (x) v) - E(u|Phi) (x) E(v|Phi) ||  against  D^-1/2 |u| |v|
BoundCheck lemma_gap(const GroupAnalysis& a, const GroupFunction& u, const GroupFunction& v);

/// The representation whose matrix coefficients corollary_lhs averages.
enum class Pairing {
    conjugation,    // pi^g v = v o (x -> g x g^-1); fixed part = class averages
    right_regular,  // pi^g v = v o T^g;            fixed part = constants
};

struct CorollaryCheck {
    BoundCheck published;  // D^-1/2 |u|^2 |v|^2
    BoundCheck erratum;    // D^-1   |u|^2 |v|^2
};

/// (1/n) sum_g |<u, pi^g v> - <P u, P v>|^2
CorollaryCheck corollary_lhs(const GroupAnalysis& a, const GroupFunction& u, const GroupFunction& v,
                             Pairing pairing = Pairing::conjugation);

/// (1/n) sum_g |(1/n) sum_x f1(x) f2(gx) f3(xg) - mean(f1) <E f2, conj E f3>|  against 4 D^-1/8.
/// Requires disc-valued inputs.
BoundCheck theorem_lhs(const GroupAnalysis& a, const GroupFunction& f1, const GroupFunction& f2,
                       const GroupFunction& f3);

/// (1/n) sum_g |(1/n) sum_x f1(x) f2(gx) f3(xg)|  against 3 D^-1/8.
/// f1: 2-disc valued, mean zero, |f1|_2 <= 1; f2, f3 disc-valued.
BoundCheck step1_reduced_lhs(const GroupAnalysis& a, const GroupFunction& f1, const GroupFunction& f2,
                             const GroupFunction& f3);

/// (1/n) sum_g |(1/n) sum_x f3(x) f1(x g^-1) f2(g x g^-1)|^2  against 5 D^-1/4.
/// Also re-derives the value from the expanded F_i = f_i (x) conj(f_i) form.
BoundCheck step2_squared(const GroupAnalysis& a, const GroupFunction& f1, const GroupFunction& f2,
                         const GroupFunction& f3);

/// (1/n) sum_g (1/n^2) sum_{x,y} F3(x,y) F1(x g^-1, y g^-1) F2(g x g^-1, g y g^-1). O(n^3).
Complex step2_expanded(const FiniteGroup& group, const GroupFunction& f1, const GroupFunction& f2,
                       const GroupFunction& f3);

/// (1/n) sum_h <F1 conj(F1 o T~^h), E(F2 conj(F2 o S~^h T~^h) | Delta)>  against 25 D^-1/2.
BoundCheck step3_intermediate(const GroupAnalysis& a, const GroupFunction& f1, const GroupFunction& f2);

/// (1/n) sum_h |<f1, f1 o T^h>|^2 |<f2, f2 o S^h T^h>|^2  against D^-1/2.
BoundCheck step4_final(const GroupAnalysis& a, const GroupFunction& f1, const GroupFunction& f2);

/// || E(F2 conj(F2 o S~^h T~^h) | Delta) - |<f2, f2 o S^h T^h>|^2 ||  against D^-1/2.
BoundCheck step4_lemma_substitution(const GroupAnalysis& a, const GroupFunction& f2, Element h);

// Test-function generators.

/// Independent uniform phases, |f(x)| = 1.
GroupFunction random_phase_function(std::size_t n, Rng& rng);
/// Independent uniform points of the closed disc.
GroupFunction random_disc_function(std::size_t n, Rng& rng);
/// Complex Gaussian direction scaled to |f|_2 = 1.
GroupFunction random_unit_vector(std::size_t n, Rng& rng);
/// f - mean(f). For disc-valued f the result is 2-disc valued with |.|_2 <= 1.
GroupFunction centered(const GroupFunction& f);

}  // namespace qrg
