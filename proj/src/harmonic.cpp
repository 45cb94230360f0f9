#include "qrg/harmonic.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace qrg {

namespace {

void require_size(const FiniteGroup& group, const GroupFunction& f, const char* what) {
    if (f.size() != group.order())
        throw ConstraintError(std::string(what) + ": function has " + std::to_string(f.size()) +
                              " values, group has order " + std::to_string(group.order()));
}

void require_pair_cap(const FiniteGroup& group, const char* what) {
    if (group.order() > kPairCap)
        throw SizeLimitError(std::string(what) + ": order " + std::to_string(group.order()) + " exceeds cap " +
                             std::to_string(kPairCap));
}

void require_disc(const GroupFunction& f, const char* what) {
    if (f.sup_norm() > 1.0 + kFlagTolerance)
        throw ConstraintError(std::string(what) + " must be disc-valued (sup norm " + std::to_string(f.sup_norm()) +
                              ")");
}

/// Step 1 normalization: 2-disc valued, mean zero, |f|_2 <= 1.
void require_normalized(const GroupFunction& f, const char* what) {
    if (f.sup_norm() > 2.0 + kFlagTolerance)
        throw ConstraintError(std::string(what) + " must be 2-disc valued");
    if (f.l2_norm() > 1.0 + kFlagTolerance) throw ConstraintError(std::string(what) + " must have L2 norm <= 1");
    if (std::abs(f.mean()) > kFlagTolerance) throw ConstraintError(std::string(what) + " must have mean zero");
}

double dpow(int D, double e) { return std::pow(static_cast<double>(D), e); }

std::uint64_t digest_all(std::initializer_list<const GroupFunction*> fs) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto* f : fs) h = digest(f->values(), h);
    return h;
}

}  // namespace

GroupFunction act_S(const FiniteGroup& group, Element g, const GroupFunction& f) {
    require_size(group, f, "act_S");
    std::vector<Complex> out(f.size());
    auto row = group.row(g);
    for (Element x = 0; x < group.order(); ++x) out[x] = f[row[x]];
    return GroupFunction(std::move(out), f.flags());
}

GroupFunction act_T(const FiniteGroup& group, Element g, const GroupFunction& f) {
    require_size(group, f, "act_T");
    std::vector<Complex> out(f.size());
    const Element ginv = group.inv(g);
    for (Element x = 0; x < group.order(); ++x) out[x] = f[group.mul(x, ginv)];
    return GroupFunction(std::move(out), f.flags());
}

GroupFunction conj_action(const FiniteGroup& group, Element g, const GroupFunction& f) {
    require_size(group, f, "conj_action");
    std::vector<Complex> out(f.size());
    for (Element x = 0; x < group.order(); ++x) out[x] = f[group.conjugate(g, x)];
    return GroupFunction(std::move(out), f.flags());
}

GroupFunction cond_exp_conj(const ConjugacyStructure& classes, const GroupFunction& f) {
    if (f.size() != classes.class_of.size()) throw ConstraintError("cond_exp_conj: size mismatch");
    std::vector<Complex> avg(classes.num_classes());
    for (std::size_t c = 0; c < classes.num_classes(); ++c) {
        Complex s{};
        for (Element x : classes.members[c]) s += f[x];
        avg[c] = s / static_cast<double>(classes.class_sizes[c]);
    }
    std::vector<Complex> out(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) out[x] = avg[classes.class_of[x]];
    return GroupFunction(std::move(out));
}

PairFunction PairFunction::dense(std::size_t n, std::vector<Complex> values) {
    if (values.size() != n * n) throw ConstraintError("dense pair function has wrong size");
    PairFunction p;
    p.n_ = n;
    p.dense_ = std::move(values);
    return p;
}

PairFunction PairFunction::factored(GroupFunction left, GroupFunction right) {
    if (left.size() != right.size()) throw ConstraintError("factored pair function: size mismatch");
    PairFunction p;
    p.n_ = left.size();
    p.left_ = std::move(left);
    p.right_ = std::move(right);
    return p;
}

std::vector<Complex> PairFunction::to_dense() const {
    if (!is_factored()) return dense_;
    std::vector<Complex> out(n_ * n_);
    for (std::size_t x = 0; x < n_; ++x)
        for (std::size_t y = 0; y < n_; ++y) out[x * n_ + y] = left_[x] * right_[y];
    return out;
}

double PairFunction::l2_norm() const {
    if (is_factored()) return left_.l2_norm() * right_.l2_norm();
    double s = 0;
    for (auto v : dense_) s += std::norm(v);
    return std::sqrt(s) / static_cast<double>(n_);
}

std::vector<Complex> diag_kernel(const FiniteGroup& group, const PairFunction& pair) {
    const std::size_t n = group.order();
    if (pair.order() != n) throw ConstraintError("diag_kernel: size mismatch");
    std::vector<Complex> phi(n);
    for (Element w = 0; w < n; ++w) {
        auto row = group.row(w);
        for (Element z = 0; z < n; ++z) phi[z] += pair(w, row[z]);
    }
    for (auto& v : phi) v /= static_cast<double>(n);
    return phi;
}

PairFunction cond_exp_diag(const FiniteGroup& group, const PairFunction& pair) {
    require_pair_cap(group, "cond_exp_diag");
    const auto phi = diag_kernel(group, pair);
    const std::size_t n = group.order();
    std::vector<Complex> out(n * n);
    for (Element x = 0; x < n; ++x) {
        auto row = group.row(group.inv(x));
        for (Element y = 0; y < n; ++y) out[static_cast<std::size_t>(x) * n + y] = phi[row[y]];
    }
    return PairFunction::dense(n, std::move(out));
}

PairFunction proj_fixed_tensor(const FiniteGroup& group, const GroupFunction& u, const GroupFunction& v) {
    require_pair_cap(group, "proj_fixed_tensor");
    require_size(group, u, "proj_fixed_tensor");
    require_size(group, v, "proj_fixed_tensor");
    const auto n = static_cast<Eigen::Index>(group.order());
    // Rows indexed by g: U(g, x) = u(g x g^-1). Then P = U^T V / n.
    Eigen::MatrixXcd U(n, n), V(n, n);
    for (Element g = 0; g < group.order(); ++g)
        for (Element x = 0; x < group.order(); ++x) {
            const Element c = group.conjugate(g, x);
            U(g, x) = u[c];
            V(g, x) = v[c];
        }
    Eigen::MatrixXcd P = U.transpose() * V / static_cast<double>(n);
    std::vector<Complex> out(group.order() * group.order());
    for (Eigen::Index x = 0; x < n; ++x)
        for (Eigen::Index y = 0; y < n; ++y) out[static_cast<std::size_t>(x * n + y)] = P(x, y);
    return PairFunction::dense(group.order(), std::move(out));
}

BoundCheck make_check(std::string quantity, double observed, double bound, std::uint64_t digest) {
    BoundCheck c;
    c.quantity = std::move(quantity);
    c.observed = observed;
    c.bound = bound;
    c.margin = bound - observed;
    c.inputs_digest = digest;
    return c;
}

BoundCheck lemma_gap(const GroupAnalysis& a, const GroupFunction& u, const GroupFunction& v) {
    const FiniteGroup& g = a.g();
    const auto fixed = proj_fixed_tensor(g, u, v);
    const auto eu = cond_exp_conj(a, u);
    const auto ev = cond_exp_conj(a, v);
    const std::size_t n = g.order();
    double s = 0;
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) s += std::norm(fixed(x, y) - eu[x] * ev[y]);
    const double observed = std::sqrt(s) / static_cast<double>(n);
    return make_check("lemma", observed, dpow(a.D(), -0.5) * u.l2_norm() * v.l2_norm(), digest_all({&u, &v}));
}

CorollaryCheck corollary_lhs(const GroupAnalysis& a, const GroupFunction& u, const GroupFunction& v,
                             Pairing pairing) {
    const FiniteGroup& g = a.g();
    require_size(g, u, "corollary_lhs");
    require_size(g, v, "corollary_lhs");
    const std::size_t n = g.order();

    Complex fixed_pairing;
    if (pairing == Pairing::conjugation)
        fixed_pairing = inner(cond_exp_conj(a, u), cond_exp_conj(a, v));
    else
        fixed_pairing = u.mean() * std::conj(v.mean());

    double total = 0;
    for (Element h = 0; h < n; ++h) {
        Complex s{};
        if (pairing == Pairing::conjugation) {
            for (Element x = 0; x < n; ++x) s += u[x] * std::conj(v[g.conjugate(h, x)]);
        } else {
            const Element hinv = g.inv(h);
            for (Element x = 0; x < n; ++x) s += u[x] * std::conj(v[g.mul(x, hinv)]);
        }
        s /= static_cast<double>(n);
        total += std::norm(s - fixed_pairing);
    }
    const double observed = total / static_cast<double>(n);
    const double norms = std::pow(u.l2_norm(), 2) * std::pow(v.l2_norm(), 2);
    const auto d = digest_all({&u, &v});
    return {make_check("corollary", observed, dpow(a.D(), -0.5) * norms, d),
            make_check("corollary_erratum", observed, dpow(a.D(), -1.0) * norms, d)};
}

BoundCheck theorem_lhs(const GroupAnalysis& a, const GroupFunction& f1, const GroupFunction& f2,
                       const GroupFunction& f3) {
    const FiniteGroup& g = a.g();
    for (auto* f : {&f1, &f2, &f3}) require_size(g, *f, "theorem_lhs");
    require_disc(f1, "theorem_lhs: f1");
    require_disc(f2, "theorem_lhs: f2");
    require_disc(f3, "theorem_lhs: f3");
    const std::size_t n = g.order();

    const auto e2 = cond_exp_conj(a, f2);
    const auto e3 = cond_exp_conj(a, f3);
    Complex structured{};
    for (Element x = 0; x < n; ++x) structured += e2[x] * e3[x];
    structured = f1.mean() * structured / static_cast<double>(n);

    double total = 0;
    for (Element h = 0; h < n; ++h) {
        Complex s{};
        auto row = g.row(h);
        for (Element x = 0; x < n; ++x) s += f1[x] * f2[row[x]] * f3[g.mul(x, h)];
        total += std::abs(s / static_cast<double>(n) - structured);
    }
    return make_check("theorem", total / static_cast<double>(n), 4.0 * dpow(a.D(), -0.125),
                      digest_all({&f1, &f2, &f3}));
}

BoundCheck step1_reduced_lhs(const GroupAnalysis& a, const GroupFunction& f1, const GroupFunction& f2,
                             const GroupFunction& f3) {
    const FiniteGroup& g = a.g();
    for (auto* f : {&f1, &f2, &f3}) require_size(g, *f, "step1_reduced_lhs");
    require_normalized(f1, "step1: f1");
    require_disc(f2, "step1: f2");
    require_disc(f3, "step1: f3");
    const std::size_t n = g.order();
    double total = 0;
    for (Element h = 0; h < n; ++h) {
        Complex s{};
        auto row = g.row(h);
        for (Element x = 0; x < n; ++x) s += f1[x] * f2[row[x]] * f3[g.mul(x, h)];
        total += std::abs(s) / static_cast<double>(n);
    }
    return make_check("step1", total / static_cast<double>(n), 3.0 * dpow(a.D(), -0.125),
                      digest_all({&f1, &f2, &f3}));
}

Complex step2_expanded(const FiniteGroup& group, const GroupFunction& f1, const GroupFunction& f2,
                       const GroupFunction& f3) {
    const std::size_t n = group.order();
    const auto F1 = PairFunction::tensor_conj(f1);
    const auto F2 = PairFunction::tensor_conj(f2);
    const auto F3 = PairFunction::tensor_conj(f3);
    std::vector<Element> right(n), twisted(n);
    Complex total{};
    for (Element h = 0; h < n; ++h) {
        const Element hinv = group.inv(h);
        for (Element x = 0; x < n; ++x) {
            right[x] = group.mul(x, hinv);
            twisted[x] = group.conjugate(h, x);
        }
        Complex s{};
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y)
                s += F3(x, y) * F1(right[x], right[y]) * F2(twisted[x], twisted[y]);
        total += s;
    }
    const auto nd = static_cast<double>(n);
    return total / (nd * nd * nd);
}

BoundCheck step2_squared(const GroupAnalysis& a, const GroupFunction& f1, const GroupFunction& f2,
                         const GroupFunction& f3) {
    const FiniteGroup& g = a.g();
    for (auto* f : {&f1, &f2, &f3}) require_size(g, *f, "step2_squared");
    require_normalized(f1, "step2: f1");
    require_disc(f2, "step2: f2");
    require_disc(f3, "step2: f3");
    const std::size_t n = g.order();
    double total = 0;
    for (Element h = 0; h < n; ++h) {
        const Element hinv = g.inv(h);
        Complex s{};
        for (Element x = 0; x < n; ++x) s += f3[x] * f1[g.mul(x, hinv)] * f2[g.conjugate(h, x)];
        total += std::norm(s / static_cast<double>(n));
    }
    const double observed = total / static_cast<double>(n);
    auto check = make_check("step2", observed, 5.0 * dpow(a.D(), -0.25), digest_all({&f1, &f2, &f3}));
    if (n <= kStep2IdentityCap) {
        const double residual = std::abs(step2_expanded(g, f1, f2, f3) - observed);
        check.identity_residual = residual;
        if (residual > kStep2IdentityTolerance)
            throw NumericalInvariantError("step2: expanded form differs from closed form by " +
                                          std::to_string(residual));
    }
    return check;
}

BoundCheck step3_intermediate(const GroupAnalysis& a, const GroupFunction& f1, const GroupFunction& f2) {
    const FiniteGroup& g = a.g();
    require_pair_cap(g, "step3_intermediate");
    require_size(g, f1, "step3_intermediate");
    require_size(g, f2, "step3_intermediate");
    require_normalized(f1, "step3: f1");
    require_disc(f2, "step3: f2");
    const std::size_t n = g.order();
    const auto nd = static_cast<double>(n);

    // Both pair functions factor: F1 conj(F1 o T~^h) = a_h (x) conj(a_h) and
    // F2 conj(F2 o S~^h T~^h) = b_h (x) conj(b_h).
    std::vector<Complex> ah(n), bh(n), phi(n);
    Complex total{};
    for (Element h = 0; h < n; ++h) {
        const Element hinv = g.inv(h);
        for (Element x = 0; x < n; ++x) {
            ah[x] = f1[x] * std::conj(f1[g.mul(x, hinv)]);
            bh[x] = f2[x] * std::conj(f2[g.conjugate(h, x)]);
        }
        std::fill(phi.begin(), phi.end(), Complex{});
        for (Element w = 0; w < n; ++w) {
            auto row = g.row(w);
            for (Element z = 0; z < n; ++z) phi[z] += bh[w] * std::conj(bh[row[z]]);
        }
        Complex s{};
        for (Element x = 0; x < n; ++x) {
            auto row = g.row(g.inv(x));
            Complex t{};
            for (Element y = 0; y < n; ++y) t += std::conj(ah[y]) * phi[row[y]];
            s += ah[x] * t;
        }
        total += s / (nd * nd * nd);
    }
    total /= nd;
    if (std::abs(total.imag()) > kImaginaryTolerance)
        throw NumericalInvariantError("step3: imaginary residue " + std::to_string(total.imag()));
    return make_check("step3", total.real(), 25.0 * dpow(a.D(), -0.5), digest_all({&f1, &f2}));
}

BoundCheck step4_final(const GroupAnalysis& a, const GroupFunction& f1, const GroupFunction& f2) {
    const FiniteGroup& g = a.g();
    require_size(g, f1, "step4_final");
    require_size(g, f2, "step4_final");
    if (f1.l2_norm() > 1.0 + kFlagTolerance) throw ConstraintError("step4: f1 must have L2 norm <= 1");
    if (std::abs(f1.mean()) > kFlagTolerance) throw ConstraintError("step4: f1 must have mean zero");
    require_disc(f2, "step4: f2");
    const std::size_t n = g.order();
    const auto nd = static_cast<double>(n);
    double total = 0;
    for (Element h = 0; h < n; ++h) {
        const Element hinv = g.inv(h);
        Complex p{}, q{};
        for (Element x = 0; x < n; ++x) {
            p += f1[x] * std::conj(f1[g.mul(x, hinv)]);
            q += f2[x] * std::conj(f2[g.conjugate(h, x)]);
        }
        total += std::norm(p / nd) * std::norm(q / nd);
    }
    return make_check("step4", total / nd, dpow(a.D(), -0.5), digest_all({&f1, &f2}));
}

BoundCheck step4_lemma_substitution(const GroupAnalysis& a, const GroupFunction& f2, Element h) {
    const FiniteGroup& g = a.g();
    require_pair_cap(g, "step4_lemma_substitution");
    require_size(g, f2, "step4_lemma_substitution");
    require_disc(f2, "step4_lemma: f2");
    if (h >= g.order()) throw ConstraintError("step4_lemma: element out of range");
    const std::size_t n = g.order();
    std::vector<Complex> b(n);
    for (Element x = 0; x < n; ++x) b[x] = f2[x] * std::conj(f2[g.conjugate(h, x)]);
    const GroupFunction bh(std::move(b));
    const auto phi = diag_kernel(g, PairFunction::tensor_conj(bh));
    const double scalar = std::norm(bh.mean());
    // (x, y) -> x^-1 y hits every z exactly n times, so the L2(mu x mu)
    // norm of phi(x^-1 y) - c equals the L2(mu) norm of phi - c.
    double s = 0;
    for (auto v : phi) s += std::norm(v - scalar);
    auto check = make_check("step4_lemma", std::sqrt(s / static_cast<double>(n)), dpow(a.D(), -0.5),
                            digest_all({&f2}));
    check.inputs_digest ^= mix_seed(h, 0);
    return check;
}

GroupFunction random_phase_function(std::size_t n, Rng& rng) {
    std::vector<Complex> v(n);
    for (auto& z : v) z = rng.unit_phase();
    return GroupFunction(std::move(v), {.disc_valued = true, .two_disc_valued = true});
}

GroupFunction random_disc_function(std::size_t n, Rng& rng) {
    std::vector<Complex> v(n);
    for (auto& z : v) z = rng.in_disc();
    return GroupFunction(std::move(v), {.disc_valued = true, .two_disc_valued = true});
}

GroupFunction random_unit_vector(std::size_t n, Rng& rng) {
    std::vector<Complex> v(n);
    double s = 0;
    for (auto& z : v) {
        z = rng.gaussian();
        s += std::norm(z);
    }
    const double scale = std::sqrt(static_cast<double>(n) / s);
    for (auto& z : v) z *= scale;
    return GroupFunction(std::move(v));
}

GroupFunction centered(const GroupFunction& f) {
    const Complex m = f.mean();
    std::vector<Complex> v(f.values().begin(), f.values().end());
    for (auto& z : v) z -= m;
    GroupFunction out(std::move(v));
    return out.with_flags({.disc_valued = false,
                           .two_disc_valued = out.sup_norm() <= 2.0 + kFlagTolerance,
                           .mean_zero = std::abs(out.mean()) <= kFlagTolerance});
}

}  // namespace qrg
