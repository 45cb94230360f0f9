#include "qrg/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qrg/random.hpp"

namespace qrg {

ClassAlgebra class_algebra(const FiniteGroup& group, const ConjugacyStructure& classes) {
    const std::size_t n = group.order();
    const std::size_t k = classes.num_classes();
    ClassAlgebra alg;
    alg.order = n;
    alg.class_sizes = classes.class_sizes;
    alg.constants.assign(k * k * k, 0);

    // count(i,j,l) = #{(x,y) in C_i x C_j : xy in C_l} = a(i,j,l) |C_l|
    for (Element x = 0; x < n; ++x) {
        const std::size_t i = classes.class_of[x];
        auto row = group.row(x);
        for (Element y = 0; y < n; ++y) {
            const std::size_t j = classes.class_of[y];
            ++alg.constants[(i * k + j) * k + classes.class_of[row[y]]];
        }
    }
    for (std::size_t t = 0; t < alg.constants.size(); ++t) {
        const std::size_t size_l = classes.class_sizes[t % k];
        if (alg.constants[t] % static_cast<std::int64_t>(size_l) != 0)
            throw std::logic_error("class-sum product count not divisible by class size");
        alg.constants[t] /= static_cast<std::int64_t>(size_l);
    }
    return alg;
}

double row_orthogonality_residual(const CharacterTable& t) {
    const std::size_t k = t.num_classes();
    double worst = 0;
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t s = 0; s < k; ++s) {
            Complex acc{};
            for (std::size_t c = 0; c < k; ++c)
                acc += static_cast<double>(t.class_sizes[c]) * t.at(r, c) * std::conj(t.at(s, c));
            acc /= static_cast<double>(t.order);
            worst = std::max(worst, std::abs(acc - Complex(r == s ? 1.0 : 0.0)));
        }
    return worst;
}

double column_orthogonality_residual(const CharacterTable& t) {
    const std::size_t k = t.num_classes();
    double worst = 0;
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t c2 = 0; c2 < k; ++c2) {
            Complex acc{};
            for (std::size_t r = 0; r < k; ++r) acc += t.at(r, c) * std::conj(t.at(r, c2));
            const double expect =
                c == c2 ? static_cast<double>(t.order) / static_cast<double>(t.class_sizes[c]) : 0.0;
            worst = std::max(worst, std::abs(acc - expect));
        }
    return worst;
}

namespace {

struct Attempt {
    std::optional<CharacterTable> table;
    std::string failure;
};

Attempt try_character_table(const ClassAlgebra& alg, const SpectraOptions& opt, int attempt) {
    const std::size_t k = alg.num_classes();
    const auto n = static_cast<double>(alg.order);
    Rng rng(mix_seed(opt.seed, stream_id("class-weights"), static_cast<std::uint64_t>(attempt)));

    // In the orthonormal basis C_l / sqrt|C_l| every class matrix is normal,
    // so any combination has a well-conditioned unitary eigenbasis.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) {
        const double w = rng.uniform(-1.0, 1.0);
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t j = 0; j < k; ++j) {
                const auto a = alg.at(i, j, l);
                if (a == 0) continue;
                m(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) +=
                    w * static_cast<double>(a) *
                    std::sqrt(static_cast<double>(alg.class_sizes[l]) / static_cast<double>(alg.class_sizes[j]));
            }
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, true);
    if (solver.info() != Eigen::Success) return {std::nullopt, "eigensolver did not converge"};
    const auto& lambda = solver.eigenvalues();

    double scale = 1.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) scale = std::max(scale, std::abs(lambda(i)));
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
        for (Eigen::Index j = i + 1; j < lambda.size(); ++j) gap = std::min(gap, std::abs(lambda(i) - lambda(j)));
    if (gap < 1e-6 * scale) return {std::nullopt, "eigenvalues not simple (gap " + std::to_string(gap) + ")"};

    struct Row {
        int degree;
        std::vector<Complex> values;
    };
    std::vector<Row> rows;
    for (std::size_t r = 0; r < k; ++r) {
        Eigen::VectorXcd u = solver.eigenvectors().col(static_cast<Eigen::Index>(r));
        u.normalize();
        // u_l is proportional to conj(chi(C_l)) sqrt|C_l|; with |u| = 1 the
        // proportionality constant has modulus 1/sqrt(n). Class 0 is {identity}.
        const Complex u0 = u(0);
        if (std::abs(u0) == 0.0) return {std::nullopt, "eigenvector vanishes at the identity class"};
        const Complex phase = u0 / std::abs(u0);
        const double degree = std::sqrt(n) * std::abs(u0);
        const double rounded = std::round(degree);
        if (std::abs(degree - rounded) >= opt.integrality_tolerance || rounded < 1.0)
            return {std::nullopt, "non-integral degree " + std::to_string(degree)};
        Row row{static_cast<int>(rounded), std::vector<Complex>(k)};
        for (std::size_t l = 0; l < k; ++l)
            row.values[l] = std::sqrt(n) * std::conj(u(static_cast<Eigen::Index>(l)) / phase) /
                            std::sqrt(static_cast<double>(alg.class_sizes[l]));
        rows.push_back(std::move(row));
    }

    auto key = [](double v) { return std::llround(v * 1e6); };
    std::sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        for (std::size_t c = 0; c < a.values.size(); ++c) {
            const auto ka = key(a.values[c].real()), kb = key(b.values[c].real());
            if (ka != kb) return ka > kb;
        }
        for (std::size_t c = 0; c < a.values.size(); ++c) {
            const auto ka = key(a.values[c].imag()), kb = key(b.values[c].imag());
            if (ka != kb) return ka > kb;
        }
        return false;
    });

    CharacterTable t;
    t.order = alg.order;
    t.class_sizes = alg.class_sizes;
    t.attempts = attempt + 1;
    long long sum_sq = 0;
    for (const auto& row : rows) {
        t.degrees.push_back(row.degree);
        sum_sq += static_cast<long long>(row.degree) * row.degree;
        t.values.insert(t.values.end(), row.values.begin(), row.values.end());
    }
    if (sum_sq != static_cast<long long>(alg.order))
        return {std::nullopt, "sum of squared degrees " + std::to_string(sum_sq) + " != " + std::to_string(alg.order)};

    std::vector<std::size_t> trivial;
    for (std::size_t r = 0; r < k; ++r) {
        bool ones = true;
        for (std::size_t c = 0; c < k && ones; ++c)
            ones = std::abs(t.at(r, c) - 1.0) <= opt.orthogonality_tolerance;
        if (ones) trivial.push_back(r);
    }
    if (trivial.size() != 1) return {std::nullopt, "expected exactly one trivial row"};
    t.trivial_row = trivial.front();

    const double row_res = row_orthogonality_residual(t);
    const double col_res = column_orthogonality_residual(t);
    if (row_res > opt.orthogonality_tolerance || col_res > opt.orthogonality_tolerance)
        return {std::nullopt, "orthogonality residual " + std::to_string(std::max(row_res, col_res))};
    return {std::move(t), {}};
}

}  // namespace

CharacterTable character_table(const ClassAlgebra& algebra, const SpectraOptions& options) {
    std::string last;
    for (int attempt = 0; attempt < std::max(1, options.retry_budget); ++attempt) {
        auto result = try_character_table(algebra, options, attempt);
        if (result.table) return std::move(*result.table);
        last = result.failure;
    }
    throw DegenerateSpectrum("character table failed after " + std::to_string(options.retry_budget) +
                             " attempts: " + last);
}

QuasiRandomnessDegree quasirandomness_degree(const CharacterTable& table, bool perfect) {
    QuasiRandomnessDegree q;
    for (std::size_t r = 0; r < table.degrees.size(); ++r) {
        if (r == table.trivial_row) continue;
        if (!q.witness_row || table.degrees[r] < q.degree) {
            q.degree = table.degrees[r];
            q.witness_row = r;
        }
    }
    if (!q.witness_row) return q;
    if ((q.degree == 1) == perfect)
        throw SpectralInconsistency("character table gives D = " + std::to_string(q.degree) + " but the group is " +
                                    (perfect ? "perfect" : "not perfect"));
    return q;
}

GroupAnalysis analyze(FiniteGroup group, const SpectraOptions& options) {
    GroupAnalysis a;
    a.group = std::make_shared<const FiniteGroup>(std::move(group));
    a.classes = conjugacy_classes(*a.group);
    a.algebra = class_algebra(*a.group, a.classes);
    a.table = character_table(a.algebra, options);
    a.commutator_order = commutator_subgroup(*a.group).size();
    a.perfect = a.commutator_order == a.group->order();
    a.degree = quasirandomness_degree(a.table, a.perfect);
    return a;
}

GroupFunction isotypic_project(const GroupAnalysis& a, const GroupFunction& f, std::size_t row) {
    const FiniteGroup& g = a.g();
    const std::size_t n = g.order();
    if (f.size() != n) throw ConstraintError("function size does not match group order");
    if (row >= a.table.num_classes()) throw std::out_of_range("character row out of range");
    std::vector<Complex> out(n);
    for (Element h = 0; h < n; ++h) {
        const Complex w = std::conj(character_at(a, row, h));
        const Element hinv = g.inv(h);
        for (Element x = 0; x < n; ++x) out[x] += w * f[g.conjugate(hinv, x)];
    }
    const double scale = static_cast<double>(a.table.degrees[row]) / static_cast<double>(n);
    for (auto& v : out) v *= scale;
    return GroupFunction(std::move(out));
}

int conjugation_multiplicity(const GroupAnalysis& a, std::size_t row) {
    Complex s{};
    for (std::size_t c = 0; c < a.table.num_classes(); ++c) s += std::conj(a.table.at(row, c));
    return static_cast<int>(std::lround(s.real()));
}

}  // namespace qrg
