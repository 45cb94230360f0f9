#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qrg/function.hpp"
#include "qrg/group.hpp"

namespace qrg {

/// Structure constants of the class-sum algebra:
/// C_i * C_j = sum_l a(i, j, l) C_l.
struct ClassAlgebra {
    std::size_t order = 0;
    std::vector<std::size_t> class_sizes;
    std::vector<std::int64_t> constants;  // k*k*k, index (i*k + j)*k + l

    std::size_t num_classes() const { return class_sizes.size(); }
    std::int64_t at(std::size_t i, std::size_t j, std::size_t l) const {
        const std::size_t k = num_classes();
        return constants[(i * k + j) * k + l];
    }
};

/// Exact constants by brute-force class-sum multiplication.
ClassAlgebra class_algebra(const FiniteGroup& group, const ConjugacyStructure& classes);

struct SpectraOptions {
    double orthogonality_tolerance = 1e-8;
    double integrality_tolerance = 1e-6;
    int retry_budget = 20;
    std::uint64_t seed = 0;
};

/// The random class-matrix combination failed to separate the characters
/// within the retry budget.
class DegenerateSpectrum : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The character table and the commutator subgroup disagree about the
/// existence of non-trivial linear characters.
class SpectralInconsistency : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CharacterTable {
    std::size_t order = 0;
    std::vector<std::size_t> class_sizes;
    std::vector<Complex> values;  // k*k, row r = character, column c = class
    std::vector<int> degrees;
    std::size_t trivial_row = 0;
    int attempts = 0;  // eigendecompositions tried

    std::size_t num_classes() const { return class_sizes.size(); }
    Complex at(std::size_t r, std::size_t c) const { return values[r * num_classes() + c]; }
};

/// Numeric Burnside: characters are the common eigenvectors of the class
/// matrices. Rows are sorted by degree, then by descending rounded real
/// parts (so the trivial character is row 0), then by imaginary parts.
CharacterTable character_table(const ClassAlgebra& algebra, const SpectraOptions& options = {});

/// max |(1/n) sum_c |C_c| chi_r conj(chi_s) - delta_rs|
double row_orthogonality_residual(const CharacterTable& table);
/// max |sum_r chi_r(c) conj(chi_r(c')) - delta_cc' n/|C_c||
double column_orthogonality_residual(const CharacterTable& table);

struct QuasiRandomnessDegree {
    /// Minimum degree of a non-trivial irreducible. The trivial group has
    /// none; it is reported as 1, the weakest degree every group satisfies.
    int degree = 1;
    std::optional<std::size_t> witness_row;
};

/// Throws SpectralInconsistency when (D == 1) disagrees with non-perfectness.
QuasiRandomnessDegree quasirandomness_degree(const CharacterTable& table, bool perfect);

/// Everything spectral about one group, computed once and shared.
struct GroupAnalysis {
    std::shared_ptr<const FiniteGroup> group;
    ConjugacyStructure classes;
    ClassAlgebra algebra;
    CharacterTable table;
    std::size_t commutator_order = 0;
    bool perfect = false;
    QuasiRandomnessDegree degree;

    const FiniteGroup& g() const { return *group; }
    std::size_t order() const { return group->order(); }
    int D() const { return degree.degree; }
};

GroupAnalysis analyze(FiniteGroup group, const SpectraOptions& options = {});

/// Character value chi_r at an element.
inline Complex character_at(const GroupAnalysis& a, std::size_t r, Element x) {
    return a.table.at(r, a.classes.class_of[x]);
}

/// Isotypic component of f for chi_r in the conjugation representation on
/// L^2(G), (pi^g f)(x) = f(g^-1 x g):  (d_r/n) sum_g conj(chi_r(g)) pi^g f.
GroupFunction isotypic_project(const GroupAnalysis& a, const GroupFunction& f, std::size_t row);

/// Multiplicity of chi_r in the conjugation representation, from the trace
/// of the isotypic projection: trace(P_r) / d_r = sum_c conj(chi_r(c)).
int conjugation_multiplicity(const GroupAnalysis& a, std::size_t row);

}  // namespace qrg
