#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qrg {

using Element = std::uint32_t;

/// Raised for malformed input: bad parameters to a builder, or a Cayley
/// table that fails validation. The message names the offending indices.
class GroupError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Tables at or below this order get an exhaustive associativity check.
inline constexpr std::size_t kExhaustiveAssociativityLimit = 256;
/// Random triples sampled above the exhaustive limit.
inline constexpr std::size_t kRandomAssociativityTriples = 100000;
/// Hard cap on the order of any group we store as a dense table.
inline constexpr std::size_t kMaxOrder = 5040;

/// How associativity was established when a group was validated.
struct AssociativityCheck {
    bool exhaustive = true;
    std::size_t triples_checked = 0;
};

/// A finite group stored as its full multiplication table.
///
/// Elements are dense indices 0..n-1. The table is immutable once built;
/// every constructor path goes through validation.
class FiniteGroup {
public:
    /// Validates `table` (row-major n*n) and derives inverses and identity.
    /// Throws GroupError naming the offending indices on failure.
    static FiniteGroup from_table(std::string name, std::size_t order, std::vector<Element> table,
                                  std::uint64_t associativity_seed = 0);

    const std::string& name() const { return name_; }
    std::size_t order() const { return order_; }
    Element identity() const { return identity_; }

    Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
    Element inv(Element a) const { return inverse_[a]; }
    /// g x g^-1
    Element conjugate(Element g, Element x) const { return mul(mul(g, x), inverse_[g]); }

    std::span<const Element> row(Element a) const {
        return {table_.data() + static_cast<std::size_t>(a) * order_, order_};
    }
    std::span<const Element> table() const { return table_; }
    std::span<const Element> inverses() const { return inverse_; }

    const AssociativityCheck& associativity() const { return assoc_; }

    bool is_abelian() const;

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
        return a.order_ == b.order_ && a.table_ == b.table_;
    }

private:
    FiniteGroup() = default;

    std::string name_;
    std::size_t order_ = 0;
    Element identity_ = 0;
    std::vector<Element> table_;
    std::vector<Element> inverse_;
    AssociativityCheck assoc_;
};

FiniteGroup build_cyclic(std::size_t n);
/// Permutations of {0..m-1} in lexicographic order; (p*q)(i) = p(q(i)).
FiniteGroup build_symmetric(int m);
/// Even permutations, lexicographic order.
FiniteGroup build_alternating(int m);
/// Determinant-one 2x2 matrices mod p, lexicographic on (a, b, c, d).
FiniteGroup build_sl2(int p);
/// SL(2,p)/{+-1}; each coset represented by the lexicographically smaller of M, -M.
FiniteGroup build_psl2(int p);

/// Parses the ASCII Cayley format: first line n, then n rows of n 0-based
/// indices. Lines starting with '#' are ignored.
FiniteGroup load_cayley_table(std::string_view text, std::string name = "cayley");
std::string to_cayley_text(const FiniteGroup& group);

/// Copy of `group` with element i renamed to perm[i].
FiniteGroup relabel(const FiniteGroup& group, std::span<const Element> perm);

struct ConjugacyStructure {
    std::vector<std::size_t> class_of;
    std::vector<Element> representatives;
    std::vector<std::size_t> class_sizes;
    /// Members of each class in increasing element order.
    std::vector<std::vector<Element>> members;

    std::size_t num_classes() const { return representatives.size(); }
};

/// Orbits of x -> g x g^-1. Class 0 is always {identity}; the remaining
/// classes are ordered by their smallest element.
ConjugacyStructure conjugacy_classes(const FiniteGroup& group);

/// Subgroup generated by all commutators a b a^-1 b^-1, as a sorted list.
std::vector<Element> commutator_subgroup(const FiniteGroup& group);

bool is_perfect(const FiniteGroup& group);

}  // namespace qrg
