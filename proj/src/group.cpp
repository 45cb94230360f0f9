#include "qrg/group.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>
#include <sstream>

#include "qrg/random.hpp"

namespace qrg {

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::string name, std::size_t order, std::vector<Element> table,
                                    std::uint64_t associativity_seed) {
    if (order == 0) throw GroupError("group order must be positive");
    if (order > kMaxOrder) throw GroupError("group order " + idx(order) + " exceeds cap " + idx(kMaxOrder));
    if (table.size() != order * order)
        throw GroupError("table has " + idx(table.size()) + " entries, expected " + idx(order * order));

    const std::size_t n = order;
    for (std::size_t k = 0; k < table.size(); ++k)
        if (table[k] >= n)
            throw GroupError("entry at row " + idx(k / n) + " column " + idx(k % n) + " is " + idx(table[k]) +
                             ", out of range 0.." + idx(n - 1));

    // Latin square: rows then columns.
    std::vector<std::size_t> seen(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(seen.begin(), seen.end(), n);
        for (std::size_t j = 0; j < n; ++j) {
            const Element e = table[i * n + j];
            if (seen[e] != n)
                throw GroupError("Latin-square violation: row " + idx(i) + " repeats " + idx(e) + " at columns " +
                                 idx(seen[e]) + " and " + idx(j));
            seen[e] = j;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(seen.begin(), seen.end(), n);
        for (std::size_t i = 0; i < n; ++i) {
            const Element e = table[i * n + j];
            if (seen[e] != n)
                throw GroupError("Latin-square violation: column " + idx(j) + " repeats " + idx(e) + " at rows " +
                                 idx(seen[e]) + " and " + idx(i));
            seen[e] = i;
        }
    }

    // Identity: the unique e with e*j = j for all j (a Latin square has at
    // most one such row); then require j*e = j too.
    std::size_t identity = n;
    for (std::size_t e = 0; e < n && identity == n; ++e) {
        bool left = true;
        for (std::size_t j = 0; j < n && left; ++j) left = table[e * n + j] == j;
        if (left) identity = e;
    }
    if (identity == n) throw GroupError("no identity: no row acts as a left identity");
    for (std::size_t j = 0; j < n; ++j)
        if (table[j * n + identity] != j)
            throw GroupError("no identity: element " + idx(identity) + " is a left identity but " + idx(j) + "*" +
                             idx(identity) + " = " + idx(table[j * n + identity]));

    FiniteGroup g;
    g.name_ = std::move(name);
    g.order_ = n;
    g.identity_ = static_cast<Element>(identity);
    g.table_ = std::move(table);

    auto check = [&](Element a, Element b, Element c) {
        const Element lhs = g.mul(g.mul(a, b), c);
        const Element rhs = g.mul(a, g.mul(b, c));
        if (lhs != rhs)
            throw GroupError("non-associative: (" + idx(a) + "*" + idx(b) + ")*" + idx(c) + " = " + idx(lhs) +
                             " but " + idx(a) + "*(" + idx(b) + "*" + idx(c) + ") = " + idx(rhs));
    };
    if (n <= kExhaustiveAssociativityLimit) {
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b)
                for (Element c = 0; c < n; ++c) check(a, b, c);
        g.assoc_ = {true, n * n * n};
    } else {
        Rng rng(mix_seed(associativity_seed, stream_id("associativity")));
        for (std::size_t t = 0; t < kRandomAssociativityTriples; ++t) {
            const auto a = static_cast<Element>(rng.below(n));
            const auto b = static_cast<Element>(rng.below(n));
            const auto c = static_cast<Element>(rng.below(n));
            check(a, b, c);
        }
        g.assoc_ = {false, kRandomAssociativityTriples};
    }

    // Latin rows guarantee a unique right inverse; associativity makes it two-sided.
    g.inverse_.resize(n);
    for (Element a = 0; a < n; ++a) {
        auto r = g.row(a);
        const auto it = std::find(r.begin(), r.end(), g.identity_);
        g.inverse_[a] = static_cast<Element>(it - r.begin());
    }
    for (Element a = 0; a < n; ++a)
        if (g.mul(g.inverse_[a], a) != g.identity_)
            throw GroupError("element " + idx(a) + " has right inverse " + idx(g.inverse_[a]) +
                             " that is not a left inverse");
    return g;
}

bool FiniteGroup::is_abelian() const {
    for (Element a = 0; a < order_; ++a)
        for (Element b = a + 1; b < order_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

FiniteGroup build_cyclic(std::size_t n) {
    if (n == 0) throw GroupError("cyclic group order must be at least 1");
    if (n > kMaxOrder) throw GroupError("cyclic group order " + idx(n) + " exceeds cap " + idx(kMaxOrder));
    std::vector<Element> t(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i * n + j] = static_cast<Element>((i + j) % n);
    return FiniteGroup::from_table("z:" + idx(n), n, std::move(t));
}

namespace {

FiniteGroup build_permutation_group(int m, bool even_only, std::string name) {
    if (m < 2 || m > 7) throw GroupError("permutation degree must be in 2..7, got " + std::to_string(m));
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);

    auto parity = [](const std::vector<int>& q) {
        int inversions = 0;
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = i + 1; j < q.size(); ++j) inversions += q[i] > q[j];
        return inversions % 2;
    };
    auto code = [m](const std::vector<int>& q) {
        std::size_t c = 0;
        for (int v : q) c = c * m + v;
        return c;
    };

    std::vector<std::vector<int>> perms;
    do {
        if (!even_only || parity(p) == 0) perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    std::size_t space = 1;
    for (int i = 0; i < m; ++i) space *= m;
    std::vector<Element> index_of(space, 0);
    for (std::size_t i = 0; i < perms.size(); ++i) index_of[code(perms[i])] = static_cast<Element>(i);

    const std::size_t n = perms.size();
    std::vector<Element> t(n * n);
    std::vector<int> prod(m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            for (int k = 0; k < m; ++k) prod[k] = perms[i][perms[j][k]];
            t[i * n + j] = index_of[code(prod)];
        }
    return FiniteGroup::from_table(std::move(name), n, std::move(t));
}

using Mat2 = std::array<int, 4>;

Mat2 mat_mul(const Mat2& x, const Mat2& y, int p) {
    return {(x[0] * y[0] + x[1] * y[2]) % p, (x[0] * y[1] + x[1] * y[3]) % p, (x[2] * y[0] + x[3] * y[2]) % p,
            (x[2] * y[1] + x[3] * y[3]) % p};
}

Mat2 mat_neg(const Mat2& x, int p) { return {(p - x[0]) % p, (p - x[1]) % p, (p - x[2]) % p, (p - x[3]) % p}; }

void check_sl2_prime(int p) {
    if (!is_prime(p) || p < 3 || p > 13) throw GroupError("p must be a prime in 3..13, got " + std::to_string(p));
}

FiniteGroup build_matrix_group(int p, bool projective, std::string name) {
    check_sl2_prime(p);
    auto code = [p](const Mat2& x) { return static_cast<std::size_t>(((x[0] * p + x[1]) * p + x[2]) * p + x[3]); };

    std::vector<Mat2> mats;
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            for (int c = 0; c < p; ++c)
                for (int d = 0; d < p; ++d) {
                    if (((a * d - b * c) % p + p) % p != 1) continue;
                    const Mat2 m{a, b, c, d};
                    if (projective && mat_neg(m, p) < m) continue;
                    mats.push_back(m);
                }

    const std::size_t space = static_cast<std::size_t>(p) * p * p * p;
    std::vector<Element> index_of(space, 0);
    for (std::size_t i = 0; i < mats.size(); ++i) {
        index_of[code(mats[i])] = static_cast<Element>(i);
        if (projective) index_of[code(mat_neg(mats[i], p))] = static_cast<Element>(i);
    }

    const std::size_t n = mats.size();
    std::vector<Element> t(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i * n + j] = index_of[code(mat_mul(mats[i], mats[j], p))];
    return FiniteGroup::from_table(std::move(name), n, std::move(t));
}

}  // namespace

FiniteGroup build_symmetric(int m) { return build_permutation_group(m, false, "s:" + std::to_string(m)); }
FiniteGroup build_alternating(int m) { return build_permutation_group(m, true, "a:" + std::to_string(m)); }
FiniteGroup build_sl2(int p) { return build_matrix_group(p, false, "sl2:" + std::to_string(p)); }
FiniteGroup build_psl2(int p) { return build_matrix_group(p, true, "psl2:" + std::to_string(p)); }

FiniteGroup load_cayley_table(std::string_view text, std::string name) {
    std::vector<std::pair<std::size_t, std::string_view>> lines;  // (1-based line number, content)
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty() && line.front() == '#') continue;
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
        lines.emplace_back(line_no, line);
    }

    auto parse_ints = [](std::size_t at, std::string_view line) {
        std::vector<std::size_t> out;
        const char* p = line.data();
        const char* end = p + line.size();
        while (p < end) {
            while (p < end && (*p == ' ' || *p == '\t')) ++p;
            if (p == end) break;
            std::size_t v = 0;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc{} || (next < end && *next != ' ' && *next != '\t'))
                throw GroupError("parse error on line " + idx(at) + ": expected non-negative integers");
            out.push_back(v);
            p = next;
        }
        return out;
    };

    if (lines.empty()) throw GroupError("parse error: empty Cayley table");
    const auto header = parse_ints(lines[0].first, lines[0].second);
    if (header.size() != 1) throw GroupError("parse error on line " + idx(lines[0].first) + ": expected the order n");
    const std::size_t n = header[0];
    if (n == 0) throw GroupError("parse error on line " + idx(lines[0].first) + ": order must be positive");
    if (n > kMaxOrder) throw GroupError("order " + idx(n) + " exceeds cap " + idx(kMaxOrder));
    if (lines.size() != n + 1)
        throw GroupError("parse error: expected " + idx(n) + " table rows, found " + idx(lines.size() - 1));

    std::vector<Element> table;
    table.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [at, line] = lines[i + 1];
        const auto row = parse_ints(at, line);
        if (row.size() != n)
            throw GroupError("parse error on line " + idx(at) + ": row " + idx(i) + " has " + idx(row.size()) +
                             " entries, expected " + idx(n));
        for (auto v : row) {
            if (v >= n)
                throw GroupError("parse error on line " + idx(at) + ": entry " + idx(v) + " out of range in row " +
                                 idx(i));
            table.push_back(static_cast<Element>(v));
        }
    }
    return FiniteGroup::from_table(std::move(name), n, std::move(table));
}

std::string to_cayley_text(const FiniteGroup& group) {
    std::string out = std::to_string(group.order()) + "\n";
    for (Element i = 0; i < group.order(); ++i) {
        auto r = group.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j) out += ' ';
            out += std::to_string(r[j]);
        }
        out += '\n';
    }
    return out;
}

FiniteGroup relabel(const FiniteGroup& group, std::span<const Element> perm) {
    const std::size_t n = group.order();
    if (perm.size() != n) throw GroupError("relabeling has wrong length");
    std::vector<Element> t(n * n);
    for (Element i = 0; i < n; ++i)
        for (Element j = 0; j < n; ++j) t[static_cast<std::size_t>(perm[i]) * n + perm[j]] = perm[group.mul(i, j)];
    return FiniteGroup::from_table(group.name(), n, std::move(t));
}

ConjugacyStructure conjugacy_classes(const FiniteGroup& group) {
    const std::size_t n = group.order();
    constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
    ConjugacyStructure cs;
    cs.class_of.assign(n, unassigned);

    auto add_orbit = [&](Element x) {
        const std::size_t c = cs.representatives.size();
        std::vector<Element> orbit;
        for (Element g = 0; g < n; ++g) {
            const Element y = group.conjugate(g, x);
            if (cs.class_of[y] == unassigned) {
                cs.class_of[y] = c;
                orbit.push_back(y);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        cs.representatives.push_back(x);
        cs.class_sizes.push_back(orbit.size());
        cs.members.push_back(std::move(orbit));
    };

    add_orbit(group.identity());
    for (Element x = 0; x < n; ++x)
        if (cs.class_of[x] == unassigned) add_orbit(x);
    return cs;
}

std::vector<Element> commutator_subgroup(const FiniteGroup& group) {
    const std::size_t n = group.order();
    std::vector<char> is_gen(n, 0);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            is_gen[group.mul(group.mul(a, b), group.mul(group.inv(a), group.inv(b)))] = 1;
    std::vector<Element> gens;
    for (Element x = 0; x < n; ++x)
        if (is_gen[x]) gens.push_back(x);

    // Closure: in a finite group, the monoid generated equals the subgroup.
    std::vector<char> in(n, 0);
    std::vector<Element> frontier{group.identity()};
    in[group.identity()] = 1;
    while (!frontier.empty()) {
        const Element x = frontier.back();
        frontier.pop_back();
        for (Element s : gens) {
            const Element y = group.mul(x, s);
            if (!in[y]) {
                in[y] = 1;
                frontier.push_back(y);
            }
        }
    }
    std::vector<Element> out;
    for (Element x = 0; x < n; ++x)
        if (in[x]) out.push_back(x);
    return out;
}

bool is_perfect(const FiniteGroup& group) { return commutator_subgroup(group).size() == group.order(); }

}  // namespace qrg
