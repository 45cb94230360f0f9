#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <numbers>
#include <numeric>

#include "oracles.hpp"
#include "qrg/harmonic.hpp"
#include "qrg/spectra.hpp"

using namespace qrg;

namespace {

std::vector<int> sorted_degrees(const CharacterTable& t) {
    auto d = t.degrees;
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace

TEST_CASE("class algebra") {
    SUBCASE("cyclic group constants are the addition table") {
        const auto g = build_cyclic(5);
        const auto alg = class_algebra(g, conjugacy_classes(g));
        // Classes of Z_n are singletons in element order.
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                for (std::size_t l = 0; l < 5; ++l) CHECK(alg.at(i, j, l) == (l == (i + j) % 5 ? 1 : 0));
    }
    SUBCASE("trivial group") {
        const auto g = build_cyclic(1);
        const auto alg = class_algebra(g, conjugacy_classes(g));
        CHECK(alg.constants == std::vector<std::int64_t>{1});
    }
    SUBCASE("S_3 transpositions squared") {
        const auto g = build_symmetric(3);
        const auto cs = conjugacy_classes(g);
        const auto alg = class_algebra(g, cs);
        std::size_t transp = 0, three = 0;
        for (std::size_t c = 0; c < cs.num_classes(); ++c) {
            if (cs.class_sizes[c] == 3) transp = c;
            if (cs.class_sizes[c] == 2) three = c;
        }
        CHECK(alg.at(transp, transp, 0) == 3);
        CHECK(alg.at(transp, transp, three) == 3);
        CHECK(alg.at(transp, transp, transp) == 0);
    }
    SUBCASE("size identity and inversion symmetry") {
        for (const auto& g : {build_symmetric(4), build_sl2(5), build_alternating(5)}) {
            const auto cs = conjugacy_classes(g);
            const auto alg = class_algebra(g, cs);
            const std::size_t k = cs.num_classes();
            std::vector<std::size_t> inv_class(k);
            for (std::size_t c = 0; c < k; ++c) inv_class[c] = cs.class_of[g.inv(cs.representatives[c])];
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) {
                    std::int64_t s = 0;
                    for (std::size_t l = 0; l < k; ++l)
                        s += alg.at(i, j, l) * static_cast<std::int64_t>(cs.class_sizes[l]);
                    REQUIRE(s == static_cast<std::int64_t>(cs.class_sizes[i] * cs.class_sizes[j]));
                    // The class algebra is commutative; (C_i C_j)^-1 = C_j* C_i*.
                    for (std::size_t l = 0; l < k; ++l) {
                        REQUIRE(alg.at(i, j, l) == alg.at(j, i, l));
                        REQUIRE(alg.at(i, j, l) == alg.at(inv_class[j], inv_class[i], inv_class[l]));
                    }
                }
        }
    }
}

TEST_CASE("character tables of small groups") {
    SUBCASE("Z_4 is the 4th-roots-of-unity table") {
        const auto a = analyze(build_cyclic(4));
        CHECK(a.table.degrees == std::vector<int>{1, 1, 1, 1});
        for (std::size_t r = 0; r < 4; ++r) {
            // Each row is x -> i^(k x) for some k; recover k from the generator's value.
            const Complex at1 = a.table.at(r, a.classes.class_of[1]);
            for (Element x = 0; x < 4; ++x) CHECK(std::abs(character_at(a, r, x) - std::pow(at1, x)) < 1e-10);
            CHECK(std::abs(std::pow(at1, 4) - 1.0) < 1e-10);
        }
        CHECK(a.table.trivial_row == 0);
    }
    SUBCASE("S_3 degrees") {
        const auto a = analyze(build_symmetric(3));
        CHECK(sorted_degrees(a.table) == std::vector<int>{1, 1, 2});
        CHECK(oracle::degrees_from_regular_representation(a.g(), 3) == std::vector<int>{1, 1, 2});
    }
    SUBCASE("A_5 degrees") {
        const auto a = analyze(build_alternating(5));
        CHECK(sorted_degrees(a.table) == std::vector<int>{1, 3, 3, 4, 5});
        CHECK(oracle::degrees_from_regular_representation(a.g(), 5) == std::vector<int>{1, 3, 3, 4, 5});
    }
    SUBCASE("trivial group") {
        const auto a = analyze(build_cyclic(1));
        CHECK(a.table.degrees == std::vector<int>{1});
        CHECK(a.D() == 1);
        CHECK_FALSE(a.degree.witness_row.has_value());
    }
}

TEST_CASE("character table invariants across the builtin families") {
    for (auto g : {build_cyclic(7), build_symmetric(4), build_alternating(4), build_sl2(3), build_sl2(5),
                   build_psl2(7), build_sl2(7), build_symmetric(5)}) {
        CAPTURE(g.name());
        const auto a = analyze(std::move(g));
        CHECK(row_orthogonality_residual(a.table) < 1e-8);
        CHECK(column_orthogonality_residual(a.table) < 1e-8);
        int sum = 0;
        for (int d : a.table.degrees) sum += d * d;
        CHECK(sum == static_cast<int>(a.order()));
        int trivial = 0;
        for (std::size_t r = 0; r < a.table.num_classes(); ++r) {
            bool ones = true;
            for (std::size_t c = 0; c < a.table.num_classes(); ++c) ones &= std::abs(a.table.at(r, c) - 1.0) < 1e-8;
            trivial += ones;
        }
        CHECK(trivial == 1);
        // Degrees are sorted ascending.
        CHECK(std::is_sorted(a.table.degrees.begin(), a.table.degrees.end()));
    }
}

TEST_CASE("degrees agree with the regular-representation oracle for orders <= 60") {
    for (auto g : {build_cyclic(6), build_cyclic(12), build_symmetric(3), build_symmetric(4), build_alternating(4),
                   build_sl2(3), build_alternating(5)}) {
        CAPTURE(g.name());
        const auto a = analyze(g);
        CHECK(sorted_degrees(a.table) == oracle::degrees_from_regular_representation(g, 17));
    }
}

TEST_CASE("degrees are invariant under relabeling") {
    Rng rng(5);
    const auto g = build_sl2(5);
    std::vector<Element> perm(g.order());
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    CHECK(sorted_degrees(analyze(relabel(g, perm)).table) == sorted_degrees(analyze(g).table));
}

TEST_CASE("the table does not depend on the weight seed beyond rounding") {
    const auto g = build_psl2(7);
    const auto a = analyze(g, {.seed = 1});
    const auto b = analyze(g, {.seed = 99});
    REQUIRE(a.table.values.size() == b.table.values.size());
    for (std::size_t i = 0; i < a.table.values.size(); ++i) CHECK(std::abs(a.table.values[i] - b.table.values[i]) < 1e-9);
}

TEST_CASE("quasi-randomness degree") {
    for (std::size_t n = 2; n <= 12; ++n) CHECK(analyze(build_cyclic(n)).D() == 1);
    CHECK(analyze(build_alternating(5)).D() == 3);
    CHECK(analyze(build_sl2(5)).D() == 2);
    CHECK(analyze(build_psl2(7)).D() == 3);
    CHECK(analyze(build_sl2(7)).D() == 3);
    CHECK(analyze(build_sl2(11)).D() == 5);
    CHECK(analyze(build_sl2(13)).D() == 6);
    CHECK(analyze(build_sl2(3)).D() == 1);

    SUBCASE("inconsistent perfectness is a hard failure") {
        const auto a = analyze(build_alternating(5));
        CHECK_THROWS_AS(quasirandomness_degree(a.table, false), SpectralInconsistency);
        const auto z = analyze(build_cyclic(4));
        CHECK_THROWS_AS(quasirandomness_degree(z.table, true), SpectralInconsistency);
    }
    SUBCASE("witness row attains the minimum") {
        const auto a = analyze(build_sl2(7));
        REQUIRE(a.degree.witness_row);
        CHECK(a.table.degrees[*a.degree.witness_row] == 3);
        CHECK(*a.degree.witness_row != a.table.trivial_row);
    }
}

TEST_CASE("degenerate spectrum after the retry budget") {
    // A zero retry budget still makes one attempt; corrupt the algebra so no
    // attempt can succeed.
    const auto g = build_symmetric(3);
    auto alg = class_algebra(g, conjugacy_classes(g));
    for (auto& c : alg.constants) c = 0;
    CHECK_THROWS_AS(character_table(alg, {.retry_budget = 3}), DegenerateSpectrum);
}

TEST_CASE("isotypic projections") {
    const auto a = analyze(build_sl2(5));
    const std::size_t n = a.order();
    const std::size_t k = a.table.num_classes();
    Rng rng(21);

    SUBCASE("trivial row is class averaging") {
        for (int t = 0; t < 5; ++t) {
            const auto f = random_unit_vector(n, rng);
            const auto p = isotypic_project(a, f, a.table.trivial_row);
            const auto e = cond_exp_conj(a, f);
            for (std::size_t x = 0; x < n; ++x) REQUIRE(std::abs(p[x] - e[x]) < 1e-10);
        }
    }
    SUBCASE("resolution of the identity") {
        const auto f = random_unit_vector(n, rng);
        std::vector<Complex> sum(n);
        for (std::size_t r = 0; r < k; ++r) {
            const auto p = isotypic_project(a, f, r);
            for (std::size_t x = 0; x < n; ++x) sum[x] += p[x];
        }
        for (std::size_t x = 0; x < n; ++x) CHECK(std::abs(sum[x] - f[x]) < 1e-10);
    }
    SUBCASE("mutually orthogonal idempotents on random vectors") {
        for (int t = 0; t < 20; ++t) {
            const auto f = random_unit_vector(n, rng);
            for (std::size_t r = 0; r < k; ++r) {
                const auto pr = isotypic_project(a, f, r);
                const auto prr = isotypic_project(a, pr, r);
                REQUIRE((prr - pr).l2_norm() < 1e-9);
                for (std::size_t s = 0; s < k; ++s) {
                    if (s == r) continue;
                    REQUIRE(isotypic_project(a, pr, s).l2_norm() < 1e-9);
                }
            }
        }
    }
    SUBCASE("multiplicity = rank / degree") {
        const auto s4 = analyze(build_symmetric(4));
        const std::size_t m = s4.order();
        for (std::size_t r = 0; r < s4.table.num_classes(); ++r) {
            Eigen::MatrixXcd P(m, m);
            for (std::size_t j = 0; j < m; ++j) {
                std::vector<Complex> e(m);
                e[j] = 1.0;
                const auto col = isotypic_project(s4, GroupFunction(e), r);
                for (std::size_t i = 0; i < m; ++i) P(i, j) = col[i];
            }
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(P);
            svd.setThreshold(1e-8);
            const auto rank = static_cast<int>(svd.rank());
            CHECK(rank % s4.table.degrees[r] == 0);
            CHECK(rank / s4.table.degrees[r] == conjugation_multiplicity(s4, r));
        }
    }
    SUBCASE("on Z_n every function is a class function") {
        const auto z = analyze(build_cyclic(6));
        const auto f = random_unit_vector(6, rng);
        const auto p = isotypic_project(z, f, z.table.trivial_row);
        CHECK((p - f).l2_norm() < 1e-12);
        for (std::size_t r = 0; r < 6; ++r)
            if (r != z.table.trivial_row) CHECK(isotypic_project(z, f, r).l2_norm() < 1e-12);
    }
}
