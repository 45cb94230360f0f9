#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "qrg/group.hpp"
#include "qrg/random.hpp"

using namespace qrg;

namespace {

std::multiset<std::size_t> sizes_of(const ConjugacyStructure& cs) {
    return {cs.class_sizes.begin(), cs.class_sizes.end()};
}

void check_invariants(const FiniteGroup& g) {
    const std::size_t n = g.order();
    for (Element i = 0; i < n; ++i) {
        std::vector<char> row(n, 0), col(n, 0);
        for (Element j = 0; j < n; ++j) {
            row[g.mul(i, j)] = 1;
            col[g.mul(j, i)] = 1;
        }
        REQUIRE(std::count(row.begin(), row.end(), 1) == static_cast<long>(n));
        REQUIRE(std::count(col.begin(), col.end(), 1) == static_cast<long>(n));
        REQUIRE(g.mul(g.identity(), i) == i);
        REQUIRE(g.mul(i, g.identity()) == i);
        REQUIRE(g.mul(i, g.inv(i)) == g.identity());
        REQUIRE(g.mul(g.inv(i), i) == g.identity());
    }
}

}  // namespace

TEST_CASE("cyclic groups") {
    SUBCASE("trivial group") {
        auto g = build_cyclic(1);
        CHECK(g.order() == 1);
        CHECK(conjugacy_classes(g).num_classes() == 1);
    }
    SUBCASE("Z_6 is abelian with singleton classes") {
        auto g = build_cyclic(6);
        auto cs = conjugacy_classes(g);
        CHECK(cs.num_classes() == 6);
        CHECK(std::all_of(cs.class_sizes.begin(), cs.class_sizes.end(), [](auto s) { return s == 1; }));
    }
    SUBCASE("Z_3 inverses") {
        auto g = build_cyclic(3);
        CHECK(std::vector<Element>(g.inverses().begin(), g.inverses().end()) == std::vector<Element>{0, 2, 1});
    }
    CHECK_THROWS_AS(build_cyclic(0), GroupError);
}

TEST_CASE("permutation groups") {
    auto s3 = build_symmetric(3);
    CHECK(s3.order() == 6);
    CHECK(sizes_of(conjugacy_classes(s3)) == std::multiset<std::size_t>{1, 2, 3});
    CHECK(oracle::class_sizes_by_centralizers(s3) == std::multiset<std::size_t>{1, 2, 3});

    auto a4 = build_alternating(4);
    CHECK(a4.order() == 12);
    CHECK(conjugacy_classes(a4).num_classes() == 4);
    CHECK(oracle::class_sizes_by_centralizers(a4).size() == 4);

    auto a5 = build_alternating(5);
    CHECK(a5.order() == 60);
    CHECK(sizes_of(conjugacy_classes(a5)) == std::multiset<std::size_t>{1, 15, 20, 12, 12});
    CHECK(oracle::class_sizes_by_centralizers(a5) == std::multiset<std::size_t>{1, 15, 20, 12, 12});

    CHECK(build_symmetric(4).order() == 24);
    CHECK_THROWS_AS(build_symmetric(1), GroupError);
    CHECK_THROWS_AS(build_alternating(8), GroupError);
}

TEST_CASE("matrix groups") {
    CHECK(build_sl2(3).order() == 24);
    CHECK(build_sl2(5).order() == 120);
    CHECK(build_psl2(7).order() == 168);
    for (int p : {3, 5, 7, 11}) {
        CHECK(build_sl2(p).order() == static_cast<std::size_t>(p * (p * p - 1)));
        CHECK(build_psl2(p).order() == static_cast<std::size_t>(p * (p * p - 1) / 2));
    }
    CHECK(conjugacy_classes(build_sl2(5)).num_classes() == 9);
    CHECK_THROWS_AS(build_sl2(9), GroupError);
    CHECK_THROWS_AS(build_sl2(2), GroupError);
    CHECK_THROWS_AS(build_psl2(17), GroupError);
}

TEST_CASE("all builders satisfy the group invariants") {
    for (const auto& g : {build_cyclic(1), build_cyclic(7), build_symmetric(4), build_alternating(5), build_sl2(3),
                          build_sl2(5), build_psl2(7), build_sl2(7)}) {
        CAPTURE(g.name());
        check_invariants(g);
    }
    // Orders above the exhaustive limit are checked on random triples.
    CHECK_FALSE(build_sl2(7).associativity().exhaustive);
    CHECK(build_sl2(7).associativity().triples_checked == kRandomAssociativityTriples);
    CHECK(build_sl2(5).associativity().exhaustive);
}

TEST_CASE("conjugacy classes partition the group and match brute-force conjugation") {
    for (const auto& g : {build_symmetric(3), build_alternating(4), build_sl2(3), build_symmetric(5), build_psl2(7)}) {
        CAPTURE(g.name());
        const auto cs = conjugacy_classes(g);
        const std::size_t n = g.order();
        CHECK(std::accumulate(cs.class_sizes.begin(), cs.class_sizes.end(), std::size_t{0}) == n);
        CHECK(cs.class_sizes[0] == 1);
        CHECK(cs.representatives[0] == g.identity());
        for (auto s : cs.class_sizes) CHECK(n % s == 0);
        if (n > 360) continue;
        // x ~ y iff some g conjugates x to y.
        for (Element x = 0; x < n; ++x) {
            std::vector<char> reach(n, 0);
            for (Element h = 0; h < n; ++h) reach[g.conjugate(h, x)] = 1;
            for (Element y = 0; y < n; ++y) REQUIRE((cs.class_of[x] == cs.class_of[y]) == bool(reach[y]));
        }
    }
}

TEST_CASE("class sizes are invariant under random relabeling") {
    Rng rng(11);
    for (const auto& g : {build_symmetric(4), build_sl2(5), build_alternating(5)}) {
        std::vector<Element> perm(g.order());
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        const auto h = relabel(g, perm);
        check_invariants(h);
        CHECK(sizes_of(conjugacy_classes(h)) == sizes_of(conjugacy_classes(g)));
    }
}

TEST_CASE("commutator subgroup") {
    CHECK(commutator_subgroup(build_cyclic(8)) == std::vector<Element>{0});
    const auto s3 = build_symmetric(3);
    const auto c = commutator_subgroup(s3);
    CHECK(c.size() == 3);
    const auto brute = oracle::commutator_closure(s3);
    CHECK(std::set<Element>(c.begin(), c.end()) == brute);
    CHECK(is_perfect(build_alternating(5)));
    CHECK(commutator_subgroup(build_alternating(5)).size() == 60);
    CHECK_FALSE(is_perfect(build_symmetric(4)));
    CHECK(commutator_subgroup(build_symmetric(4)).size() == 12);
    CHECK(commutator_subgroup(build_sl2(3)).size() == 8);
    CHECK(is_perfect(build_sl2(5)));
    const auto sl3 = build_sl2(3);
    const auto c3 = commutator_subgroup(sl3);
    CHECK(std::set<Element>(c3.begin(), c3.end()) == oracle::commutator_closure(sl3));
}

TEST_CASE("Cayley table loading") {
    SUBCASE("trivial group") {
        auto g = load_cayley_table("1\n0\n");
        CHECK(g.order() == 1);
    }
    SUBCASE("Z_2 with comments") {
        auto g = load_cayley_table("# Z_2\n2\n0 1\n# row 1\n1 0\n");
        CHECK(g.order() == 2);
        CHECK(g.inv(1) == 1);
    }
    SUBCASE("identity need not be index 0") {
        auto g = load_cayley_table("2\n1 0\n0 1\n");
        CHECK(g.identity() == 1);
    }
    SUBCASE("repeated entry in a row names the row") {
        try {
            load_cayley_table("2\n0 0\n1 0\n");
            FAIL("expected a Latin-square error");
        } catch (const GroupError& e) {
            CHECK(std::string(e.what()).find("row 0") != std::string::npos);
        }
    }
    SUBCASE("repeated entry in a column") {
        CHECK_THROWS_WITH_AS(load_cayley_table("2\n0 1\n0 1\n"), doctest::Contains("column 0"), GroupError);
    }
    SUBCASE("no identity") {
        // x*y = x - y mod 3 is a Latin square without an identity.
        CHECK_THROWS_WITH_AS(load_cayley_table("3\n0 2 1\n1 0 2\n2 1 0\n"), doctest::Contains("no identity"),
                             GroupError);
    }
    SUBCASE("non-associative quasigroup with identity") {
        // A loop of order 5 that is not a group.
        const char* loop =
            "5\n"
            "0 1 2 3 4\n"
            "1 0 3 4 2\n"
            "2 4 0 1 3\n"
            "3 2 4 0 1\n"
            "4 3 1 2 0\n";
        CHECK_THROWS_WITH_AS(load_cayley_table(loop), doctest::Contains("non-associative"), GroupError);
    }
    SUBCASE("parse errors") {
        CHECK_THROWS_WITH_AS(load_cayley_table(""), doctest::Contains("parse error"), GroupError);
        CHECK_THROWS_WITH_AS(load_cayley_table("2\n0 1\n"), doctest::Contains("parse error"), GroupError);
        CHECK_THROWS_WITH_AS(load_cayley_table("2\n0 x\n1 0\n"), doctest::Contains("line 2"), GroupError);
        CHECK_THROWS_WITH_AS(load_cayley_table("2\n0 1 1\n1 0\n"), doctest::Contains("row 0"), GroupError);
        CHECK_THROWS_WITH_AS(load_cayley_table("2\n0 2\n1 0\n"), doctest::Contains("out of range"), GroupError);
    }
}

TEST_CASE("export and reload round-trips") {
    for (const auto& g : {build_cyclic(5), build_symmetric(3), build_sl2(5), build_psl2(7)}) {
        const auto h = load_cayley_table(to_cayley_text(g), g.name());
        CHECK(h == g);
        CHECK(std::equal(h.inverses().begin(), h.inverses().end(), g.inverses().begin()));
        CHECK(h.identity() == g.identity());
    }
}
