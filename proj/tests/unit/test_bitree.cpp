#include <doctest.h>

#include <set>

#include "bnf/bitree.hpp"

using namespace bnf;

TEST_SUITE("bitree") {

TEST_CASE("seed and first split") {
    const auto s = OrderedBiTree::seed();
    CHECK(s.node_count() == 2);
    CHECK(s.node(OrderedBiTree::r1).sign == 1);
    CHECK(s.node(OrderedBiTree::r2).sign == -1);
    CHECK_THROWS(s.extend(OrderedBiTree::r2));

    const auto t = s.extend(OrderedBiTree::r1);
    CHECK(t.generations() == 1);
    CHECK(t.node_count() == 5);
    CHECK(t.node(2).sign == 1);
    CHECK(t.node(3).sign == -1);
    CHECK(t.node(4).sign == 1);
    CHECK(t.terminals() == std::vector<int>{1, 2, 3, 4});
    CHECK(t.to_string() == "[(T T T) | T] [0]");
    CHECK_THROWS(t.extend(0));
}

TEST_CASE("node bookkeeping after several splits") {
    const auto t = OrderedBiTree::seed().extend(0).extend(1).extend(3);
    CHECK(t.node_count() == 3 * 3 + 2);
    CHECK(t.terminals().size() == 2 * 3 + 2);
    CHECK(t.nonterminals() == std::vector<int>{0, 1, 3});
    CHECK(t.split_node(2) == 1);
    CHECK(t.node(3).generation == 3);
    // Children of the conjugate node 3 flip back to u in the middle.
    CHECK(t.node(8).sign == -1);
    CHECK(t.node(9).sign == 1);
    CHECK(t.node(10).sign == -1);
    CHECK(t.node(6).side == 2);
    const auto [p1, p2] = t.projections();
    CHECK(p1 == std::vector<int>{0, 2, 3, 4, 8, 9, 10});
    CHECK(p2 == std::vector<int>{1, 5, 6, 7});
    CHECK(t.to_string() == "[(T (T T T) T) | (T T T)] [0 1 3]");
}

TEST_CASE("text round trip") {
    for (int J = 1; J <= 4; ++J)
        for (const auto& t : enumerate_ordered(J)) CHECK(OrderedBiTree::parse(t.to_string()) == t);
    CHECK_THROWS(OrderedBiTree::parse("[(T T T) | T] [1]"));
    CHECK_THROWS(OrderedBiTree::parse("[(T T T) | (T T T)] [0]"));
    CHECK_THROWS(OrderedBiTree::parse("(T T T) | T"));
}

TEST_CASE("enumeration sizes and distinctness") {
    for (int J = 1; J <= 5; ++J) {
        const auto trees = enumerate_ordered(J);
        std::uint64_t closed = 1;
        for (int k = 2; k <= J; ++k) closed *= 2 * std::uint64_t(k);
        CHECK(trees.size() == closed);
        CHECK(cardinality(J) == closed);
        std::set<std::string> names;
        for (const auto& t : trees) names.insert(t.to_string());
        CHECK(names.size() == trees.size());
    }
    CHECK_THROWS(enumerate_ordered(0));
    CHECK_THROWS(enumerate_ordered(7));
}

TEST_CASE("index assignments of one generation match Gamma(n)") {
    const auto t = OrderedBiTree::seed().extend(0);
    CHECK(enumerate_index_assignments(t, 0, 1).size() == 2);
    for (i64 n = -3; n <= 3; ++n)
        CHECK(enumerate_index_assignments(t, n, 3).size() == gamma_enumerate(n, 3).size());
}

TEST_CASE("assignments are valid and the phase telescopes") {
    const auto t = OrderedBiTree::seed().extend(0).extend(4).extend(1);
    std::size_t count = 0;
    for (i64 n = -2; n <= 2; ++n)
        for_each_index_assignment(t, n, 2, [&](const IndexAssignment& a) {
            ++count;
            CHECK(valid_assignment(t, a, 2));
            const auto gens = generation_data(t, a);
            REQUIRE(gens.size() == 3);
            i64 direct = 0;
            for (int b : t.terminals()) {
                const i64 x = a[b];
                direct += t.node(b).sign * x * x * x * x;
            }
            CHECK(gens.back().phi_tilde == direct);
            CHECK(terminal_phase(t, a) == direct);
            i64 running = 0;
            for (const auto& g : gens) {
                CHECK(g.phase == g.sign * g.phi);
                running += g.phase;
                CHECK(g.phi_tilde == running);
                CHECK(g.phi != 0);
            }
        });
    CHECK(count > 0);

    auto bad = enumerate_index_assignments(t, 1, 2).front();
    bad.freq[2] += 1;
    CHECK_FALSE(valid_assignment(t, bad, 2));
}

TEST_CASE("constrained counts against brute force") {
    const auto t = OrderedBiTree::seed().extend(0).extend(2);
    const i64 box = 3;
    // mu is always even, so odd constraints admit nothing.
    CHECK(count_constrained(t, 3, 1, {3, -2}, box) == 0);
    for (i64 m = -box; m <= box; ++m)
        for (i64 mu1 : {-4, -2, 2, 6})
            for (i64 mu2 : {-6, 2, 4}) {
                std::uint64_t brute = 0;
                for (i64 n = -box; n <= box; ++n)
                    for (const auto& a : enumerate_index_assignments(t, n, box)) {
                        const auto g = generation_data(t, a);
                        if (a[3] == m && g[0].mu == mu1 && g[1].mu == mu2) ++brute;
                    }
                CHECK(count_constrained(t, 3, m, {mu1, mu2}, box) == brute);
            }
}

}
