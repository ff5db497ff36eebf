#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bnf/phase.hpp"

namespace bnf {

// Two ternary trees with roots r1 (id 0) and r2 (id 1) joined by an edge.
// The k-th split creates children 2 + 3(k-1), 3 + 3(k-1), 4 + 3(k-1).
class OrderedBiTree {
public:
    struct Node {
        int parent = -1;
        std::array<int, 3> children{-1, -1, -1};
        int side = 1;  // 1 for the tree under r1, 2 for the tree under r2
        int sign = 1;  // +1 carries u, -1 carries conj(u)
        int generation = 0;  // generation in which the node was split, 0 if terminal
        bool terminal() const { return children[0] < 0; }
    };

    // Generation 0: the two joined roots.
    static OrderedBiTree seed();
    static constexpr int r1 = 0;
    static constexpr int r2 = 1;

    OrderedBiTree extend(int terminal) const;

    int generations() const { return static_cast<int>(chronicle_.size()); }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    const Node& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
    const std::vector<int>& chronicle() const { return chronicle_; }
    // Node split at generation j (1-based).
    int split_node(int j) const { return chronicle_.at(static_cast<std::size_t>(j - 1)); }

    bool is_terminal(int id) const;
    std::vector<int> terminals() const;        // increasing id
    std::vector<int> nonterminals() const;     // increasing id

    // Node ids of each tree (Pi_1 rooted at r1, Pi_2 rooted at r2).
    std::pair<std::vector<int>, std::vector<int>> projections() const;

    // "[tree1 | tree2] [c1 c2 ...]" with tree := T | (child child child).
    std::string to_string() const;
    static OrderedBiTree parse(const std::string& text);

    friend bool operator==(const OrderedBiTree& a, const OrderedBiTree& b) {
        return a.chronicle_ == b.chronicle_;
    }

private:
    std::vector<Node> nodes_;
    std::vector<int> chronicle_;
    void shape(int id, std::string& out) const;
};

std::uint64_t cardinality(int J);
// All ordered bi-trees with J generations, 1 <= J <= 6.
std::vector<OrderedBiTree> enumerate_ordered(int J);

struct IndexAssignment {
    std::vector<i64> freq;  // by node id
    i64 operator[](int id) const { return freq[static_cast<std::size_t>(id)]; }
};

// Calls fn for every index function with n_r1 = n_r2 = n_root and every node in the box.
void for_each_index_assignment(const OrderedBiTree& tree, i64 n_root, i64 box_N,
                               const std::function<void(const IndexAssignment&)>& fn);
std::vector<IndexAssignment> enumerate_index_assignments(const OrderedBiTree& tree, i64 n_root,
                                                         i64 box_N);
// Checks roots, the splitting relation and non-resonance at every non-terminal.
bool valid_assignment(const OrderedBiTree& tree, const IndexAssignment& a, i64 box_N);

struct Generation {
    int node = -1;
    ResonantTuple tuple;  // (n_{a1}, n_{a2}, n_{a3}, n_a)
    i64 phi = 0;          // n1^4 - n2^4 + n3^4 - n^4
    i64 mu = 0;           // -n1^2 + n2^2 - n3^2 + n^2
    int sign = 1;         // conjugation of the split node
    i64 phase = 0;        // sign * phi
    i64 phi_tilde = 0;    // running sum of phase
};

std::vector<Generation> generation_data(const OrderedBiTree& tree, const IndexAssignment& a);

// Sum over terminals of sign_b n_b^4; equals the last phi_tilde.
i64 terminal_phase(const OrderedBiTree& tree, const IndexAssignment& a);

// Number of assignments in the box with n_{fixed_terminal} = m and mu_j = mus[j-1].
std::uint64_t count_constrained(const OrderedBiTree& tree, int fixed_terminal, i64 m,
                                const std::vector<i64>& mus, i64 box_N);

}  // namespace bnf
