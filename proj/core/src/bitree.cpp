#include "bnf/bitree.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace bnf {

OrderedBiTree OrderedBiTree::seed() {
    OrderedBiTree t;
    t.nodes_.resize(2);
    t.nodes_[0].side = 1;
    t.nodes_[0].sign = 1;
    t.nodes_[1].side = 2;
    t.nodes_[1].sign = -1;
    return t;
}

bool OrderedBiTree::is_terminal(int id) const {
    return id >= 0 && id < node_count() && nodes_[std::size_t(id)].terminal();
}

OrderedBiTree OrderedBiTree::extend(int terminal) const {
    if (!is_terminal(terminal))
        throw std::invalid_argument("extend: node " + std::to_string(terminal) +
                                    " is not a terminal");
    if (chronicle_.empty() && terminal != r1)
        throw std::invalid_argument("extend: the first split must be at r1");
    OrderedBiTree t = *this;
    const int base = t.node_count();
    const Node parent = t.nodes_[std::size_t(terminal)];
    for (int c = 0; c < 3; ++c) {
        Node child;
        child.parent = terminal;
        child.side = parent.side;
        child.sign = c == 1 ? -parent.sign : parent.sign;
        t.nodes_.push_back(child);
        t.nodes_[std::size_t(terminal)].children[std::size_t(c)] = base + c;
    }
    t.chronicle_.push_back(terminal);
    t.nodes_[std::size_t(terminal)].generation = t.generations();
    return t;
}

std::vector<int> OrderedBiTree::terminals() const {
    std::vector<int> out;
    for (int i = 0; i < node_count(); ++i)
        if (nodes_[std::size_t(i)].terminal()) out.push_back(i);
    return out;
}

std::vector<int> OrderedBiTree::nonterminals() const {
    std::vector<int> out;
    for (int i = 0; i < node_count(); ++i)
        if (!nodes_[std::size_t(i)].terminal()) out.push_back(i);
    return out;
}

std::pair<std::vector<int>, std::vector<int>> OrderedBiTree::projections() const {
    std::vector<int> a, b;
    for (int i = 0; i < node_count(); ++i) (nodes_[std::size_t(i)].side == 1 ? a : b).push_back(i);
    return {a, b};
}

void OrderedBiTree::shape(int id, std::string& out) const {
    const Node& nd = nodes_[std::size_t(id)];
    if (nd.terminal()) {
        out += 'T';
        return;
    }
    out += '(';
    for (int c = 0; c < 3; ++c) {
        if (c) out += ' ';
        shape(nd.children[std::size_t(c)], out);
    }
    out += ')';
}

std::string OrderedBiTree::to_string() const {
    std::string s = "[";
    shape(r1, s);
    s += " | ";
    shape(r2, s);
    s += "] [";
    for (std::size_t i = 0; i < chronicle_.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(chronicle_[i]);
    }
    s += ']';
    return s;
}

OrderedBiTree OrderedBiTree::parse(const std::string& text) {
    const auto second = text.find('[', text.find(']'));
    const auto close = text.find(']', second == std::string::npos ? 0 : second);
    if (text.empty() || text.front() != '[' || second == std::string::npos ||
        close == std::string::npos)
        throw std::invalid_argument("bi-tree text must look like '[tree | tree] [ids]'");
    std::istringstream ids(text.substr(second + 1, close - second - 1));
    OrderedBiTree t = seed();
    int id;
    while (ids >> id) t = t.extend(id);
    if (!ids.eof()) throw std::invalid_argument("bi-tree chronicle holds a non-integer entry");
    auto squash = [](std::string s) {
        s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
                s.end());
        return s;
    };
    if (squash(t.to_string()) != squash(text))
        throw std::invalid_argument("bi-tree shape does not match its chronicle");
    return t;
}

std::uint64_t cardinality(int J) {
    if (J < 1 || J > 20) throw std::invalid_argument("cardinality: J out of range");
    std::uint64_t c = 1;
    for (int j = 2; j <= J; ++j) c *= std::uint64_t(2 * j);
    return c;
}

std::vector<OrderedBiTree> enumerate_ordered(int J) {
    if (J < 1 || J > 6) throw std::invalid_argument("enumerate_ordered: J must be in 1..6");
    std::vector<OrderedBiTree> level{OrderedBiTree::seed().extend(OrderedBiTree::r1)};
    for (int j = 2; j <= J; ++j) {
        std::vector<OrderedBiTree> next;
        next.reserve(level.size() * std::size_t(2 * j));
        for (const auto& t : level)
            for (int b : t.terminals()) next.push_back(t.extend(b));
        level = std::move(next);
    }
    return level;
}

namespace {

struct AssignmentWalker {
    const OrderedBiTree& tree;
    i64 box;
    IndexAssignment a;
    const std::function<void(const IndexAssignment&)>& fn;

    void run(int gen) {
        if (gen > tree.generations()) {
            fn(a);
            return;
        }
        const int p = tree.split_node(gen);
        const auto& ch = tree.node(p).children;
        const i64 np = a[p];
        for (i64 n1 = -box; n1 <= box; ++n1) {
            if (n1 == np) continue;
            for (i64 n3 = -box; n3 <= box; ++n3) {
                if (n3 == np) continue;
                const i64 n2 = n1 + n3 - np;
                if (n2 < -box || n2 > box) continue;
                a.freq[std::size_t(ch[0])] = n1;
                a.freq[std::size_t(ch[1])] = n2;
                a.freq[std::size_t(ch[2])] = n3;
                run(gen + 1);
            }
        }
    }
};

}  // namespace

void for_each_index_assignment(const OrderedBiTree& tree, i64 n_root, i64 box_N,
                               const std::function<void(const IndexAssignment&)>& fn) {
    if (box_N < 0 || n_root < -box_N || n_root > box_N) return;
    AssignmentWalker w{tree, box_N, {std::vector<i64>(std::size_t(tree.node_count()), 0)}, fn};
    w.a.freq[0] = w.a.freq[1] = n_root;
    w.run(1);
}

std::vector<IndexAssignment> enumerate_index_assignments(const OrderedBiTree& tree, i64 n_root,
                                                         i64 box_N) {
    std::vector<IndexAssignment> out;
    for_each_index_assignment(tree, n_root, box_N,
                              [&](const IndexAssignment& a) { out.push_back(a); });
    return out;
}

bool valid_assignment(const OrderedBiTree& tree, const IndexAssignment& a, i64 box_N) {
    if (a.freq.size() != std::size_t(tree.node_count())) return false;
    if (a[OrderedBiTree::r1] != a[OrderedBiTree::r2]) return false;
    for (i64 f : a.freq)
        if (f < -box_N || f > box_N) return false;
    for (int p : tree.nonterminals()) {
        const auto& c = tree.node(p).children;
        const i64 n = a[p], n1 = a[c[0]], n2 = a[c[1]], n3 = a[c[2]];
        if (n != n1 - n2 + n3) return false;
        // {n, n2} and {n1, n3} disjoint
        if (n == n1 || n == n3 || n2 == n1 || n2 == n3) return false;
    }
    return true;
}

std::vector<Generation> generation_data(const OrderedBiTree& tree, const IndexAssignment& a) {
    std::vector<Generation> out;
    out.reserve(std::size_t(tree.generations()));
    i64 acc = 0;
    for (int j = 1; j <= tree.generations(); ++j) {
        Generation g;
        g.node = tree.split_node(j);
        const auto& c = tree.node(g.node).children;
        g.tuple = {a[c[0]], a[c[1]], a[c[2]], a[g.node]};
        g.phi = phi(g.tuple);
        g.mu = mu_phase(g.tuple);
        g.sign = tree.node(g.node).sign;
        g.phase = g.sign * g.phi;
        acc += g.phase;
        g.phi_tilde = acc;
        out.push_back(g);
    }
    return out;
}

i64 terminal_phase(const OrderedBiTree& tree, const IndexAssignment& a) {
    i64 acc = 0;
    for (int b : tree.terminals()) {
        const i64 f = a[b];
        acc += tree.node(b).sign * f * f * f * f;
    }
    return acc;
}

std::uint64_t count_constrained(const OrderedBiTree& tree, int fixed_terminal, i64 m,
                                const std::vector<i64>& mus, i64 box_N) {
    if (!tree.is_terminal(fixed_terminal))
        throw std::invalid_argument("count_constrained: fixed node must be a terminal");
    if (!tree.is_terminal(OrderedBiTree::r2))
        throw std::invalid_argument("count_constrained: requires the second tree to be {r2}");
    if (mus.size() != std::size_t(tree.generations()))
        throw std::invalid_argument("count_constrained: need one mu per generation");
    std::uint64_t count = 0;
    for (i64 n = -box_N; n <= box_N; ++n) {
        for_each_index_assignment(tree, n, box_N, [&](const IndexAssignment& a) {
            if (a[fixed_terminal] != m) return;
            for (int j = 1; j <= tree.generations(); ++j) {
                const int p = tree.split_node(j);
                const auto& c = tree.node(p).children;
                if (mu_phase({a[c[0]], a[c[1]], a[c[2]], a[p]}) != mus[std::size_t(j - 1)]) return;
            }
            ++count;
        });
    }
    return count;
}

}  // namespace bnf
