#include "phyloinv/tree.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

namespace phyloinv {

// ---------------------------------------------------------------------------
// Tree

Tree::Tree(std::size_t leaf_count, std::vector<Edge> edges) : leaves_(leaf_count) {
    if (leaf_count < 3)
        throw InputError("a tree needs at least 3 leaves, got " + std::to_string(leaf_count));
    const std::size_t nodes = edges.size() + 1;
    if (nodes <= leaf_count)
        throw InputError("tree has no interior node");
    adjacency_.assign(nodes, {});
    for (const Edge& e : edges) {
        if (e.a < 0 || e.b < 0 || static_cast<std::size_t>(e.a) >= nodes || static_cast<std::size_t>(e.b) >= nodes)
            throw InputError("edge endpoint out of range");
        if (e.a == e.b)
            throw InputError("self-loop at node " + std::to_string(e.a));
        adjacency_[e.a].push_back(e.b);
        adjacency_[e.b].push_back(e.a);
    }
    for (auto& nb : adjacency_) {
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
            throw InputError("duplicate edge");
    }
    // |E| = |V| - 1 holds by construction, so connected <=> acyclic tree.
    std::vector<char> seen(nodes, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        int n = stack.back();
        stack.pop_back();
        for (int m : adjacency_[n])
            if (!seen[m]) {
                seen[m] = 1;
                ++reached;
                stack.push_back(m);
            }
    }
    if (reached != nodes)
        throw InputError("edges do not form a connected tree");
    for (std::size_t n = 0; n < nodes; ++n) {
        if (n < leaf_count && adjacency_[n].size() != 1)
            throw InputError("leaf " + std::to_string(n + 1) + " has valency " + std::to_string(adjacency_[n].size()));
        if (n >= leaf_count && adjacency_[n].size() < 3)
            throw InputError("interior node has valency " + std::to_string(adjacency_[n].size()) + " (< 3)");
    }

    for (Edge& e : edges)
        if (e.a > e.b)
            std::swap(e.a, e.b);
    std::sort(edges.begin(), edges.end(), [&](const Edge& x, const Edge& y) {
        bool px = is_leaf(x.a), py = is_leaf(y.a);
        if (px != py)
            return px;
        return std::pair(x.a, x.b) < std::pair(y.a, y.b);
    });
    edges_ = std::move(edges);
}

Tree Tree::claw(std::size_t leaves) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < leaves; ++i)
        edges.push_back({static_cast<int>(i), static_cast<int>(leaves)});
    return Tree(leaves, std::move(edges));
}

void Tree::check_node(int node) const {
    if (node < 0 || static_cast<std::size_t>(node) >= node_count())
        throw InputError("node " + std::to_string(node) + " is not in the tree");
}

std::size_t Tree::valency(int node) const {
    check_node(node);
    return adjacency_[node].size();
}

const std::vector<int>& Tree::neighbors(int node) const {
    check_node(node);
    return adjacency_[node];
}

int Tree::edge_between(int a, int b) const {
    if (a > b)
        std::swap(a, b);
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].a == a && edges_[i].b == b)
            return static_cast<int>(i);
    return -1;
}

bool Tree::is_pendant(int edge) const {
    if (edge < 0 || static_cast<std::size_t>(edge) >= edges_.size())
        throw InputError("edge " + std::to_string(edge) + " is not in the tree");
    return is_leaf(edges_[edge].a);
}

int Tree::pendant_edge(int leaf) const {
    if (!is_leaf(leaf))
        throw InputError("node " + std::to_string(leaf) + " is not a leaf");
    return leaf;
}

bool Tree::is_trivalent() const {
    for (std::size_t n = leaves_; n < node_count(); ++n)
        if (adjacency_[n].size() != 3)
            return false;
    return true;
}

std::vector<int> Tree::shortest_path(int from, int to) const {
    check_node(from);
    check_node(to);
    std::vector<int> parent(node_count(), -2);
    std::deque<int> queue{to};
    parent[to] = -1;
    while (!queue.empty()) {
        int n = queue.front();
        queue.pop_front();
        for (int m : adjacency_[n])
            if (parent[m] == -2) {
                parent[m] = n;
                queue.push_back(m);
            }
    }
    std::vector<int> path;
    for (int n = from; n != to; n = parent[n])
        path.push_back(edge_between(n, parent[n]));
    return path;
}

std::set<std::vector<int>> Tree::splits() const {
    // Root at leaf node 0; every child side avoids leaf 1.
    std::vector<int> parent(node_count(), -1), order;
    std::vector<char> seen(node_count(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int n = stack.back();
        stack.pop_back();
        order.push_back(n);
        for (int m : adjacency_[n])
            if (!seen[m]) {
                seen[m] = 1;
                parent[m] = n;
                stack.push_back(m);
            }
    }
    std::vector<std::vector<int>> below(node_count());
    std::set<std::vector<int>> out;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int n = *it;
        if (is_leaf(n))
            below[n].push_back(n + 1);
        if (parent[n] >= 0) {
            if (!is_leaf(n) && is_interior(parent[n])) {
                std::sort(below[n].begin(), below[n].end());
                out.insert(below[n]);
            }
            auto& up = below[parent[n]];
            up.insert(up.end(), below[n].begin(), below[n].end());
        }
    }
    return out;
}

Tree Tree::relabeled(const std::vector<int>& leaf_map) const {
    if (leaf_map.size() != leaves_)
        throw InputError("leaf map has wrong size");
    std::vector<char> hit(leaves_, 0);
    for (int m : leaf_map) {
        if (!is_leaf(m) || hit[m])
            throw InputError("leaf map is not a permutation");
        hit[m] = 1;
    }
    std::vector<Edge> edges = edges_;
    for (Edge& e : edges) {
        if (is_leaf(e.a))
            e.a = leaf_map[e.a];
        if (is_leaf(e.b))
            e.b = leaf_map[e.b];
    }
    return Tree(leaves_, std::move(edges));
}

std::string Tree::to_newick() const {
    const int root = static_cast<int>(leaves_);
    std::function<std::pair<int, std::string>(int, int)> write = [&](int n, int from) -> std::pair<int, std::string> {
        if (is_leaf(n))
            return {n + 1, std::to_string(n + 1)};
        std::vector<std::pair<int, std::string>> parts;
        for (int m : adjacency_[n])
            if (m != from)
                parts.push_back(write(m, n));
        std::sort(parts.begin(), parts.end());
        std::string s = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i)
                s += ',';
            s += parts[i].second;
        }
        return {parts.front().first, s + ")"};
    };
    return write(root, -1).second + ";";
}

bool same_topology(const Tree& a, const Tree& b) {
    return a.leaf_count() == b.leaf_count() && a.node_count() == b.node_count() && a.splits() == b.splits();
}

// ---------------------------------------------------------------------------
// Newick

namespace {

struct ParsedNode {
    int label = 0; // > 0 for leaves
    std::size_t position = 0;
    std::vector<int> children;
};

class NewickParser {
public:
    explicit NewickParser(std::string_view text) : text_(text) {}

    Tree parse() {
        skip_ws();
        int root = parse_subtree();
        skip_ws();
        if (peek() != ';')
            throw NewickError("expected ';'", pos_);
        ++pos_;
        skip_ws();
        if (pos_ != text_.size())
            throw NewickError("unexpected text after ';'", pos_);
        return build(root);
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
            ++pos_;
    }

    int parse_subtree() {
        skip_ws();
        int id = static_cast<int>(nodes_.size());
        nodes_.push_back({0, pos_, {}});
        if (peek() == '(') {
            ++pos_;
            while (true) {
                int child = parse_subtree();
                nodes_[id].children.push_back(child);
                skip_ws();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                if (peek() == ')') {
                    ++pos_;
                    break;
                }
                throw NewickError(pos_ < text_.size() ? "expected ',' or ')'" : "unexpected end of input", pos_);
            }
        } else {
            std::size_t start = pos_;
            while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9')
                ++pos_;
            if (start == pos_)
                throw NewickError(pos_ < text_.size() ? "expected leaf label or '('" : "unexpected end of input", pos_);
            int label = 0;
            auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, label);
            if (ec != std::errc{} || label <= 0)
                throw NewickError("leaf labels must be positive integers", start);
            nodes_[id].label = label;
        }
        skip_ws();
        if (peek() == ':') {
            ++pos_;
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::string_view("0123456789.eE+-").find(text_[pos_]) != std::string_view::npos)
                ++pos_;
            double length = 0;
            auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, length);
            if (start == pos_ || ec != std::errc{} || ptr != text_.data() + pos_)
                throw NewickError("malformed branch length", start);
        }
        return id;
    }

    Tree build(int root) {
        std::map<int, std::size_t> label_pos;
        for (const ParsedNode& n : nodes_) {
            if (n.children.empty()) {
                if (!label_pos.emplace(n.label, n.position).second)
                    throw NewickError("duplicate leaf label " + std::to_string(n.label), n.position);
            } else if (n.children.size() == 1 && &n != &nodes_[root]) {
                throw NewickError("interior node with valency 2", n.position);
            }
        }
        const std::size_t leaves = label_pos.size();
        if (leaves < 3)
            throw NewickError("a tree needs at least 3 leaves, got " + std::to_string(leaves), 0);
        for (auto [label, position] : label_pos)
            if (static_cast<std::size_t>(label) > leaves)
                throw NewickError("leaf labels must be exactly 1.." + std::to_string(leaves) + ", found " +
                                      std::to_string(label),
                                  position);
        if (nodes_[root].children.size() < 2)
            throw NewickError("root must have at least 2 children", nodes_[root].position);

        // Interior ids in preorder; a 2-child root is dropped.
        const bool suppress = nodes_[root].children.size() == 2;
        std::vector<int> id(nodes_.size(), -1);
        int next = static_cast<int>(leaves);
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (nodes_[i].children.empty())
                id[i] = nodes_[i].label - 1;
            else if (!(suppress && static_cast<int>(i) == root))
                id[i] = next++;
        }
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (suppress && static_cast<int>(i) == root)
                continue;
            for (int c : nodes_[i].children)
                edges.push_back({id[i], id[c]});
        }
        if (suppress)
            edges.push_back({id[nodes_[root].children[0]], id[nodes_[root].children[1]]});
        return Tree(leaves, std::move(edges));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<ParsedNode> nodes_;
};

} // namespace

Tree parse_newick(std::string_view text) { return NewickParser(text).parse(); }

// ---------------------------------------------------------------------------
// RootedTree

RootedTree::RootedTree(Tree tree, int root) : tree_(std::move(tree)), root_(root) {
    if (!tree_.is_interior(root_))
        throw InputError("root must be an interior node, got node " + std::to_string(root_));
    const std::size_t n = tree_.node_count();
    const std::size_t l = tree_.leaf_count();
    parent_edge_.assign(n, -1);
    children_.assign(n, {});
    canonical_of_tree_edge_.assign(tree_.edge_count(), -1);
    edges_.resize(l);

    std::vector<int> parent(n, -1);
    std::vector<char> seen(n, 0);
    std::deque<int> queue{root_};
    seen[root_] = 1;
    std::vector<DirectedEdge> interior;
    while (!queue.empty()) {
        int p = queue.front();
        queue.pop_front();
        bfs_.push_back(p);
        for (int c : tree_.neighbors(p)) {
            if (seen[c])
                continue;
            seen[c] = 1;
            parent[c] = p;
            children_[p].push_back(c);
            DirectedEdge d{p, c, tree_.edge_between(p, c)};
            if (tree_.is_leaf(c))
                edges_[c] = d;
            else
                interior.push_back(d);
            queue.push_back(c);
        }
    }
    edges_.insert(edges_.end(), interior.begin(), interior.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        parent_edge_[edges_[i].child] = static_cast<int>(i);
        canonical_of_tree_edge_[edges_[i].tree_edge] = static_cast<int>(i);
    }
}

int RootedTree::parent_edge(int node) const {
    if (node < 0 || static_cast<std::size_t>(node) >= parent_edge_.size())
        throw InputError("node " + std::to_string(node) + " is not in the tree");
    return parent_edge_[node];
}

int RootedTree::parent(int node) const {
    int e = parent_edge(node);
    return e < 0 ? -1 : edges_[e].parent;
}

const std::vector<int>& RootedTree::children(int node) const {
    if (node < 0 || static_cast<std::size_t>(node) >= children_.size())
        throw InputError("node " + std::to_string(node) + " is not in the tree");
    return children_[node];
}

int RootedTree::canonical_index(int tree_edge) const {
    if (tree_edge < 0 || static_cast<std::size_t>(tree_edge) >= canonical_of_tree_edge_.size())
        throw InputError("edge " + std::to_string(tree_edge) + " is not in the tree");
    return canonical_of_tree_edge_[tree_edge];
}

std::vector<int> RootedTree::leaves_below(std::size_t edge) const {
    std::vector<int> out, stack{edges_.at(edge).child};
    while (!stack.empty()) {
        int n = stack.back();
        stack.pop_back();
        if (tree_.is_leaf(n))
            out.push_back(n);
        for (int c : children_[n])
            stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

RootedTree root_at(const Tree& tree, int node) {
    if (tree.is_leaf(node))
        throw InputError("cannot root at leaf " + std::to_string(node + 1));
    return RootedTree(tree, node);
}

RootedTree root_default(const Tree& tree) { return RootedTree(tree, static_cast<int>(tree.leaf_count())); }

// ---------------------------------------------------------------------------
// Join / decomposition / contraction

JoinedTree join(const Tree& t1, int v1, const Tree& t2, int v2) {
    if (!t1.is_leaf(v1))
        throw InputError("join: node " + std::to_string(v1) + " is not a leaf of T1");
    if (!t2.is_leaf(v2))
        throw InputError("join: node " + std::to_string(v2) + " is not a leaf of T2");
    const int l1 = static_cast<int>(t1.leaf_count()), l2 = static_cast<int>(t2.leaf_count());
    const int leaves = l1 + l2 - 2;
    const int i1 = static_cast<int>(t1.interior_node_count());

    JoinedTree j{Tree::claw(3), 0, v1, v2, 0, 0, {}, {}, {}, {}};
    j.node_from_t1.assign(t1.node_count(), -1);
    j.node_from_t2.assign(t2.node_count(), -1);
    int next = 0;
    for (int n = 0; n < l1; ++n)
        if (n != v1)
            j.node_from_t1[n] = next++;
    for (int n = 0; n < l2; ++n)
        if (n != v2)
            j.node_from_t2[n] = next++;
    for (int n = l1; n < static_cast<int>(t1.node_count()); ++n)
        j.node_from_t1[n] = leaves + (n - l1);
    for (int n = l2; n < static_cast<int>(t2.node_count()); ++n)
        j.node_from_t2[n] = leaves + i1 + (n - l2);
    j.n1 = j.node_from_t1[t1.neighbors(v1).front()];
    j.n2 = j.node_from_t2[t2.neighbors(v2).front()];
    j.node_from_t1[v1] = j.n2;
    j.node_from_t2[v2] = j.n1;

    std::vector<Edge> edges;
    for (const Edge& e : t1.edges())
        if (e.a != v1 && e.b != v1)
            edges.push_back({j.node_from_t1[e.a], j.node_from_t1[e.b]});
    for (const Edge& e : t2.edges())
        if (e.a != v2 && e.b != v2)
            edges.push_back({j.node_from_t2[e.a], j.node_from_t2[e.b]});
    edges.push_back({j.n1, j.n2});
    j.tree = Tree(static_cast<std::size_t>(leaves), std::move(edges));
    j.epsilon = j.tree.edge_between(j.n1, j.n2);

    for (const auto& [src, map, out] : {std::tuple{&t1, &j.node_from_t1, &j.edge_from_t1},
                                        std::tuple{&t2, &j.node_from_t2, &j.edge_from_t2}}) {
        out->clear();
        for (const Edge& e : src->edges())
            out->push_back(j.tree.edge_between((*map)[e.a], (*map)[e.b]));
    }
    return j;
}

EdgeDecomposition decompose_at_edge(const RootedTree& rooted, std::size_t canonical_edge) {
    const Tree& t = rooted.tree();
    if (canonical_edge >= rooted.edge_count())
        throw InputError("edge " + std::to_string(canonical_edge) + " is not in the tree");
    const DirectedEdge cut = rooted.edge(canonical_edge);
    if (t.is_leaf(cut.child))
        throw InputError("cannot decompose at pendant edge " + std::to_string(canonical_edge));

    std::vector<char> below(t.node_count(), 0);
    std::vector<int> stack{cut.child};
    while (!stack.empty()) {
        int n = stack.back();
        stack.pop_back();
        below[n] = 1;
        for (int c : rooted.children(n))
            stack.push_back(c);
    }

    auto side = [&](bool child_side, int attach, std::vector<int>& origin, int& v) -> RootedTree {
        std::vector<int> leaves, interior;
        for (int n = 0; n < static_cast<int>(t.node_count()); ++n)
            if (static_cast<bool>(below[n]) == child_side)
                (t.is_leaf(n) ? leaves : interior).push_back(n);
        const int l = static_cast<int>(leaves.size()) + 1;
        std::vector<int> id(t.node_count(), -1);
        origin.assign(l, -1);
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            id[leaves[i]] = static_cast<int>(i);
            origin[i] = leaves[i];
        }
        v = l - 1;
        for (std::size_t i = 0; i < interior.size(); ++i)
            id[interior[i]] = l + static_cast<int>(i);
        std::vector<Edge> edges;
        for (const Edge& e : t.edges())
            if (id[e.a] >= 0 && id[e.b] >= 0)
                edges.push_back({id[e.a], id[e.b]});
        edges.push_back({id[attach], v});
        return RootedTree(Tree(static_cast<std::size_t>(l), std::move(edges)), id[attach]);
    };

    std::vector<int> o1, o2;
    int v1 = 0, v2 = 0;
    RootedTree t1 = side(false, cut.parent, o1, v1);
    RootedTree t2 = side(true, cut.child, o2, v2);
    return EdgeDecomposition{std::move(t1), std::move(t2), v1, v2, std::move(o1), std::move(o2)};
}

Contraction contract_interior_edge(const Tree& tree, int edge) {
    if (tree.is_pendant(edge))
        throw InputError("cannot contract pendant edge " + std::to_string(edge));
    const Edge cut = tree.edges()[edge];
    std::vector<int> node_map(tree.node_count());
    int next = static_cast<int>(tree.leaf_count());
    for (int n = 0; n < static_cast<int>(tree.node_count()); ++n) {
        if (tree.is_leaf(n))
            node_map[n] = n;
        else if (n != cut.b)
            node_map[n] = next++;
    }
    node_map[cut.b] = node_map[cut.a];
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < tree.edge_count(); ++i)
        if (static_cast<int>(i) != edge)
            edges.push_back({node_map[tree.edges()[i].a], node_map[tree.edges()[i].b]});
    Tree out(tree.leaf_count(), std::move(edges));
    std::vector<int> edge_map(tree.edge_count(), -1);
    for (std::size_t i = 0; i < tree.edge_count(); ++i)
        if (static_cast<int>(i) != edge)
            edge_map[i] = out.edge_between(node_map[tree.edges()[i].a], node_map[tree.edges()[i].b]);
    return Contraction{tree, std::move(out), std::move(node_map), std::move(edge_map)};
}

Contraction contract_further(const Contraction& c, int edge) {
    Contraction step = contract_interior_edge(c.tree, edge);
    Contraction out{c.source, step.tree, c.node_map, c.edge_map};
    for (int& n : out.node_map)
        n = step.node_map[n];
    for (int& e : out.edge_map)
        if (e >= 0)
            e = step.edge_map[e];
    return out;
}

} // namespace phyloinv
