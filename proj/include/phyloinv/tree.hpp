#pragma once

#include "phyloinv/errors.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace phyloinv {

// Node numbering convention shared by every tree type: leaves are nodes
// 0..l-1 and leaf node i carries label i+1; interior nodes follow.

struct Edge {
    int a = 0;
    int b = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Unrooted leaf-labelled tree. Every interior node has valency >= 3 and
/// there are at least three leaves. Edges are stored with pendant edges
/// first (by leaf label), then interior edges by endpoint ids.
class Tree {
public:
    Tree(std::size_t leaf_count, std::vector<Edge> edges);

    /// The claw (star) tree with the given number of leaves.
    static Tree claw(std::size_t leaves);

    std::size_t leaf_count() const noexcept { return leaves_; }
    std::size_t node_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t interior_node_count() const noexcept { return node_count() - leaves_; }

    bool is_leaf(int node) const noexcept { return node >= 0 && static_cast<std::size_t>(node) < leaves_; }
    bool is_interior(int node) const noexcept {
        return static_cast<std::size_t>(node) >= leaves_ && static_cast<std::size_t>(node) < node_count();
    }
    std::size_t valency(int node) const;

    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<int>& neighbors(int node) const;
    /// Edge index joining a and b, or -1.
    int edge_between(int a, int b) const;
    bool is_pendant(int edge) const;
    int pendant_edge(int leaf) const;

    bool is_claw() const noexcept { return interior_node_count() == 1; }
    bool is_trivalent() const;

    /// Edge indices along the unique path from one node to another.
    std::vector<int> shortest_path(int from, int to) const;

    /// Leaf-label sets of the side not containing leaf 1, one per interior
    /// edge. Two trees on the same leaves are isomorphic (respecting labels)
    /// iff their split sets agree.
    std::set<std::vector<int>> splits() const;

    /// Same topology with leaf i renamed to leaf map[i].
    Tree relabeled(const std::vector<int>& leaf_map) const;

    std::string to_newick() const;

private:
    void check_node(int node) const;

    std::size_t leaves_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
};

bool same_topology(const Tree& a, const Tree& b);

class NewickError : public InputError {
public:
    NewickError(const std::string& what, std::size_t position)
        : InputError(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Parses the Newick subset `tree := subtree ";"`,
/// `subtree := label | "(" subtree ("," subtree)+ ")"` with positive integer
/// leaf labels and optional ":<number>" branch lengths (discarded). A root
/// written with exactly two children is suppressed.
Tree parse_newick(std::string_view text);

struct DirectedEdge {
    int parent = 0;
    int child = 0;
    int tree_edge = 0; // index into Tree::edges()
};

/// A tree oriented away from an interior root, with the canonical edge
/// order: pendant edges by leaf label (so edge i is the pendant edge of leaf
/// node i), then interior edges in BFS discovery order from the root.
class RootedTree {
public:
    RootedTree(Tree tree, int root);

    const Tree& tree() const noexcept { return tree_; }
    int root() const noexcept { return root_; }
    std::size_t leaf_count() const noexcept { return tree_.leaf_count(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const std::vector<DirectedEdge>& edges() const noexcept { return edges_; }
    const DirectedEdge& edge(std::size_t i) const { return edges_.at(i); }
    /// Canonical index of the edge entering `node`, or -1 for the root.
    int parent_edge(int node) const;
    int parent(int node) const;
    const std::vector<int>& children(int node) const;
    /// Canonical index of a Tree edge.
    int canonical_index(int tree_edge) const;
    /// Nodes in BFS order from the root.
    const std::vector<int>& bfs_order() const noexcept { return bfs_; }
    /// Leaf nodes in the subtree below canonical edge i.
    std::vector<int> leaves_below(std::size_t edge) const;

private:
    Tree tree_;
    int root_;
    std::vector<DirectedEdge> edges_;
    std::vector<int> parent_edge_;
    std::vector<std::vector<int>> children_;
    std::vector<int> canonical_of_tree_edge_;
    std::vector<int> bfs_;
};

RootedTree root_at(const Tree& tree, int node);
/// Roots at the lowest-numbered interior node.
RootedTree root_default(const Tree& tree);

/// Result of T1 * T2: identify leaf v1 of T1 and leaf v2 of T2 into the edge
/// epsilon. Leaves of T1 other than v1 become 1..l1-1 (ascending), leaves of
/// T2 other than v2 follow in ascending order. Interior nodes of T1 precede
/// those of T2.
struct JoinedTree {
    Tree tree;
    int epsilon = 0; // Tree edge index
    int v1 = 0, v2 = 0;
    int n1 = 0, n2 = 0; // endpoints of epsilon in the joined tree, on the T1/T2 side
    std::vector<int> node_from_t1; // v1 maps to n2
    std::vector<int> node_from_t2; // v2 maps to n1
    std::vector<int> edge_from_t1; // pendant edge of v1 maps to epsilon
    std::vector<int> edge_from_t2;
};

JoinedTree join(const Tree& t1, int v1, const Tree& t2, int v2);

/// Cutting a rooted tree at an interior edge p->c: T1 holds the root side
/// with a new last leaf v1 hanging off p, T2 the child side with a new last
/// leaf v2 hanging off c. T1 is rooted at p, T2 at c. join(T1, v1, T2, v2)
/// reproduces the input up to the leaf relabelling recorded here.
struct EdgeDecomposition {
    RootedTree t1;
    RootedTree t2;
    int v1 = 0, v2 = 0;
    std::vector<int> t1_leaf_origin; // T1 leaf node -> original leaf node (-1 for v1)
    std::vector<int> t2_leaf_origin;
};

EdgeDecomposition decompose_at_edge(const RootedTree& tree, std::size_t canonical_edge);

/// Record of T1 <= T2 by contraction of interior edges.
struct Contraction {
    Tree source;
    Tree tree;
    std::vector<int> node_map; // source node -> contracted node
    std::vector<int> edge_map; // source edge -> contracted edge, -1 if contracted
};

Contraction contract_interior_edge(const Tree& tree, int edge);
/// Contracts `edge` (an edge index of c.tree) and composes the records.
Contraction contract_further(const Contraction& c, int edge);

} // namespace phyloinv
