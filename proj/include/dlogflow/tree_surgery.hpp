#ifndef DLOGFLOW_TREE_SURGERY_HPP
#define DLOGFLOW_TREE_SURGERY_HPP

#include <bit>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "tree.hpp"

namespace dlogflow {

/// Set of vertex ids of a TreeWithIds; bit v is vertex v (ids start at 1).
using VertexSet = std::uint64_t;

inline constexpr VertexSet vertex_bit(int v) { return VertexSet{1} << v; }

/// A representative of a RootedTree with stable vertex ids 1..v(T), assigned in
/// preorder with children visited in canonical order; the root is 1. Each edge
/// is named by the id of its endpoint farther from the root.
class TreeWithIds {
public:
    static constexpr std::size_t max_vertices = 63;

    explicit TreeWithIds(RootedTree tree) : tree_(std::move(tree))
    {
        if (tree_.vertex_count() > max_vertices) throw domain_error("TreeWithIds: at most 63 vertices supported");
        parent_.assign(tree_.vertex_count() + 1, 0);
        children_.assign(tree_.vertex_count() + 1, {});
        below_.assign(tree_.vertex_count() + 1, 0);
        int next = 1;
        assign(tree_, 0, next);
    }

    const RootedTree& tree() const { return tree_; }
    int vertex_count() const { return static_cast<int>(tree_.vertex_count()); }
    int root() const { return 1; }
    int parent(int v) const { return parent_.at(check_vertex(v)); }
    const std::vector<int>& children(int v) const { return children_.at(check_vertex(v)); }
    bool is_leaf(int v) const { return children(v).empty(); }
    bool has_vertex(int v) const { return v >= 1 && v <= vertex_count(); }
    bool has_edge(int e) const { return e >= 2 && e <= vertex_count(); }

    VertexSet all_vertices() const
    {
        VertexSet s = 0;
        for (int v = 1; v <= vertex_count(); ++v) s |= vertex_bit(v);
        return s;
    }
    std::vector<int> edges() const
    {
        std::vector<int> e;
        for (int v = 2; v <= vertex_count(); ++v) e.push_back(v);
        return e;
    }
    std::vector<int> leaves() const
    {
        std::vector<int> l;
        for (int v = 1; v <= vertex_count(); ++v)
            if (is_leaf(v)) l.push_back(v);
        return l;
    }
    /// v together with all of its descendants.
    VertexSet subtree_below(int v) const { return below_.at(check_vertex(v)); }

    /// Canonical tree induced on `vertices`, rooted at `root`. The set must be
    /// connected through parent links to `root`.
    RootedTree induced(VertexSet vertices, int root) const
    {
        if (!(vertices & vertex_bit(root))) throw domain_error("induced: root not in vertex set");
        std::vector<RootedTree> kids;
        for (int c : children_[root])
            if (vertices & vertex_bit(c)) kids.push_back(induced(vertices, c));
        return RootedTree(std::move(kids));
    }

    /// Components of `vertices`, each rooted at its vertex nearest the root of T.
    Forest components(VertexSet vertices) const
    {
        std::vector<RootedTree> parts;
        for (int v = 1; v <= vertex_count(); ++v) {
            if (!(vertices & vertex_bit(v))) continue;
            if (v == 1 || !(vertices & vertex_bit(parent_[v]))) parts.push_back(induced(vertices, v));
        }
        return Forest(std::move(parts));
    }

    int check_vertex(int v) const
    {
        if (!has_vertex(v)) throw domain_error("unknown vertex id " + std::to_string(v));
        return v;
    }
    int check_edge(int e) const
    {
        if (!has_edge(e)) throw domain_error("unknown edge id " + std::to_string(e));
        return e;
    }

private:
    VertexSet assign(const RootedTree& t, int parent, int& next)
    {
        const int id = next++;
        parent_[id] = parent;
        VertexSet below = vertex_bit(id);
        for (const auto& c : t.children()) {
            children_[id].push_back(next);
            below |= assign(c, id, next);
        }
        below_[id] = below;
        return below;
    }

    RootedTree tree_;
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
    std::vector<VertexSet> below_;
};

/// Removes edge e: returns (T_e rooted at the root, T'_e rooted at the child endpoint).
inline std::pair<RootedTree, RootedTree> detach(const TreeWithIds& t, int e)
{
    t.check_edge(e);
    const VertexSet lower = t.subtree_below(e);
    return {t.induced(t.all_vertices() & ~lower, t.root()), t.induced(lower, e)};
}

/// T' grafted onto vertex v of T by a new edge from v to the root of T'.
inline RootedTree graft(const RootedTree& sprout, int v, const TreeWithIds& t)
{
    t.check_vertex(v);
    auto rec = [&](auto&& self, int u) -> RootedTree {
        std::vector<RootedTree> kids;
        for (int c : t.children(u)) kids.push_back(self(self, c));
        if (u == v) kids.push_back(sprout);
        return RootedTree(std::move(kids));
    };
    return rec(rec, t.root());
}

/// e > f ("f lies below e"): f is an edge of T_e, i.e. it survives removing e and T'_e.
inline bool edge_below(const TreeWithIds& t, int e, int f)
{
    t.check_edge(e);
    t.check_edge(f);
    return !(t.subtree_below(e) & vertex_bit(f));
}

inline bool is_descending(const TreeWithIds& t, const std::vector<int>& seq)
{
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (!edge_below(t, seq[i], seq[j])) return false;
    return true;
}

/// All sequences (e_1, ..., e_k) with e_i > e_j whenever i < j; k = 0 gives one empty sequence.
inline std::vector<std::vector<int>> descending_sequences(const TreeWithIds& t, unsigned k)
{
    const int v = t.vertex_count();
    // below[e][f] memoizes edge_below for this tree.
    std::vector<std::vector<char>> below(v + 1, std::vector<char>(v + 1, 0));
    for (int e = 2; e <= v; ++e)
        for (int f = 2; f <= v; ++f) below[e][f] = edge_below(t, e, f) ? 1 : 0;

    std::vector<std::vector<int>> out;
    std::vector<int> current;
    auto rec = [&](auto&& self) -> void {
        if (current.size() == k) {
            out.push_back(current);
            return;
        }
        for (int f = 2; f <= v; ++f) {
            bool ok = true;
            for (int e : current)
                if (!below[e][f]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            current.push_back(f);
            self(self);
            current.pop_back();
        }
    };
    rec(rec);
    return out;
}

/// Peels a descending sequence: T_1 = T'_{e_1}, S_2 = T_{e_1}, T_i = (S_i)'_{e_i},
/// S_{i+1} = (S_i)_{e_i}, and finally T_{r+1} = S_{r+1}.
inline std::vector<RootedTree> strip_sequence(const TreeWithIds& t, const std::vector<int>& seq)
{
    for (int e : seq) t.check_edge(e);
    if (!is_descending(t, seq)) throw domain_error("strip_sequence: sequence is not descending");
    std::vector<RootedTree> parts;
    VertexSet remaining = t.all_vertices();
    for (int e : seq) {
        const VertexSet lower = t.subtree_below(e) & remaining;
        parts.push_back(t.induced(lower, e));
        remaining &= ~lower;
    }
    parts.push_back(t.induced(remaining, t.root()));
    return parts;
}

/// A rooted subtree T' <= T given by its vertex set, with the complement forest T \ T'.
struct RootedSubtree {
    VertexSet vertices;
    RootedTree subtree;
    Forest complement;
};

/// Every parent-closed vertex set containing the root (T itself included).
inline std::vector<RootedSubtree> rooted_subtrees(const TreeWithIds& t)
{
    std::vector<RootedSubtree> out;
    const int v = t.vertex_count();
    // Preorder ids guarantee a parent is decided before its children.
    auto rec = [&](auto&& self, int next, VertexSet chosen) -> void {
        if (next > v) {
            out.push_back({chosen, t.induced(chosen, t.root()), t.components(t.all_vertices() & ~chosen)});
            return;
        }
        self(self, next + 1, chosen);
        if (chosen & vertex_bit(t.parent(next))) self(self, next + 1, chosen | vertex_bit(next));
    };
    rec(rec, 2, vertex_bit(t.root()));
    return out;
}

/// T minus the given leaves; the empty forest when the singleton's root is removed.
inline Forest delete_leaves(const TreeWithIds& t, const std::set<int>& leaves)
{
    VertexSet removed = 0;
    for (int v : leaves) {
        if (!t.is_leaf(v)) throw domain_error("delete_leaves: vertex " + std::to_string(v) + " is not a leaf");
        removed |= vertex_bit(v);
    }
    return t.components(t.all_vertices() & ~removed);
}

} // namespace dlogflow

#endif
