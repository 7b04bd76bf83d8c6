#ifndef DLOGFLOW_TREE_HPP
#define DLOGFLOW_TREE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "rational.hpp"

namespace dlogflow {

/// Isomorphism class of a finite rooted tree, held in canonical form: at every
/// node the children are sorted by their balanced-parenthesis encodings, so two
/// trees are isomorphic iff their encodings agree. Immutable and cheap to copy.
class RootedTree {
public:
    /// The singleton tree "()".
    RootedTree() : RootedTree(std::vector<RootedTree>{}) {}

    /// A root whose children are the given subtrees, in any order.
    explicit RootedTree(std::vector<RootedTree> children)
    {
        std::sort(children.begin(), children.end());
        auto node = std::make_shared<Node>();
        node->encoding = "(";
        node->vertices = 1;
        node->leaves = children.empty() ? 1 : 0;
        node->height = 0;
        node->automorphisms = 1;
        for (std::size_t i = 0; i < children.size();) {
            std::size_t j = i;
            while (j < children.size() && children[j] == children[i]) ++j;
            for (std::size_t k = 1; k <= j - i; ++k) node->automorphisms *= k;
            for (std::size_t k = i; k < j; ++k) node->automorphisms *= children[k].aut_size();
            i = j;
        }
        for (const auto& c : children) {
            node->encoding += c.encoding();
            node->vertices += c.vertex_count();
            node->leaves += c.leaf_count();
            node->height = std::max(node->height, c.height() + 1);
        }
        node->encoding += ")";
        node->children = std::move(children);
        node_ = std::move(node);
    }

    /// Parses a balanced-parenthesis encoding such as "(()())"; child order in
    /// the input is irrelevant.
    static RootedTree parse(std::string_view text)
    {
        std::size_t pos = 0;
        auto tree = parse_node(text, pos);
        if (pos != text.size()) throw parse_error("trailing characters in tree encoding '" + std::string(text) + "'");
        return tree;
    }

    static RootedTree singleton() { return RootedTree(); }
    /// C_n: the path with n vertices.
    static RootedTree chain(unsigned n)
    {
        if (n == 0) throw domain_error("chain: n must be positive");
        RootedTree t;
        for (unsigned i = 1; i < n; ++i) t = RootedTree(std::vector<RootedTree>{t});
        return t;
    }
    /// S_k: root with k leaf children (S_0 is the singleton).
    static RootedTree shrub(unsigned k) { return RootedTree(std::vector<RootedTree>(k, RootedTree())); }

    const std::vector<RootedTree>& children() const { return node_->children; }
    const std::string& encoding() const { return node_->encoding; }
    std::size_t vertex_count() const { return node_->vertices; }
    std::size_t leaf_count() const { return node_->leaves; }
    std::size_t height() const { return node_->height; }
    /// |Aut(T)| = prod over isomorphism classes of children of m! * alpha^m.
    std::uint64_t aut_size() const { return node_->automorphisms; }
    bool is_singleton() const { return node_->children.empty(); }

    friend bool operator==(const RootedTree& a, const RootedTree& b)
    {
        return a.node_ == b.node_ || a.encoding() == b.encoding();
    }
    friend bool operator<(const RootedTree& a, const RootedTree& b) { return a.encoding() < b.encoding(); }

private:
    struct Node {
        std::vector<RootedTree> children;
        std::string encoding;
        std::size_t vertices = 1;
        std::size_t leaves = 1;
        std::size_t height = 0;
        std::uint64_t automorphisms = 1;
    };

    static RootedTree parse_node(std::string_view text, std::size_t& pos)
    {
        if (pos >= text.size() || text[pos] != '(')
            throw parse_error("malformed tree encoding '" + std::string(text) + "' at offset " + std::to_string(pos));
        ++pos;
        std::vector<RootedTree> children;
        while (pos < text.size() && text[pos] == '(') children.push_back(parse_node(text, pos));
        if (pos >= text.size() || text[pos] != ')')
            throw parse_error("unbalanced tree encoding '" + std::string(text) + "'");
        ++pos;
        return RootedTree(std::move(children));
    }

    std::shared_ptr<const Node> node_;
};

/// Multiset of rooted trees, canonically sorted. May be empty.
class Forest {
public:
    Forest() = default;
    explicit Forest(std::vector<RootedTree> trees) : trees_(std::move(trees)) { std::sort(trees_.begin(), trees_.end()); }

    const std::vector<RootedTree>& trees() const { return trees_; }
    bool empty() const { return trees_.empty(); }
    std::size_t size() const { return trees_.size(); }
    std::size_t vertex_count() const
    {
        std::size_t v = 0;
        for (const auto& t : trees_) v += t.vertex_count();
        return v;
    }
    /// "[(),(())]"; "[]" for the empty forest.
    std::string encoding() const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < trees_.size(); ++i) s += (i ? "," : "") + trees_[i].encoding();
        return s + "]";
    }

    friend bool operator==(const Forest& a, const Forest& b) { return a.trees_ == b.trees_; }

private:
    std::vector<RootedTree> trees_;
};

/// The forest of child subtrees of the root.
inline Forest delete_root(const RootedTree& t) { return Forest(t.children()); }

/// One representative of every isomorphism class with m vertices, sorted by
/// encoding. Empty for m = 0.
inline std::vector<RootedTree> enumerate_trees(unsigned m)
{
    static std::map<unsigned, std::vector<RootedTree>> cache;
    static std::mutex cache_mutex;
    if (m == 0) return {};
    {
        std::lock_guard lock(cache_mutex);
        if (auto it = cache.find(m); it != cache.end()) return it->second;
    }

    // Candidate children: every tree with fewer than m vertices, in a fixed order.
    std::vector<RootedTree> pool;
    for (unsigned k = 1; k < m; ++k) {
        auto level = enumerate_trees(k);
        pool.insert(pool.end(), level.begin(), level.end());
    }
    std::vector<RootedTree> out;
    std::vector<RootedTree> chosen;
    // Multisets of children chosen with non-increasing pool index.
    auto rec = [&](auto&& self, std::size_t remaining, std::size_t max_index) -> void {
        if (remaining == 0) {
            out.emplace_back(chosen);
            return;
        }
        for (std::size_t i = max_index; i-- > 0;) {
            if (pool[i].vertex_count() > remaining) continue;
            chosen.push_back(pool[i]);
            self(self, remaining - pool[i].vertex_count(), i + 1);
            chosen.pop_back();
        }
    };
    rec(rec, m - 1, pool.size());
    std::sort(out.begin(), out.end());
    std::lock_guard lock(cache_mutex);
    cache.emplace(m, out);
    return out;
}

/// All trees with 1..max_vertices vertices, grouped by size.
inline std::vector<RootedTree> enumerate_trees_up_to(unsigned max_vertices)
{
    std::vector<RootedTree> all;
    for (unsigned m = 1; m <= max_vertices; ++m) {
        auto level = enumerate_trees(m);
        all.insert(all.end(), level.begin(), level.end());
    }
    return all;
}

/// Number of vertices at distance exactly m from the root.
inline std::size_t height_census(const RootedTree& t, unsigned m)
{
    if (m == 0) return 1;
    std::size_t n = 0;
    for (const auto& c : t.children()) n += height_census(c, m - 1);
    return n;
}

namespace detail {

// ways[j] = number of strict maps of the subtree with the root sent to j+1.
inline std::vector<Integer> strict_map_profile(const RootedTree& t, unsigned n)
{
    std::vector<Integer> ways(n, Integer(1));
    for (const auto& c : t.children()) {
        auto sub = strict_map_profile(c, n);
        Integer above = 0; // sum of sub[j'] for j' > j
        for (unsigned j = n; j-- > 0;) {
            ways[j] *= above;
            above += sub[j];
        }
    }
    return ways;
}

} // namespace detail

/// Number of maps f: V(T) -> {1..n} with f(parent) < f(child) on every edge.
inline Integer count_strict_maps(const RootedTree& t, unsigned n)
{
    Integer total = 0;
    for (const auto& w : detail::strict_map_profile(t, n)) total += w;
    return total;
}

} // namespace dlogflow

#endif
